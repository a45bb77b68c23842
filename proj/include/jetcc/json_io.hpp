#pragma once

// JSON forms for jet points and polynomials.
//
// Emission is hand-rolled so float output always carries 17 significant
// digits (parse -> serialize round-trips bit-exactly); parsing goes through
// nlohmann::json with unknown fields rejected.

#include "jetcc/jets.hpp"
#include "jetcc/polynomial.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace jetcc {

template <class S>
inline std::string scalar_to_json(const S& v) {
    if constexpr (scalar_traits<S>::exact) return std::string("\"") + to_string(v) + "\"";
    else return format_double(v);
}

template <class S>
inline S scalar_from_json(const nlohmann::json& j, const std::string& where) {
    if constexpr (scalar_traits<S>::exact) {
        if (j.is_string()) return rational_from_string(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number_float()) return Rational(j.get<double>());
        throw std::invalid_argument(where + ": expected rational string or number");
    } else {
        if (j.is_number()) return j.get<double>();
        if (j.is_string()) return to_double(rational_from_string(j.get<std::string>()));
        throw std::invalid_argument(where + ": expected number");
    }
}

template <class S>
inline std::string jet_to_json(const JetPoint<S>& a) {
    const JetLayout& lay = *a.layout;
    std::ostringstream os;
    os << "{\"n\":" << lay.n << ",\"k\":" << lay.k << ",\"x\":[";
    for (std::size_t m = 0; m < a.x.size(); ++m)
        os << (m ? "," : "") << scalar_to_json(a.x[m]);
    os << "],\"u\":{";
    for (int j = lay.k; j >= 0; --j) {
        os << (j == lay.k ? "" : ",") << "\"" << j << "\":[";
        const auto& layer = lay.layers[static_cast<std::size_t>(lay.k - j)];
        std::size_t off = lay.layer_offset[static_cast<std::size_t>(lay.k - j)];
        for (std::size_t p = 0; p < layer.size(); ++p)
            os << (p ? "," : "") << scalar_to_json(a.u[off + p]);
        os << "]";
    }
    os << "}}";
    return os.str();
}

template <class S>
inline JetPoint<S> jet_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("jet: expected object");
    for (auto& [key, val] : j.items()) {
        (void)val;
        if (key != "n" && key != "k" && key != "x" && key != "u")
            throw std::invalid_argument("jet: unknown field '" + key + "'");
    }
    if (!j.contains("n") || !j.contains("k") || !j.contains("x") || !j.contains("u"))
        throw std::invalid_argument("jet: missing field (need n, k, x, u)");
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    LayoutPtr lay = jet_layout(n, k);
    JetPoint<S> out(lay);
    const auto& jx = j.at("x");
    if (!jx.is_array() || static_cast<int>(jx.size()) != n)
        throw std::invalid_argument("jet: x must be an array of n entries");
    for (int m = 0; m < n; ++m) out.x[static_cast<std::size_t>(m)] = scalar_from_json<S>(jx.at(m), "jet.x");
    const auto& ju = j.at("u");
    if (!ju.is_object()) throw std::invalid_argument("jet: u must be an object keyed by layer");
    for (auto& [key, val] : ju.items()) {
        (void)val;
        int layer = -1;
        try { layer = std::stoi(key); } catch (...) {}
        if (layer < 0 || layer > k) throw std::invalid_argument("jet: unknown layer key '" + key + "'");
    }
    for (int layer = k; layer >= 0; --layer) {
        std::string key = std::to_string(layer);
        if (!ju.contains(key)) throw std::invalid_argument("jet: missing layer '" + key + "'");
        const auto& arr = ju.at(key);
        const auto& mis = lay->layers[static_cast<std::size_t>(k - layer)];
        std::size_t off = lay->layer_offset[static_cast<std::size_t>(k - layer)];
        if (!arr.is_array() || arr.size() != mis.size())
            throw std::invalid_argument("jet: layer '" + key + "' has wrong size");
        for (std::size_t p = 0; p < mis.size(); ++p)
            out.u[off + p] = scalar_from_json<S>(arr.at(p), "jet.u[" + key + "]");
    }
    return out;
}

// Dense emission: every |I| <= maxdeg in graded-lex order.
template <class S>
inline std::string poly_to_json(const Polynomial<S>& p) {
    std::ostringstream os;
    os << "{\"n\":" << p.n << ",\"maxdeg\":" << p.maxdeg << ",\"coeffs\":[";
    bool first = true;
    for (int d = 0; d <= p.maxdeg; ++d)
        for (auto& I : enumerate_multiindices(p.n, d)) {
            os << (first ? "" : ",") << "[[";
            for (std::size_t m = 0; m < I.size(); ++m) os << (m ? "," : "") << I[m];
            os << "]," << scalar_to_json(p.coeff(I)) << "]";
            first = false;
        }
    os << "]}";
    return os.str();
}

template <class S>
inline Polynomial<S> poly_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("polynomial: expected object");
    for (auto& [key, val] : j.items()) {
        (void)val;
        if (key != "n" && key != "maxdeg" && key != "coeffs")
            throw std::invalid_argument("polynomial: unknown field '" + key + "'");
    }
    if (!j.contains("n") || !j.contains("maxdeg") || !j.contains("coeffs"))
        throw std::invalid_argument("polynomial: missing field (need n, maxdeg, coeffs)");
    int n = j.at("n").get<int>();
    int maxdeg = j.at("maxdeg").get<int>();
    if (n < 1 || maxdeg < 0) throw std::invalid_argument("polynomial: bad dimensions");
    Polynomial<S> p(n, maxdeg);
    const auto& arr = j.at("coeffs");
    if (!arr.is_array()) throw std::invalid_argument("polynomial: coeffs must be an array");
    for (const auto& entry : arr) {
        if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_array())
            throw std::invalid_argument("polynomial: coeff entry must be [[i...], value]");
        MultiIndex I;
        for (const auto& e : entry.at(0)) {
            int v = e.get<int>();
            if (v < 0) throw std::invalid_argument("polynomial: negative index entry");
            I.push_back(v);
        }
        if (static_cast<int>(I.size()) != n) throw std::invalid_argument("polynomial: index arity");
        if (mi_degree(I) > maxdeg) throw std::invalid_argument("polynomial: index degree above maxdeg");
        S v = scalar_from_json<S>(entry.at(1), "polynomial.coeffs");
        if (v != scalar_traits<S>::from_int(0)) p.set(I, v);
    }
    return p;
}

}  // namespace jetcc
