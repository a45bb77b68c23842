#pragma once

// Scalar profiles. Every computation runs entirely in one profile:
// exact rationals (algebraic identities hold exactly) or IEEE doubles
// (identities hold to 1e-9 relative tolerance).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <stdexcept>

namespace jetcc {

using Rational = boost::multiprecision::cpp_rational;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_int(long v) { return static_cast<double>(v); }
    static double from_ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
    static double abs(double v) { return std::fabs(v); }
    static double to_double(double v) { return v; }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_ratio(long num, long den) { return Rational(num) / Rational(den); }
    static Rational abs(const Rational& v) { return boost::multiprecision::abs(v); }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

template <class S>
inline S scalar_abs(const S& v) { return scalar_traits<S>::abs(v); }

template <class S>
inline double to_double(const S& v) { return scalar_traits<S>::to_double(v); }

// x^e for integer e >= 0.
template <class S>
inline S pow_int(S base, unsigned e) {
    S out = scalar_traits<S>::from_int(1);
    while (e) {
        if (e & 1u) out = out * base;
        base = base * base;
        e >>= 1u;
    }
    return out;
}

inline Rational rational_pow(const Rational& base, int e) {
    if (e >= 0) return pow_int(base, static_cast<unsigned>(e));
    if (base == 0) throw std::domain_error("rational_pow: zero to negative power");
    return Rational(1) / pow_int(base, static_cast<unsigned>(-e));
}

// Relative comparison used throughout the float profile.
inline bool close_rel(double a, double b, double tol) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

// Shortest decimal round-trip is not guaranteed below 17 significant digits;
// all float serialization goes through here.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline std::string to_string(const Rational& v) {
    return v.str();
}

inline Rational rational_from_string(const std::string& s) {
    return Rational(s);
}

// Deterministic 64-bit generator. std::mt19937_64 is portable but the
// standard distributions are not, so uniform mapping is done by hand.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform in [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    long uniform_int(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rational small_rational(long num_range, long den_range) {
        long num = uniform_int(-num_range, num_range);
        long den = uniform_int(1, den_range);
        return Rational(num) / Rational(den);
    }
};

// Stateless hash used for reproducible perturbations keyed by indices.
inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a * 0x9e3779b97f4a7c15ull + b + 0x2545f4914f6cdd1dull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace jetcc
