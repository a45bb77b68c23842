#pragma once

// Distance-banded coverings of X minus Z for box domains, with a
// certificate-first architecture: the builder lays out bands and bricks,
// the certifier is the authority on (alpha, beta, mu). One-dimensional
// domains run fully exact (rational interval arithmetic, exact tuple
// feasibility); higher dimensions build and certify conservatively, and
// the certified multiplicity is what downstream consumers must live with.

#include "jetcc/scalar.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace jetcc {

struct Box {
    std::vector<Rational> lo, hi;  // closed, axis-aligned; lo <= hi componentwise
    int dim() const { return static_cast<int>(lo.size()); }
};

struct DomainSpec {
    int d = 1;
    Box box;                  // the domain X
    std::vector<Box> zset;    // Z as a union of closed boxes (points are degenerate boxes)
};

// d(x, Z), exact, one-dimensional domains.
Rational dist_to_z_1d(const DomainSpec& dom, const Rational& x);
// d(x, Z) in doubles, any dimension.
double dist_to_z(const DomainSpec& dom, const std::vector<double>& x);

struct CoverMember {
    int scale = 0;               // band index j
    Box brick;                   // d=1: the interval piece itself (right end open)
    Rational band_lo, band_hi;   // half-open band [lo, hi) in distance values
    int color = 0;
};

struct CoverCertificate {
    bool ok = false;
    Rational alpha = 0;   // certified: diam B <= alpha * d(B, Z) for every member
    Rational beta = 0;    // largest grid value at which mu held
    int mu = 0;           // certified small-set multiplicity at that beta
    std::string violation;                  // filled when !ok
    std::vector<std::size_t> violating_tuple;
};

struct CoverParams {
    Rational c1 = Rational(1, 2);   // base band offset
    int ratio = 2;                  // band growth factor
    Rational alpha_target = 1;      // split members until diam <= alpha_target * band_lo
    int beta_grid_depth = 12;       // beta grid {1, 1/2, ..., 2^-depth}
    int j_lo = -26;                 // realized scale window
    int j_hi = 4;
    bool stagger = true;            // brick-wall offsets for d >= 2
    int mu_target = 0;              // 0 means d+1
};

struct WhitneyCover {
    DomainSpec domain;
    CoverParams params;
    Rational theta = 1;  // band jitter keeping distance peaks away from band boundaries
    std::vector<CoverMember> members;
    CoverCertificate cert;
};

// Lay out members over the realized scale window and certify. Throws
// std::runtime_error when no band jitter separates the distance peaks from
// band boundaries; certification failure is reported inside the returned
// certificate, not thrown.
WhitneyCover build_cover(const DomainSpec& dom, const CoverParams& params = {});

// Recompute the certificate from the member list alone.
CoverCertificate certify_cover(const WhitneyCover& cover);

// Exact member geometry, d=1.
Rational member_dist_to_z(const WhitneyCover& cover, std::size_t i);
Rational dist_to_member_1d(const WhitneyCover& cover, std::size_t i, const Rational& x);

// sigma_i(x) = max(0, tau d(B_i, Z) - d(x, B_i)), tau = beta/(2(beta+1)).
Rational sigma(const WhitneyCover& cover, std::size_t i, const Rational& x);
Rational cover_tau(const WhitneyCover& cover);

struct BarycentricPoint {
    std::vector<std::pair<std::size_t, Rational>> coords;  // sparse, sums to 1
};

// Thrown when x falls outside the realized scale window: the cover is a
// finite object and refuses to answer below its resolution floor.
struct CoverResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BarycentricPoint barycentric_map(const WhitneyCover& cover, const Rational& x);

struct NerveData {
    std::vector<std::size_t> vertices;
    std::vector<std::array<std::size_t, 2>> edges;  // d=1: the nerve is a graph
};

NerveData nerve(const WhitneyCover& cover);

std::string cover_to_json(const WhitneyCover& cover);
WhitneyCover cover_from_json(const std::string& text);

}  // namespace jetcc
