#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace boundres::bounds {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Default for the unknown universal constant in the ball-approximation
/// facet bound. It is never given numerically, so callers pass it explicitly.
inline constexpr double kDefaultConstant = 1.0;

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

/// Maximum number of regions cut by m hyperplanes in R^d: sum_{k<=d} C(m,k).
BigInt regions_max(int d, int m);

struct ConeLikeCount {
    BigInt unbounded; // 2 sum_{k<d} C(m-1,k)
    BigInt bounded;   // C(m-1,d)
};

ConeLikeCount cone_like_count(int d, int m);

struct Lemma6Check {
    BigInt regions;
    std::optional<bool> holds_2m;         // m <= d: regions == 2^m
    std::optional<bool> holds_polynomial; // m >= d: regions <= m^d/(d-1)!
    BigRational polynomial_bound;         // m^d/(d-1)!, set when m >= d
};

Lemma6Check lemma6_check(int d, int m);

/// Facets needed to reach volume excess epsilon on the unit ball: (C d/eps)^((d-1)/2).
/// May return +inf for large d.
double facets_required(int d, double epsilon, double constant = kDefaultConstant);

struct ShlUnits {
    double units;      // (C d/eps)^(1/2) (d-1)/e
    double parameters; // (d+1) * units
};

ShlUnits shl_units_lower(int d, double epsilon, double constant = kDefaultConstant);

struct DeepNetSize {
    double k_star;
    int k_ceil;
    std::int64_t units; // (d-1)(3 k_ceil - 1)
    int depth;          // k_ceil (d-1)
    double error_bound; // error_bound(d, k_ceil)
};

/// Depth parameter from log2(d) + log2(1/eps)/2 - 1/2 + log2(pi), ceiled.
DeepNetSize deep_net_size(int d, double epsilon);

/// Relative volume excess guaranteed by the depth-k norm network:
/// d(d-1) pi^2 / 2^(2k+1), which is pi^2/2^(2k) at d = 2.
double error_bound(int d, int k);

/// Shallow-to-deep unit ratio (C d/eps)^(1/2) / (e (3 log2 d + 1.5 log2(1/eps))).
double efficiency_ratio(int d, double epsilon, double constant = kDefaultConstant);

/// Lower bound sqrt(2 pi) n^(n+1/2) e^(-n) on n!.
double stirling_lower(unsigned n);

struct BoundsReport {
    int d = 0;
    std::optional<int> m;
    std::optional<double> epsilon;
    double constant = kDefaultConstant;

    std::optional<BigInt> regions;
    std::optional<BigInt> cone_like;
    std::optional<BigInt> bounded_cells;

    std::optional<double> facets_required;
    std::optional<ShlUnits> shl;
    std::optional<DeepNetSize> deep;
    std::optional<double> ratio;

    std::vector<std::string> warnings;
};

BoundsReport make_report(int d, std::optional<int> m, std::optional<double> epsilon,
                         double constant = kDefaultConstant);

} // namespace boundres::bounds
