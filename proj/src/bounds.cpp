#include "boundres/bounds.hpp"

#include "boundres/error.hpp"

#include <cmath>
#include <numbers>

namespace boundres::bounds {

namespace {

void check_dim(int d, int min_d) {
    if (d < min_d) throw DomainError("dimension must be >= " + std::to_string(min_d));
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) throw DomainError("epsilon must lie in (0, 1)");
}

void check_constant(double constant) {
    if (!(constant > 0) || !std::isfinite(constant)) throw DomainError("constant must be positive");
}

} // namespace

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt regions_max(int d, int m) {
    check_dim(d, 1);
    if (m < 0) throw DomainError("m must be >= 0");
    BigInt sum = 0;
    for (int k = 0; k <= d; ++k) sum += binomial(static_cast<unsigned>(m), static_cast<unsigned>(k));
    return sum;
}

ConeLikeCount cone_like_count(int d, int m) {
    check_dim(d, 1);
    if (m < 1) throw DomainError("m must be >= 1");
    ConeLikeCount out;
    for (int k = 0; k < d; ++k) out.unbounded += binomial(m - 1, k);
    out.unbounded *= 2;
    out.bounded = binomial(m - 1, d);
    if (out.unbounded + out.bounded != regions_max(d, m))
        throw NumericError("cone-like and bounded counts do not sum to the region count");
    return out;
}

Lemma6Check lemma6_check(int d, int m) {
    check_dim(d, 2);
    if (m < 1) throw DomainError("m must be >= 1");
    Lemma6Check out;
    out.regions = regions_max(d, m);
    if (m <= d) out.holds_2m = out.regions == (BigInt(1) << m);
    if (m >= d) {
        BigInt power = 1;
        for (int i = 0; i < d; ++i) power *= m;
        out.polynomial_bound = BigRational(power, factorial(d - 1));
        out.holds_polynomial = BigRational(out.regions) <= out.polynomial_bound;
    }
    return out;
}

double facets_required(int d, double epsilon, double constant) {
    check_dim(d, 2);
    check_epsilon(epsilon);
    check_constant(constant);
    return std::pow(constant * d / epsilon, (d - 1) / 2.0);
}

ShlUnits shl_units_lower(int d, double epsilon, double constant) {
    check_dim(d, 2);
    check_epsilon(epsilon);
    check_constant(constant);
    const double units = std::sqrt(constant * d / epsilon) * (d - 1) / std::numbers::e;
    return {units, (d + 1) * units};
}

double error_bound(int d, int k) {
    check_dim(d, 2);
    if (k < 2) throw DomainError("k must be >= 2");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    if (d == 2) return std::ldexp(pi2, -2 * k);
    return std::ldexp(d * (d - 1.0) * pi2, -(2 * k + 1));
}

DeepNetSize deep_net_size(int d, double epsilon) {
    check_dim(d, 2);
    check_epsilon(epsilon);
    DeepNetSize out;
    out.k_star = std::log2(d) + 0.5 * std::log2(1.0 / epsilon) - 0.5 + std::log2(std::numbers::pi);
    out.k_ceil = std::max(2, static_cast<int>(std::ceil(out.k_star)));
    out.units = static_cast<std::int64_t>(d - 1) * (3 * out.k_ceil - 1);
    out.depth = out.k_ceil * (d - 1);
    out.error_bound = error_bound(d, out.k_ceil);
    if (out.error_bound > epsilon)
        throw NumericError("deep network error bound exceeds epsilon");
    return out;
}

double efficiency_ratio(int d, double epsilon, double constant) {
    check_dim(d, 2);
    check_epsilon(epsilon);
    check_constant(constant);
    const double denom =
        std::numbers::e * (3.0 * std::log2(d) + 1.5 * std::log2(1.0 / epsilon));
    return std::sqrt(constant * d / epsilon) / denom;
}

double stirling_lower(unsigned n) {
    const double x = n;
    return std::sqrt(2 * std::numbers::pi) * std::pow(x, x + 0.5) * std::exp(-x);
}

BoundsReport make_report(int d, std::optional<int> m, std::optional<double> epsilon,
                         double constant) {
    check_dim(d, 1);
    check_constant(constant);
    BoundsReport r;
    r.d = d;
    r.m = m;
    r.epsilon = epsilon;
    r.constant = constant;
    if (m) {
        r.regions = regions_max(d, *m);
        if (*m >= 1) {
            const ConeLikeCount c = cone_like_count(d, *m);
            r.cone_like = c.unbounded;
            r.bounded_cells = c.bounded;
        }
    }
    if (epsilon) {
        check_dim(d, 2);
        r.facets_required = facets_required(d, *epsilon, constant);
        if (std::isinf(*r.facets_required))
            r.warnings.push_back("facets_required overflowed double precision");
        r.shl = shl_units_lower(d, *epsilon, constant);
        r.deep = deep_net_size(d, *epsilon);
        r.ratio = efficiency_ratio(d, *epsilon, constant);
    }
    return r;
}

} // namespace boundres::bounds
