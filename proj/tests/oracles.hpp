#pragma once

// Brute-force reference computations used by the unit and acceptance tests.
// Deliberately independent of the LP-based implementation.

#include "boundres/arrangement.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using boundres::AffineUnit;

inline std::vector<AffineUnit> random_hyperplanes(std::mt19937_64& gen, int d, int m) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> offset(-1.0, 1.0);
    std::vector<AffineUnit> out;
    for (int i = 0; i < m; ++i) {
        std::vector<double> w(static_cast<std::size_t>(d));
        for (double& v : w) v = normal(gen);
        out.emplace_back(std::move(w), offset(gen));
    }
    return out;
}

inline std::vector<int> signs_at(std::span<const AffineUnit> hps, std::span<const double> x,
                                 bool& on_plane) {
    std::vector<int> s(hps.size());
    on_plane = false;
    for (std::size_t i = 0; i < hps.size(); ++i) {
        const double v = hps[i].eval(x) / hps[i].weight_norm();
        if (std::abs(v) < 1e-12) on_plane = true;
        s[i] = v > 0 ? 1 : -1;
    }
    return s;
}

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Distinct sign vectors seen on a regular lattice over a box enclosing every
/// vertex, plus at points just off each vertex in all 2^d local orthants.
inline std::set<std::vector<int>> sign_census(std::span<const AffineUnit> hps, int lattice_per_dim) {
    const std::size_t d = hps.front().dim();
    std::set<std::vector<int>> seen;

    double extent = 2.0;
    struct Vertex {
        Eigen::VectorXd point;
        Eigen::MatrixXd inverse;
    };
    std::vector<Vertex> vertices;
    for_each_subset(hps.size(), d, [&](const std::vector<std::size_t>& idx) {
        Eigen::MatrixXd a(d, d);
        Eigen::VectorXd rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t j = 0; j < d; ++j) a(r, j) = hps[idx[r]].weights()[j];
            rhs(r) = -hps[idx[r]].bias();
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-10) return;
        Vertex v{lu.solve(rhs), lu.inverse()};
        extent = std::max(extent, v.point.cwiseAbs().maxCoeff() + 1.0);
        vertices.push_back(std::move(v));
    });

    for (const Vertex& v : vertices) {
        double clearance = 1.0;
        for (const auto& h : hps) {
            const double dist = std::abs(h.eval(std::span<const double>(v.point.data(), d))) / h.weight_norm();
            if (dist > 1e-9) clearance = std::min(clearance, dist);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            Eigen::VectorXd dir = Eigen::VectorXd::Zero(static_cast<long>(d));
            for (std::size_t j = 0; j < d; ++j)
                dir += ((mask >> j) & 1 ? 1.0 : -1.0) * v.inverse.col(static_cast<long>(j));
            const Eigen::VectorXd p = v.point + dir * (0.25 * clearance / dir.norm());
            bool on_plane = false;
            auto s = signs_at(hps, std::span<const double>(p.data(), d), on_plane);
            if (!on_plane) seen.insert(std::move(s));
        }
    }

    const double step = 2 * extent / lattice_per_dim;
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    for (;;) {
        for (std::size_t j = 0; j < d; ++j) x[j] = -extent + (idx[j] + 0.5) * step;
        bool on_plane = false;
        auto s = signs_at(hps, x, on_plane);
        if (!on_plane) seen.insert(std::move(s));
        std::size_t j = 0;
        while (j < d && ++idx[j] == lattice_per_dim) idx[j++] = 0;
        if (j == d) break;
    }
    return seen;
}

/// Exact facet count for a two-input single-hidden-layer net: for every cell
/// (taken from the census) intersect the zero line of the cell's affine piece
/// with all hidden-unit lines and test the midpoints of the resulting
/// intervals for membership in that cell.
inline std::size_t facets_2d(const boundres::arr::ShlNetwork& net, int lattice_per_dim = 400) {
    const auto hidden = net.hidden();
    const auto a = net.output_weights();
    const auto cells = sign_census(hidden, lattice_per_dim);
    std::size_t facets = 0;
    for (const auto& s : cells) {
        double g0 = 0, g1 = 0, h = net.output_bias();
        for (std::size_t i = 0; i < hidden.size(); ++i) {
            if (s[i] < 0) continue;
            g0 += a[i] * hidden[i].weights()[0];
            g1 += a[i] * hidden[i].weights()[1];
            h += a[i] * hidden[i].bias();
        }
        const double gn = std::hypot(g0, g1);
        if (gn < 1e-12) continue;
        // Zero line p(t) = base + t dir.
        const double bx = -h * g0 / (gn * gn), by = -h * g1 / (gn * gn);
        const double dx = -g1 / gn, dy = g0 / gn;
        std::vector<double> ts;
        for (const auto& u : hidden) {
            const double denom = u.weights()[0] * dx + u.weights()[1] * dy;
            if (std::abs(denom) < 1e-14) continue;
            ts.push_back(-(u.weights()[0] * bx + u.weights()[1] * by + u.bias()) / denom);
        }
        std::sort(ts.begin(), ts.end());
        std::vector<double> probes;
        if (ts.empty()) {
            probes.push_back(0.0);
        } else {
            probes.push_back(ts.front() - 1.0);
            probes.push_back(ts.back() + 1.0);
            for (std::size_t i = 0; i + 1 < ts.size(); ++i)
                if (ts[i + 1] - ts[i] > 1e-9) probes.push_back(0.5 * (ts[i] + ts[i + 1]));
        }
        for (double t : probes) {
            const double p[2] = {bx + t * dx, by + t * dy};
            bool on_plane = false;
            if (signs_at(hidden, p, on_plane) == s && !on_plane) {
                ++facets;
                break;
            }
        }
    }
    return facets;
}

} // namespace oracle
