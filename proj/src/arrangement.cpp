#include "boundres/arrangement.hpp"

#include "boundres/bounds.hpp"
#include "boundres/error.hpp"
#include "boundres/lp.hpp"
#include "boundres/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace boundres::arr {

namespace {

std::vector<AffineUnit> normalize_all(std::span<const AffineUnit> hps) {
    std::vector<AffineUnit> out;
    out.reserve(hps.size());
    for (const auto& h : hps) out.push_back(h.normalized());
    return out;
}

void check_scale(std::span<const AffineUnit> hps) {
    if (hps.empty()) throw DomainError("arrangement needs at least one hyperplane");
    if (hps.size() > kMaxHyperplanes)
        throw DomainError("arrangement limited to " + std::to_string(kMaxHyperplanes) + " hyperplanes");
    const std::size_t d = hps.front().dim();
    if (d > kMaxDim) throw DomainError("arrangement limited to dimension " + std::to_string(kMaxDim));
    for (const auto& h : hps) {
        if (h.dim() != d) throw DomainError("hyperplanes differ in dimension");
        if (h.degenerate()) throw DomainError("all-zero hyperplane");
    }
}

// Deepest point of a cell (optionally restricted to extra equality planes):
// maximise t with signs_i (w_i.x + b_i) >= t inside the box |x_j| <= box.
// With scale s the problem is solved in coordinates y = s x, so the box
// covers |x_j| <= box / s.
struct Interior {
    double depth;
    std::vector<double> x;
};

std::optional<Interior> deepest_point(std::span<const AffineUnit> unit_hps,
                                      std::span<const int> signs,
                                      std::span<const AffineUnit> equalities, const Options& opts,
                                      std::optional<std::size_t> skip = std::nullopt,
                                      double scale = 1.0) {
    const std::size_t d = unit_hps.empty() ? equalities.front().dim() : unit_hps.front().dim();
    lp::LinearProgram prog(d + 1);
    std::vector<double> obj(d + 1, 0.0);
    obj[d] = 1.0;
    prog.set_objective(obj);

    std::vector<double> row(d + 1);
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (skip && *skip == i) continue;
        const double s = signs[i];
        for (std::size_t j = 0; j < d; ++j) row[j] = -s * unit_hps[i].weights()[j];
        row[d] = 1.0;
        prog.add_le(row, s * scale * unit_hps[i].bias());
    }
    for (const auto& e : equalities) {
        for (std::size_t j = 0; j < d; ++j) row[j] = e.weights()[j];
        row[d] = 0.0;
        prog.add_eq(row, -scale * e.bias());
    }
    for (std::size_t j = 0; j < d; ++j) {
        std::fill(row.begin(), row.end(), 0.0);
        row[j] = 1.0;
        prog.add_le(row, opts.box);
        row[j] = -1.0;
        prog.add_le(row, opts.box);
    }
    std::fill(row.begin(), row.end(), 0.0);
    row[d] = 1.0;
    prog.add_le(row, opts.box);

    const lp::Result r = prog.maximize(opts.tolerance);
    if (r.status != lp::Status::optimal || r.value <= opts.margin) return std::nullopt;
    return Interior{r.value, std::vector<double>(r.x.begin(), r.x.begin() + static_cast<long>(d))};
}

double witness_margin(std::span<const AffineUnit> unit_hps, std::span<const int> signs,
                      std::span<const double> x) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < signs.size(); ++i) m = std::min(m, signs[i] * unit_hps[i].eval(x));
    return m;
}

double min_singular_value(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues().minCoeff();
}

// Calls fn(indices) for each k-subset of {0..n-1} in lexicographic order.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        if (!fn(std::span<const std::size_t>(idx))) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Union-find for facet merging.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

std::vector<Cell> enumerate_cells(std::span<const AffineUnit> hyperplanes, const Options& opts) {
    check_scale(hyperplanes);
    for (std::size_t i = 0; i < hyperplanes.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (same_hyperplane(hyperplanes[i], hyperplanes[j], opts.tolerance) != 0)
                throw DomainError("duplicate hyperplanes " + std::to_string(j) + " and " +
                                  std::to_string(i));

    const std::vector<AffineUnit> hps = normalize_all(hyperplanes);
    const std::size_t d = hps.front().dim();

    struct Partial {
        std::vector<int> signs;
        std::vector<double> witness;
    };
    std::vector<Partial> cells{{{}, std::vector<double>(d, 0.0)}};

    for (std::size_t h = 0; h < hps.size(); ++h) {
        std::vector<Partial> next;
        next.reserve(cells.size() * 2);
        const std::span<const AffineUnit> upto(hps.data(), h + 1);
        for (Partial& cell : cells) {
            for (int s : {1, -1}) {
                std::vector<int> signs = cell.signs;
                signs.push_back(s);
                if (auto p = deepest_point(upto, signs, {}, opts)) next.push_back({std::move(signs), std::move(p->x)});
            }
        }
        if (next.empty()) throw NumericError("cell enumeration lost every cell");
        cells = std::move(next);
    }

    std::vector<Cell> out;
    out.reserve(cells.size());
    for (Partial& p : cells) {
        Cell c;
        c.margin = witness_margin(hps, p.signs, p.witness);
        c.bounded = !cell_unbounded(p.signs, hps, opts.tolerance);
        c.signs = std::move(p.signs);
        c.witness = std::move(p.witness);
        out.push_back(std::move(c));
    }
    return out;
}

bool cell_unbounded(std::span<const int> signs, std::span<const AffineUnit> hyperplanes,
                    double tolerance) {
    if (signs.size() != hyperplanes.size()) throw DomainError("sign vector size mismatch");
    const std::size_t d = hyperplanes.front().dim();
    const std::vector<AffineUnit> hps = normalize_all(hyperplanes);

    lp::LinearProgram base(d);
    std::vector<double> row(d);
    for (std::size_t i = 0; i < hps.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) row[j] = -signs[i] * hps[i].weights()[j];
        base.add_le(row, 0.0);
    }
    for (std::size_t j = 0; j < d; ++j) {
        std::fill(row.begin(), row.end(), 0.0);
        row[j] = 1.0;
        base.add_le(row, 1.0);
        row[j] = -1.0;
        base.add_le(row, 1.0);
    }
    std::vector<double> obj(d);
    for (std::size_t j = 0; j < d; ++j) {
        for (double dir : {1.0, -1.0}) {
            std::fill(obj.begin(), obj.end(), 0.0);
            obj[j] = dir;
            lp::LinearProgram prog = base;
            prog.set_objective(obj);
            const lp::Result r = prog.maximize(tolerance);
            if (r.status == lp::Status::optimal && r.value > tolerance) return true;
        }
    }
    return false;
}

CellCounts classify_cells(std::span<const Cell> cells, std::span<const AffineUnit> hyperplanes,
                          double tolerance) {
    CellCounts counts;
    for (const Cell& c : cells) {
        if (cell_unbounded(c.signs, hyperplanes, tolerance))
            ++counts.unbounded;
        else
            ++counts.bounded;
    }
    return counts;
}

bool is_general_position(std::span<const AffineUnit> hyperplanes, double tolerance) {
    if (hyperplanes.empty()) throw DomainError("general position test needs m >= 1");
    const std::size_t d = hyperplanes.front().dim();
    const std::size_t m = hyperplanes.size();
    for (const auto& h : hyperplanes) {
        if (h.dim() != d) throw DomainError("hyperplanes differ in dimension");
        if (h.degenerate()) return false;
    }
    const std::vector<AffineUnit> hps = normalize_all(hyperplanes);

    const std::size_t k = std::min(m, d);
    const bool normals_ok = for_each_subset(m, k, [&](std::span<const std::size_t> idx) {
        Eigen::MatrixXd a(k, d);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t j = 0; j < d; ++j) a(r, j) = hps[idx[r]].weights()[j];
        return min_singular_value(a) > tolerance;
    });
    if (!normals_ok) return false;
    if (m <= d) return true;

    return for_each_subset(m, d + 1, [&](std::span<const std::size_t> idx) {
        Eigen::MatrixXd a(d + 1, d + 1);
        for (std::size_t r = 0; r <= d; ++r) {
            for (std::size_t j = 0; j < d; ++j) a(r, j) = hps[idx[r]].weights()[j];
            a(r, d) = hps[idx[r]].bias();
        }
        return min_singular_value(a) > tolerance;
    });
}

std::vector<std::vector<double>> arrangement_vertices(std::span<const AffineUnit> hyperplanes,
                                                      double tolerance) {
    std::vector<std::vector<double>> out;
    if (hyperplanes.empty()) return out;
    const std::size_t d = hyperplanes.front().dim();
    const std::vector<AffineUnit> hps = normalize_all(hyperplanes);
    for_each_subset(hps.size(), d, [&](std::span<const std::size_t> idx) {
        Eigen::MatrixXd a(d, d);
        Eigen::VectorXd rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t j = 0; j < d; ++j) a(r, j) = hps[idx[r]].weights()[j];
            rhs(r) = -hps[idx[r]].bias();
        }
        if (min_singular_value(a) <= tolerance) return true;
        const Eigen::VectorXd x = a.fullPivLu().solve(rhs);
        out.emplace_back(x.data(), x.data() + d);
        return true;
    });
    return out;
}

ShlNetwork::ShlNetwork(std::vector<AffineUnit> hidden, std::vector<double> output_weights,
                       double output_bias)
    : hidden_(std::move(hidden)), a_(std::move(output_weights)), c_(output_bias) {
    if (hidden_.empty()) throw DomainError("network needs at least one hidden unit");
    if (a_.size() != hidden_.size()) throw DomainError("output weight count differs from unit count");
    const std::size_t d = hidden_.front().dim();
    for (const auto& u : hidden_)
        if (u.dim() != d) throw DomainError("hidden units differ in dimension");
    for (double v : a_)
        if (!std::isfinite(v)) throw DomainError("non-finite output weight");
    if (!std::isfinite(c_)) throw DomainError("non-finite output bias");
}

double ShlNetwork::eval(std::span<const double> x) const {
    double f = c_;
    for (std::size_t i = 0; i < hidden_.size(); ++i) f += a_[i] * std::max(0.0, hidden_[i].eval(x));
    return f;
}

std::size_t count_boundary_facets(const ShlNetwork& net, double tolerance) {
    const std::size_t d = net.dim();
    const auto hidden = net.hidden();
    const auto a = net.output_weights();
    if (hidden.size() > kMaxHyperplanes || d > kMaxDim)
        throw DomainError("facet counting limited to desk-scale networks");

    // Constant units fold into the bias; the rest map onto distinct hyperplanes.
    double bias = net.output_bias();
    std::vector<AffineUnit> planes;
    struct Ref {
        std::size_t plane;
        int orientation;
    };
    std::vector<std::optional<Ref>> refs(hidden.size());
    for (std::size_t i = 0; i < hidden.size(); ++i) {
        if (hidden[i].degenerate()) {
            bias += a[i] * std::max(0.0, hidden[i].bias());
            continue;
        }
        for (std::size_t p = 0; p < planes.size() && !refs[i]; ++p)
            if (int o = same_hyperplane(planes[p], hidden[i], tolerance)) refs[i] = Ref{p, o};
        if (!refs[i]) {
            planes.push_back(hidden[i].normalized());
            refs[i] = Ref{planes.size() - 1, 1};
        }
    }

    if (planes.empty()) {
        if (std::abs(bias) <= tolerance) throw DomainError("degenerate boundary");
        return 0;
    }

    const Options opts{.margin = tolerance, .box = 1e4, .tolerance = tolerance};
    const std::vector<Cell> cells = enumerate_cells(planes, opts);

    // Zero planes far from the origin are searched in shrunken coordinates.
    auto piece_scale = [](const AffineUnit& plane) { return 1.0 / std::max(1.0, std::abs(plane.bias())); };

    struct Piece {
        std::size_t cell;
        AffineUnit plane; // normalised zero set of f restricted to the cell
    };
    std::vector<Piece> pieces;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<double> g(d, 0.0);
        double h = bias;
        for (std::size_t i = 0; i < hidden.size(); ++i) {
            if (!refs[i]) continue;
            if (cells[c].signs[refs[i]->plane] * refs[i]->orientation < 0) continue;
            for (std::size_t j = 0; j < d; ++j) g[j] += a[i] * hidden[i].weights()[j];
            h += a[i] * hidden[i].bias();
        }
        double norm = 0.0;
        for (double v : g) norm += v * v;
        norm = std::sqrt(norm);
        if (norm <= tolerance) {
            if (std::abs(h) <= tolerance) throw DomainError("degenerate boundary");
            continue;
        }
        AffineUnit zero_set = AffineUnit(std::move(g), h).normalized();
        const AffineUnit eq[] = {zero_set};
        if (deepest_point(planes, cells[c].signs, eq, opts, std::nullopt, piece_scale(zero_set)))
            pieces.push_back({c, std::move(zero_set)});
    }

    DisjointSets sets(pieces.size());
    if (d >= 2) {
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            for (std::size_t q = p + 1; q < pieces.size(); ++q) {
                const auto& sp = cells[pieces[p].cell].signs;
                const auto& sq = cells[pieces[q].cell].signs;
                std::size_t diff = 0, at = 0;
                for (std::size_t i = 0; i < sp.size(); ++i)
                    if (sp[i] != sq[i]) {
                        ++diff;
                        at = i;
                    }
                if (diff != 1) continue;
                if (same_hyperplane(pieces[p].plane, pieces[q].plane, 1e-7) == 0) continue;
                const AffineUnit eq[] = {pieces[p].plane, planes[at]};
                if (deepest_point(planes, sp, eq, opts, at, piece_scale(pieces[p].plane))) sets.unite(p, q);
            }
        }
    }

    std::size_t facets = 0;
    for (std::size_t p = 0; p < pieces.size(); ++p)
        if (sets.find(p) == p) ++facets;
    return facets;
}

Theorem5Report theorem5_experiment(int d, int m, std::uint64_t seed) {
    if (d < 1 || static_cast<std::size_t>(d) > kMaxDim) throw DomainError("theorem5: d out of range");
    if (m < 1 || static_cast<std::size_t>(m) > kMaxHyperplanes) throw DomainError("theorem5: m out of range");

    const auto regions = bounds::regions_max(d, m);
    const auto cone = bounds::cone_like_count(d, m);
    const std::size_t upper = regions.convert_to<std::size_t>();
    const std::size_t lower = cone.unbounded.convert_to<std::size_t>() - 1;

    std::mt19937_64 gen = rng::substream(seed, 0);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> offset(-1.0, 1.0);
    std::uniform_real_distribution<double> weight(0.5, 1.5);

    constexpr int kMaxAttempts = 100;
    for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
        std::vector<AffineUnit> hps;
        for (int i = 0; i < m; ++i) {
            std::vector<double> w(static_cast<std::size_t>(d));
            for (double& v : w) v = normal(gen);
            hps.push_back(AffineUnit(std::move(w), offset(gen)).normalized());
        }
        std::vector<double> a(static_cast<std::size_t>(m));
        for (double& v : a) v = weight(gen);

        if (hps.front().degenerate() || !is_general_position(hps)) continue;
        if (enumerate_cells(hps).size() != upper) continue;

        double peak = 0.0;
        for (const auto& v : arrangement_vertices(hps)) {
            double s = 0.0;
            for (std::size_t i = 0; i < hps.size(); ++i) s += a[i] * std::max(0.0, hps[i].eval(v));
            peak = std::max(peak, s);
        }

        ShlNetwork net(std::move(hps), std::move(a), -peak - 1.0);
        const std::size_t facets = count_boundary_facets(net);
        return Theorem5Report{d, m, seed, attempt, facets, lower, upper,
                              lower <= facets && facets <= upper, std::move(net)};
    }
    throw NumericError("theorem5: no generic arrangement after 100 attempts");
}

} // namespace boundres::arr
