#include "boundres/geometry.hpp"

#include "boundres/error.hpp"
#include "boundres/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace boundres {

namespace {

void require_finite(std::span<const double> x, const char* what) {
    for (double v : x)
        if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite value");
}

} // namespace

AffineUnit::AffineUnit(std::vector<double> weights, double bias)
    : weights_(std::move(weights)), bias_(bias) {
    if (weights_.empty()) throw DomainError("affine unit needs dimension >= 1");
    require_finite(weights_, "affine unit weights");
    if (!std::isfinite(bias_)) throw DomainError("affine unit bias: non-finite value");
}

double AffineUnit::eval(std::span<const double> x) const {
    if (x.size() != weights_.size()) throw DomainError("dimension mismatch");
    return std::inner_product(weights_.begin(), weights_.end(), x.begin(), bias_);
}

double AffineUnit::weight_norm() const {
    double s = 0.0;
    for (double w : weights_) s += w * w;
    return std::sqrt(s);
}

bool AffineUnit::degenerate() const {
    return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 0.0; });
}

AffineUnit AffineUnit::normalized() const {
    const double n = weight_norm();
    if (n == 0.0) return *this;
    std::vector<double> w(weights_);
    for (double& v : w) v /= n;
    return AffineUnit(std::move(w), bias_ / n);
}

MaxoutClassifier::MaxoutClassifier(std::vector<AffineUnit> units) : units_(std::move(units)) {
    if (units_.empty()) throw DomainError("maxout classifier needs at least one unit");
    dim_ = units_.front().dim();
    for (const auto& u : units_)
        if (u.dim() != dim_) throw DomainError("maxout units differ in dimension");
}

MaxoutValue MaxoutClassifier::eval(std::span<const double> x) const {
    if (x.size() != dim_) throw DomainError("dimension mismatch");
    require_finite(x, "maxout input");
    MaxoutValue best{units_[0].eval(x), 0};
    for (std::size_t i = 1; i < units_.size(); ++i) {
        const double v = units_[i].eval(x);
        if (v > best.value) best = {v, i};
    }
    return best;
}

MaxoutClassifier MaxoutClassifier::without(std::span<const std::size_t> indices) const {
    std::vector<AffineUnit> kept;
    for (std::size_t i = 0; i < units_.size(); ++i)
        if (std::find(indices.begin(), indices.end(), i) == indices.end()) kept.push_back(units_[i]);
    return MaxoutClassifier(std::move(kept));
}

MaxoutValue eval_maxout(const MaxoutClassifier& clf, std::span<const double> x) {
    return clf.eval(x);
}

int same_hyperplane(const AffineUnit& a, const AffineUnit& b, double tolerance) {
    if (a.dim() != b.dim() || a.degenerate() || b.degenerate()) return 0;
    const AffineUnit na = a.normalized();
    const AffineUnit nb = b.normalized();
    for (int sign : {1, -1}) {
        double diff = std::abs(na.bias() - sign * nb.bias());
        for (std::size_t j = 0; j < na.dim(); ++j)
            diff = std::max(diff, std::abs(na.weights()[j] - sign * nb.weights()[j]));
        if (diff <= tolerance) return sign;
    }
    return 0;
}

RedundancyReport redundant_units(const MaxoutClassifier& clf, double tolerance) {
    const std::size_t m = clf.size();
    const std::size_t d = clf.dim();
    if (m < 2) throw DomainError("redundancy check needs at least two units");

    RedundancyReport report;
    std::vector<bool> active(m, true);
    std::vector<AffineUnit> unit;
    unit.reserve(m);
    for (const auto& u : clf.units()) unit.push_back(u.normalized());

    for (std::size_t k = 0; k < m; ++k) {
        if (unit[k].degenerate() && unit[k].bias() > 0) {
            report.empty_region = true;
            report.warnings.push_back("unit " + std::to_string(k) +
                                      " is a positive constant; the classified region is empty");
        }
    }

    // Oriented duplicates: the same halfspace, kept at its lowest index.
    for (std::size_t k = m; k-- > 0;) {
        if (unit[k].degenerate()) continue;
        for (std::size_t j = 0; j < k; ++j) {
            if (!active[j] || unit[j].degenerate()) continue;
            if (unit[j] == unit[k]) {
                active[k] = false;
                break;
            }
            if (same_hyperplane(unit[j], unit[k], tolerance) == 1) {
                active[k] = false;
                report.warnings.push_back("unit " + std::to_string(k) +
                                          " treated as a duplicate of unit " + std::to_string(j));
                break;
            }
        }
    }

    for (std::size_t k = m; k-- > 0;) {
        if (!active[k]) continue;
        if (std::count(active.begin(), active.end(), true) < 2) break;

        bool redundant = false;
        if (unit[k].degenerate()) {
            redundant = unit[k].bias() <= 0;
        } else {
            lp::LinearProgram prog(d);
            prog.set_objective(unit[k].weights());
            for (std::size_t j = 0; j < m; ++j) {
                if (j == k || !active[j]) continue;
                prog.add_le(unit[j].weights(), -unit[j].bias());
            }
            const lp::Result r = prog.maximize(tolerance);
            if (r.status == lp::Status::infeasible)
                redundant = true;
            else if (r.status == lp::Status::optimal)
                redundant = r.value + unit[k].bias() <= tolerance;
        }
        if (redundant) active[k] = false;
    }

    for (std::size_t k = 0; k < m; ++k)
        if (!active[k]) report.redundant.push_back(k);
    return report;
}

BoundarySide boundary_sign_probe(const MaxoutClassifier& clf, std::span<const double> x,
                                 double tau) {
    if (!(tau > 0)) throw DomainError("boundary tolerance must be positive");
    const double v = clf.eval(x).value;
    if (v < -tau) return BoundarySide::negative;
    if (v > tau) return BoundarySide::positive;
    return BoundarySide::boundary;
}

const char* to_string(BoundarySide side) {
    switch (side) {
    case BoundarySide::negative: return "negative";
    case BoundarySide::boundary: return "boundary";
    case BoundarySide::positive: return "positive";
    }
    return "?";
}

} // namespace boundres
