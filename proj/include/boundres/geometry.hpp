#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace boundres {

/// One linear unit w.x + b. Its zero set is a hyperplane unless w = 0.
class AffineUnit {
public:
    AffineUnit(std::vector<double> weights, double bias);

    std::size_t dim() const noexcept { return weights_.size(); }
    std::span<const double> weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }

    double eval(std::span<const double> x) const;
    double weight_norm() const;

    /// True when w = 0; such a unit is constant and defines no hyperplane.
    bool degenerate() const;

    /// Scaled so that |w| = 1. Degenerate units are returned unchanged.
    AffineUnit normalized() const;

    friend bool operator==(const AffineUnit&, const AffineUnit&) = default;

private:
    std::vector<double> weights_;
    double bias_;
};

struct MaxoutValue {
    double value;
    std::size_t argmax; // lowest index on ties
};

/// f(x) = max_i (w_i.x + b_i). The classified region is {x : f(x) <= 0}.
class MaxoutClassifier {
public:
    explicit MaxoutClassifier(std::vector<AffineUnit> units);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return units_.size(); }
    std::span<const AffineUnit> units() const noexcept { return units_; }

    MaxoutValue eval(std::span<const double> x) const;

    /// Copy without the given unit indices.
    MaxoutClassifier without(std::span<const std::size_t> indices) const;

private:
    std::vector<AffineUnit> units_;
    std::size_t dim_;
};

MaxoutValue eval_maxout(const MaxoutClassifier& clf, std::span<const double> x);

struct RedundancyReport {
    /// Ascending unit indices whose joint removal leaves {f <= 0} unchanged.
    std::vector<std::size_t> redundant;
    /// Set when some constant unit has positive bias, so f > 0 everywhere.
    bool empty_region = false;
    std::vector<std::string> warnings;
};

/// Leave-one-out redundancy: unit k is redundant when the intersection of the
/// remaining halfspaces already lies inside {w_k.x + b_k <= 0}. Units are
/// examined from the highest index down and removed as found, so duplicates
/// keep their lowest index and the reported set can be removed all at once.
RedundancyReport redundant_units(const MaxoutClassifier& clf, double tolerance = 1e-9);

enum class BoundarySide { negative, boundary, positive };

BoundarySide boundary_sign_probe(const MaxoutClassifier& clf, std::span<const double> x,
                                 double tau);

const char* to_string(BoundarySide side);

/// Same hyperplane up to orientation, compared after normalising |w| = 1.
/// Returns +1 or -1 for the relative orientation, 0 when distinct.
int same_hyperplane(const AffineUnit& a, const AffineUnit& b, double tolerance);

} // namespace boundres
