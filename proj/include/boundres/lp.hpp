#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace boundres::lp {

enum class Status { optimal, unbounded, infeasible };

struct Result {
    Status status = Status::infeasible;
    double value = 0.0;
    std::vector<double> x;
};

/// maximize c.x subject to rows of A x <= b, x free.
///
/// Small dense two-phase simplex with Bland's rule. Intended for the
/// few-dozen-constraint problems that arise in cell and facet tests.
class LinearProgram {
public:
    explicit LinearProgram(std::size_t num_vars);

    std::size_t num_vars() const noexcept { return num_vars_; }
    std::size_t num_rows() const noexcept { return rhs_.size(); }

    void set_objective(std::span<const double> c);
    void add_le(std::span<const double> row, double rhs);
    void add_ge(std::span<const double> row, double rhs);
    void add_eq(std::span<const double> row, double rhs);

    Result maximize(double tolerance = 1e-9) const;

private:
    std::size_t num_vars_;
    std::vector<double> objective_;
    std::vector<double> rows_; // row-major, num_rows x num_vars
    std::vector<double> rhs_;
};

} // namespace boundres::lp
