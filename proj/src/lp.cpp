#include "boundres/lp.hpp"

#include "boundres/error.hpp"

#include <cmath>
#include <limits>

namespace boundres::lp {

namespace {

constexpr double kPivotEps = 1e-12;
constexpr std::size_t kMaxPivots = 200000;

// Tableau layout: constraint rows, then the phase-2 objective row, then the
// phase-1 objective row. The last column holds the right-hand side.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_((rows + 2) * (cols + 1), 0.0), basis_(rows, 0) {}

    double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double rhs(std::size_t r) const { return at(r, cols_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t phase2_row() const { return rows_; }
    std::size_t phase1_row() const { return rows_ + 1; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = at(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
        for (std::size_t r = 0; r < rows_ + 2; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        basis_[pr] = pc;
    }

    // Returns false when the objective is unbounded.
    bool run(std::size_t obj_row, std::size_t usable_cols, double tol, std::size_t& pivots) {
        for (;;) {
            std::size_t enter = usable_cols;
            for (std::size_t c = 0; c < usable_cols; ++c) {
                if (at(obj_row, c) < -tol) {
                    enter = c;
                    break;
                }
            }
            if (enter == usable_cols) return true;

            std::size_t leave = rows_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_; ++r) {
                const double a = at(r, enter);
                if (a <= kPivotEps) continue;
                const double ratio = rhs(r) / a;
                if (ratio < best - 1e-15 ||
                    (ratio <= best + 1e-15 && leave < rows_ && basis_[r] < basis_[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
            if (leave == rows_) return false;
            pivot(leave, enter);
            if (++pivots > kMaxPivots) throw NumericError("simplex: pivot limit exceeded");
        }
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
};

} // namespace

LinearProgram::LinearProgram(std::size_t num_vars)
    : num_vars_(num_vars), objective_(num_vars, 0.0) {
    if (num_vars == 0) throw DomainError("linear program needs at least one variable");
}

void LinearProgram::set_objective(std::span<const double> c) {
    if (c.size() != num_vars_) throw DomainError("objective size mismatch");
    objective_.assign(c.begin(), c.end());
}

void LinearProgram::add_le(std::span<const double> row, double rhs) {
    if (row.size() != num_vars_) throw DomainError("constraint size mismatch");
    rows_.insert(rows_.end(), row.begin(), row.end());
    rhs_.push_back(rhs);
}

void LinearProgram::add_ge(std::span<const double> row, double rhs) {
    std::vector<double> neg(row.begin(), row.end());
    for (double& v : neg) v = -v;
    add_le(neg, -rhs);
}

void LinearProgram::add_eq(std::span<const double> row, double rhs) {
    add_le(row, rhs);
    add_ge(row, rhs);
}

Result LinearProgram::maximize(double tolerance) const {
    const std::size_t n = num_vars_;
    const std::size_t m = rhs_.size();

    std::size_t num_art = 0;
    for (double b : rhs_)
        if (b < 0) ++num_art;

    // Columns: x+ (n), x- (n), slacks (m), artificials.
    const std::size_t real_cols = 2 * n + m;
    Tableau t(m, real_cols + num_art);

    std::size_t art = real_cols;
    for (std::size_t r = 0; r < m; ++r) {
        const double sign = rhs_[r] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double a = rows_[r * n + j];
            t.at(r, j) = sign * a;
            t.at(r, n + j) = -sign * a;
        }
        t.at(r, 2 * n + r) = sign;
        t.rhs(r) = sign * rhs_[r];
        if (sign < 0) {
            t.at(r, art) = 1.0;
            t.basis()[r] = art++;
        } else {
            t.basis()[r] = 2 * n + r;
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        t.at(t.phase2_row(), j) = -objective_[j];
        t.at(t.phase2_row(), n + j) = objective_[j];
    }

    std::size_t pivots = 0;
    if (num_art > 0) {
        const std::size_t p1 = t.phase1_row();
        for (std::size_t c = real_cols; c < t.cols(); ++c) t.at(p1, c) = 1.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis()[r] < real_cols) continue;
            for (std::size_t c = 0; c <= t.cols(); ++c) t.at(p1, c) -= t.at(r, c);
        }
        t.run(p1, t.cols(), 1e-11, pivots);
        // The phase-1 row's rhs is minus the artificial sum.
        if (-t.rhs(p1) > tolerance) return Result{Status::infeasible, 0.0, {}};

        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis()[r] < real_cols) continue;
            std::size_t best = real_cols;
            double best_abs = 1e-9;
            for (std::size_t c = 0; c < real_cols; ++c) {
                if (std::abs(t.at(r, c)) > best_abs) {
                    best_abs = std::abs(t.at(r, c));
                    best = c;
                }
            }
            if (best < real_cols) t.pivot(r, best);
        }
    }

    if (!t.run(t.phase2_row(), real_cols, 1e-11, pivots))
        return Result{Status::unbounded, std::numeric_limits<double>::infinity(), {}};

    Result res;
    res.status = Status::optimal;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t b = t.basis()[r];
        if (b < n)
            res.x[b] += t.rhs(r);
        else if (b < 2 * n)
            res.x[b - n] -= t.rhs(r);
    }
    res.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.value += objective_[j] * res.x[j];
    return res;
}

} // namespace boundres::lp
