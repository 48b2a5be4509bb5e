#pragma once

#include "boundres/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace boundres::arr {

inline constexpr std::size_t kMaxHyperplanes = 20;
inline constexpr std::size_t kMaxDim = 6;

/// One full-dimensional region of a hyperplane arrangement.
struct Cell {
    std::vector<int> signs;       // +1/-1 per hyperplane, sign of w_i.x + b_i inside
    std::vector<double> witness;  // interior point
    double margin = 0.0;          // min_i signs_i (w_i.x + b_i) / |w_i| at the witness
    bool bounded = false;
};

struct Options {
    double margin = 1e-9;    // strict interior margin for crossing tests
    double box = 1e4;        // half-width of the bounding box for witness search
    double tolerance = 1e-9; // LP and boundedness decisions
};

/// Cells of the arrangement, built by inserting hyperplanes one at a time and
/// splitting every cell whose interior the new hyperplane crosses. Output order
/// is deterministic for a fixed input order.
std::vector<Cell> enumerate_cells(std::span<const AffineUnit> hyperplanes, const Options& opts = {});

/// True when some nonzero direction v satisfies signs_i (w_i.v) >= 0 for all i.
bool cell_unbounded(std::span<const int> signs, std::span<const AffineUnit> hyperplanes,
                    double tolerance = 1e-9);

struct CellCounts {
    std::size_t bounded = 0;
    std::size_t unbounded = 0;
};

CellCounts classify_cells(std::span<const Cell> cells, std::span<const AffineUnit> hyperplanes,
                          double tolerance = 1e-9);

/// Rank tests on normalised rows: any min(m, d) normals are independent and,
/// when m > d, no d+1 hyperplanes share a point.
bool is_general_position(std::span<const AffineUnit> hyperplanes, double tolerance = 1e-9);

/// Intersection points of every d-subset with independent normals.
std::vector<std::vector<double>> arrangement_vertices(std::span<const AffineUnit> hyperplanes,
                                                      double tolerance = 1e-9);

/// Single hidden layer rectifier net f(x) = a.max(0, W x + b) + c.
class ShlNetwork {
public:
    ShlNetwork(std::vector<AffineUnit> hidden, std::vector<double> output_weights, double output_bias);

    std::size_t dim() const noexcept { return hidden_.front().dim(); }
    std::size_t size() const noexcept { return hidden_.size(); }
    std::span<const AffineUnit> hidden() const noexcept { return hidden_; }
    std::span<const double> output_weights() const noexcept { return a_; }
    double output_bias() const noexcept { return c_; }

    double eval(std::span<const double> x) const;

private:
    std::vector<AffineUnit> hidden_;
    std::vector<double> a_;
    double c_;
};

/// Number of facets of {f = 0}: one candidate piece per arrangement cell whose
/// affine restriction of f vanishes on a (d-1)-dimensional part of the cell,
/// then coplanar pieces of adjacent cells sharing a (d-2)-dimensional
/// interface are merged. Throws DomainError("degenerate boundary") when f is
/// identically zero on a cell.
std::size_t count_boundary_facets(const ShlNetwork& net, double tolerance = 1e-9);

struct Theorem5Report {
    int d = 0;
    int m = 0;
    std::uint64_t seed = 0;
    int attempts = 0;
    std::size_t facets = 0;
    std::size_t lower = 0; // C(d,m) - 1
    std::size_t upper = 0; // G(d,m)
    bool pass = false;
    ShlNetwork net;
};

/// Samples generic hyperplanes, builds a positive-output-weight net whose
/// bias puts every arrangement vertex at f <= -1, and checks
/// C(d,m)-1 <= facets <= G(d,m).
Theorem5Report theorem5_experiment(int d, int m, std::uint64_t seed);

} // namespace boundres::arr
