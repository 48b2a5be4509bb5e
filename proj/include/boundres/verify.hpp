#pragma once

#include "boundres/network.hpp"

#include <cstddef>
#include <cstdint>

namespace boundres::verify {

/// Samples per substream. Fixed so results do not depend on thread count.
inline constexpr std::size_t kBatchSize = 1 << 15;

struct SandwichResult {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double lower_bound = 0.0; // cos^(d-1)(pi/2^k)
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool pass = false;
};

/// Ratio of the radius-free d-input norm network to the Euclidean norm over
/// standard normal draws; passes when every ratio lies in
/// [cos^(d-1)(pi/2^k) - 1e-9, 1 + 1e-9].
SandwichResult sandwich_sweep(int d, int k, std::size_t n_samples, std::uint64_t seed,
                              unsigned threads = 0);

struct McVolumeResult {
    double estimate = 0.0; // |P \ B| / |B|
    double ci95 = 0.0;     // half-width
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double radius = 1.0;   // R of the sampling ball
    std::size_t hits = 0;  // samples inside P with |x| > 1
    std::size_t escaped = 0; // samples inside P with |x| > R, always 0
};

/// Monte Carlo estimate of the relative volume of P = {net <= 0} outside the
/// unit ball, sampling uniformly in B(R) with R = 1/cos^(d-1)(pi/2^k).
/// The network must be a unit-radius norm network (output -1 at the origin).
McVolumeResult mc_volume_excess(const net::LayeredNetwork& network, int k, std::size_t n_samples,
                                std::uint64_t seed, unsigned threads = 0);

/// Closed-form relative excess of the regular n-gon with unit apothem.
double polygon_excess(std::size_t n);

/// Number of linear pieces of the boundary {net = 0} of a two-input
/// unit-radius network, found by sweeping 2^(k+6) directions, locating the
/// boundary by bisection and grouping runs of identical relu activation
/// patterns. k is taken from the network depth.
std::size_t count_segments_2d(const net::LayeredNetwork& network);

struct Theorem11Result {
    int d = 0;
    double epsilon = 0.0;
    int k_used = 0;
    std::size_t units = 0;
    std::size_t layers = 0;
    McVolumeResult mc;
    double bound = 0.0; // error_bound(d, k_used)
    bool pass = false;  // estimate - ci95 <= epsilon
};

Theorem11Result reproduce_theorem11(int d, double epsilon, std::size_t n_samples,
                                    std::uint64_t seed, unsigned threads = 0);

} // namespace boundres::verify
