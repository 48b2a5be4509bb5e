#include "boundres/verify.hpp"

#include "boundres/bounds.hpp"
#include "boundres/error.hpp"
#include "boundres/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace boundres::verify {

namespace {

unsigned resolve_threads(unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

// Runs fn(batch_index, batch_size) for every batch and returns the results in
// batch order, independent of scheduling.
template <class Result, class Fn>
std::vector<Result> run_batches(std::size_t n_samples, unsigned threads, Fn&& fn) {
    const std::size_t batches = (n_samples + kBatchSize - 1) / kBatchSize;
    std::vector<Result> out(batches);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= batches) return;
            const std::size_t size = std::min(kBatchSize, n_samples - b * kBatchSize);
            try {
                out[b] = fn(b, size);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = batches;
            }
        }
    };

    const unsigned n = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(batches, 1));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

} // namespace

SandwichResult sandwich_sweep(int d, int k, std::size_t n_samples, std::uint64_t seed,
                              unsigned threads) {
    if (d < 2 || k < 2) throw DomainError("sandwich sweep needs d >= 2 and k >= 2");
    if (n_samples < 1) throw DomainError("sandwich sweep needs at least one sample");

    const net::LayeredNetwork network = net::build_norm_nd(d, k, 0.0);
    struct Range {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
    };

    const auto ranges = run_batches<Range>(n_samples, threads, [&](std::size_t b, std::size_t size) {
        std::mt19937_64 gen = rng::substream(seed, b);
        std::normal_distribution<double> normal;
        std::vector<double> x(static_cast<std::size_t>(d));
        Range r;
        for (std::size_t i = 0; i < size; ++i) {
            double len = 0.0;
            do {
                for (double& v : x) v = normal(gen);
                len = norm(x);
            } while (len == 0.0);
            const double ratio = network.eval_scalar(x) / len;
            r.lo = std::min(r.lo, ratio);
            r.hi = std::max(r.hi, ratio);
        }
        return r;
    });

    SandwichResult res;
    res.samples = n_samples;
    res.seed = seed;
    res.lower_bound = std::pow(std::cos(net::fold_angle(k)), d - 1);
    res.min_ratio = std::numeric_limits<double>::infinity();
    res.max_ratio = -std::numeric_limits<double>::infinity();
    for (const Range& r : ranges) {
        res.min_ratio = std::min(res.min_ratio, r.lo);
        res.max_ratio = std::max(res.max_ratio, r.hi);
    }
    res.pass = res.min_ratio >= res.lower_bound - 1e-9 && res.max_ratio <= 1.0 + 1e-9;
    return res;
}

McVolumeResult mc_volume_excess(const net::LayeredNetwork& network, int k, std::size_t n_samples,
                                std::uint64_t seed, unsigned threads) {
    if (k < 2) throw DomainError("volume experiment needs k >= 2");
    if (n_samples < 10000) throw DomainError("volume experiment needs at least 10^4 samples");
    const std::size_t d = network.dim();
    if (d < 2) throw DomainError("volume experiment needs d >= 2");
    const std::vector<double> origin(d, 0.0);
    if (std::abs(network.eval_scalar(origin) + 1.0) > 1e-12)
        throw DomainError("volume experiment needs a network built with radius 1");

    const double radius = 1.0 / std::pow(std::cos(net::fold_angle(k)), static_cast<double>(d - 1));

    struct Counts {
        std::size_t hits = 0;
        std::size_t escaped = 0;
    };
    const auto counts = run_batches<Counts>(n_samples, threads, [&](std::size_t b, std::size_t size) {
        std::mt19937_64 gen = rng::substream(seed, b);
        std::normal_distribution<double> normal;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x(d);
        Counts c;
        for (std::size_t i = 0; i < size; ++i) {
            double len = 0.0;
            do {
                for (double& v : x) v = normal(gen);
                len = norm(x);
            } while (len == 0.0);
            const double r = radius * std::pow(unit(gen), 1.0 / static_cast<double>(d));
            for (double& v : x) v *= r / len;
            if (r <= 1.0) continue;
            if (network.eval_scalar(x) <= 0.0) {
                ++c.hits;
                if (r > radius) ++c.escaped;
            }
        }
        return c;
    });

    McVolumeResult res;
    res.samples = n_samples;
    res.seed = seed;
    res.radius = radius;
    for (const Counts& c : counts) {
        res.hits += c.hits;
        res.escaped += c.escaped;
    }
    if (res.escaped != 0) throw NumericError("sampled point inside P but outside the enclosing ball");

    const double scale = std::pow(radius, static_cast<double>(d));
    const double p = static_cast<double>(res.hits) / static_cast<double>(n_samples);
    res.estimate = p * scale;
    res.ci95 = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples)) * scale;
    return res;
}

double polygon_excess(std::size_t n) {
    const double nn = static_cast<double>(n);
    return nn * std::tan(std::numbers::pi / nn) / std::numbers::pi - 1.0;
}

std::size_t count_segments_2d(const net::LayeredNetwork& network) {
    if (network.dim() != 2) throw DomainError("segment count needs a two-input network");
    const int k = static_cast<int>(network.layer_count());
    if (k < 2) throw DomainError("segment count needs k >= 2");
    if (network.eval_scalar(std::vector<double>{0.0, 0.0}) >= 0.0)
        throw DomainError("segment count needs a network with positive radius");

    const std::size_t probes = std::size_t{1} << (k + 6);
    std::vector<std::vector<bool>> patterns;
    patterns.reserve(probes);

    for (std::size_t j = 0; j < probes; ++j) {
        // Half-step offset keeps probes off the vertex directions.
        const double t = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(probes);
        const double ux = std::cos(t), uy = std::sin(t);
        auto at = [&](double r) { return network.eval_scalar(std::vector<double>{r * ux, r * uy}); };

        double lo = 0.0, hi = 4.0;
        if (!(at(hi) > 0.0)) throw NumericError("boundary root not bracketed in (0, 4]");
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (at(mid) > 0.0 ? hi : lo) = mid;
        }
        const double r = 0.5 * (lo + hi);
        const net::Trace tr = network.trace(std::vector<double>{r * ux, r * uy});

        std::vector<bool> active;
        const auto layers = network.layers();
        for (std::size_t l = 0; l < layers.size(); ++l)
            for (std::size_t n = 0; n < layers[l].neurons.size(); ++n)
                if (layers[l].neurons[n].activation == net::Activation::relu) active.push_back(tr.pre[l][n] > 0.0);
        patterns.push_back(std::move(active));
    }

    // Count maximal circular runs of identical patterns.
    std::size_t start = 0;
    while (start < probes && patterns[start] == patterns[(start + probes - 1) % probes]) ++start;
    if (start == probes) return 1;

    std::size_t runs = 0;
    std::size_t len = 0;
    for (std::size_t i = 0; i < probes; ++i) {
        const std::size_t cur = (start + i) % probes;
        const std::size_t nxt = (cur + 1) % probes;
        ++len;
        if (patterns[cur] != patterns[nxt]) {
            if (len < 2) throw NumericError("segment sweep resolution too coarse");
            ++runs;
            len = 0;
        }
    }
    return runs;
}

Theorem11Result reproduce_theorem11(int d, double epsilon, std::size_t n_samples,
                                    std::uint64_t seed, unsigned threads) {
    if (d < 2 || d > 6) throw DomainError("theorem11 reproduction needs 2 <= d <= 6");
    const bounds::DeepNetSize size = bounds::deep_net_size(d, epsilon);
    const net::LayeredNetwork network = net::build_norm_nd(d, size.k_ceil, 1.0);

    Theorem11Result res;
    res.d = d;
    res.epsilon = epsilon;
    res.k_used = size.k_ceil;
    res.units = network.unit_count();
    res.layers = network.layer_count();
    res.mc = mc_volume_excess(network, size.k_ceil, n_samples, seed, threads);
    res.bound = size.error_bound;
    res.pass = res.mc.estimate - res.mc.ci95 <= epsilon;
    return res;
}

} // namespace boundres::verify
