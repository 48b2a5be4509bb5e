#include <doctest.h>

#include "boundres/error.hpp"
#include "boundres/network.hpp"

#include <cmath>
#include <numbers>
#include <map>
#include <random>

using namespace boundres;
using namespace boundres::net;

namespace {

// Scalar angle-halving recursion using only abs, cos and sin.
double fold2(double x, double y, int k) {
    double f = std::abs(x), fbar = std::abs(y);
    for (int i = 2; i <= k; ++i) {
        const double t = std::numbers::pi / std::pow(2.0, i);
        const double nf = std::cos(t) * f + std::sin(t) * fbar;
        fbar = std::abs(-std::sin(t) * f + std::cos(t) * fbar);
        f = nf;
    }
    return f;
}

double fold_nd(std::span<const double> x, int k) {
    double g = fold2(x[0], x[1], k);
    for (std::size_t l = 2; l < x.size(); ++l) g = fold2(g, x[l], k);
    return g;
}

double norm(std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

} // namespace

TEST_CASE("build_norm2d structure") {
    const LayeredNetwork k2 = build_norm2d(2, 0);
    CHECK(k2.unit_count() == 5);
    CHECK(k2.layer_count() == 2);
    CHECK(k2.layers()[0].neurons.size() == 4);
    CHECK(k2.layers()[1].neurons.size() == 1);
    CHECK(k2.layers()[1].neurons[0].activation == Activation::linear);
    for (const auto& n : k2.layers()[0].neurons) CHECK(n.activation == Activation::relu);

    const LayeredNetwork k5 = build_norm2d(5, 1);
    CHECK(k5.unit_count() == 14);
    CHECK(k5.layer_count() == 5);
    for (std::size_t l = 1; l + 1 < k5.layer_count(); ++l) CHECK(k5.layers()[l].neurons.size() == 3);

    CHECK_THROWS_AS(build_norm2d(1, 0), DomainError);
    CHECK_THROWS_AS(build_norm2d(3, -1), DomainError);
}

TEST_CASE("build_norm2d values") {
    CHECK(build_norm2d(2, 0).eval_scalar(std::vector<double>{1, 1}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(build_norm2d(4, 0).eval_scalar(std::vector<double>{1, 0}) ==
          doctest::Approx(std::cos(std::numbers::pi / 16)));
}

TEST_CASE("build_norm_nd structure and values") {
    CHECK(build_norm_nd(2, 6, 0.5) == build_norm2d(6, 0.5));
    CHECK(build_norm_nd(3, 2, 0).unit_count() == 10);
    CHECK(build_norm_nd(3, 4, 0).eval_scalar(std::vector<double>{1, 0, 0}) ==
          doctest::Approx(std::pow(std::cos(std::numbers::pi / 16), 2)));
    CHECK_THROWS_AS(build_norm_nd(1, 4, 0), DomainError);
    CHECK_THROWS_AS(build_norm_nd(3, 1, 0), DomainError);

    for (int d = 2; d <= 8; ++d) {
        for (int k = 2; k <= 10; ++k) {
            const LayeredNetwork n = build_norm_nd(d, k, 1);
            CHECK(n.unit_count() == static_cast<std::size_t>((d - 1) * (3 * k - 1)));
            CHECK(n.layer_count() == static_cast<std::size_t>(k * (d - 1)));
        }
    }
}

TEST_CASE("skip connections read raw inputs") {
    const LayeredNetwork n = build_norm_nd(4, 3, 0);
    // Block 3 starts at layer 2k = 6 and reads x_4 directly.
    const auto& first = n.layers()[6].neurons;
    REQUIRE(first.size() == 4);
    CHECK(first[2].inputs.front().src == Source::input(3));
    CHECK(first[0].inputs.front().src == Source::neuron(5, 0));
}

TEST_CASE("eval_network examples") {
    CHECK(eval_network(build_norm2d(3, 1), std::vector<double>{0, 0}) == std::vector<double>{-1});
    const double t = std::numbers::pi / 32;
    CHECK(build_norm2d(5, 0).eval_scalar(std::vector<double>{std::cos(t), std::sin(t)}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const double c = std::cos(std::numbers::pi / 16);
    CHECK(build_norm_nd(4, 4, 0).eval_scalar(std::vector<double>{2, 0, 0, 0}) ==
          doctest::Approx(2 * c * c * c).epsilon(1e-12));
}

TEST_CASE("eval errors") {
    const LayeredNetwork n = build_norm2d(3, 1);
    CHECK_THROWS_AS(n.eval(std::vector<double>{1}), DomainError);
    CHECK_THROWS_AS(n.eval(std::vector<double>{1, NAN}), DomainError);

    // Overflow inside the network is reported with its location.
    const LayeredNetwork big(1, {Layer{{Neuron{Activation::relu, 0, {{Source::input(0), 1e308}}}}},
                                 Layer{{Neuron{Activation::linear, 0, {{Source::neuron(0, 0), 1e308}}}}}});
    CHECK_THROWS_WITH_AS(big.eval(std::vector<double>{1}), "non-finite value at layer 1, neuron 0",
                         NumericError);
}

TEST_CASE("network validation") {
    const Neuron bad_input{Activation::relu, 0, {{Source::input(3), 1}}};
    CHECK_THROWS_AS(LayeredNetwork(2, {Layer{{bad_input}}}), DomainError);
    const Neuron self_ref{Activation::relu, 0, {{Source::neuron(0, 0), 1}}};
    CHECK_THROWS_AS(LayeredNetwork(2, {Layer{{self_ref}}}), DomainError);
    const Neuron a{Activation::relu, 0, {{Source::input(0), 1}}};
    const Neuron out{Activation::linear, 0, {{Source::neuron(0, 0), 1}}};
    CHECK_THROWS_AS(LayeredNetwork(2, {Layer{{a, a}}, Layer{{out}}}), DomainError); // dead neuron
    CHECK_NOTHROW(LayeredNetwork(2, {Layer{{a}}, Layer{{out}}}));
}

TEST_CASE("classify_ball examples") {
    const LayeredNetwork n = build_norm_nd(3, 6, 1);
    CHECK(classify_ball(n, std::vector<double>{0, 0, 0}) == BallSide::inside);
    CHECK(classify_ball(n, std::vector<double>{1.1, 0, 0}) == BallSide::outside);
    CHECK(classify_ball(n, std::vector<double>{1, 0, 0}) == BallSide::inside);

    const Neuron a{Activation::linear, 0, {{Source::input(0), 1}}};
    CHECK_THROWS_AS(classify_ball(LayeredNetwork(1, {Layer{{a, a}}}), std::vector<double>{0}), DomainError);
}

TEST_CASE("network matches the scalar recursion") {
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<int> dd(2, 6), kk(2, 9);
    for (int t = 0; t < 100000; ++t) {
        const int d = dd(gen), k = kk(gen);
        std::vector<double> x(static_cast<std::size_t>(d));
        for (double& v : x) v = normal(gen);
        static thread_local std::map<std::pair<int, int>, LayeredNetwork> cache;
        auto it = cache.find({d, k});
        if (it == cache.end()) it = cache.emplace(std::pair{d, k}, build_norm_nd(d, k, 0)).first;
        const double got = it->second.eval_scalar(x);
        const double want = fold_nd(x, k);
        if (std::abs(got - want) > 1e-12) {
            FAIL_CHECK("mismatch at d=" << d << " k=" << k << ": " << got << " vs " << want);
        }
    }
}

TEST_CASE("homogeneity and symmetry") {
    std::mt19937_64 gen(77);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> alpha(0.01, 100);
    const LayeredNetwork n3 = build_norm_nd(3, 5, 0);
    const LayeredNetwork n2 = build_norm2d(6, 0);
    std::size_t failures = 0;
    for (int t = 0; t < 10000; ++t) {
        std::vector<double> x{normal(gen), normal(gen), normal(gen)};
        const double a = alpha(gen);
        const double fx = n3.eval_scalar(x);
        std::vector<double> ax(x);
        for (double& v : ax) v *= a;
        if (std::abs(n3.eval_scalar(ax) - a * fx) > 1e-12 * std::max(1.0, a * fx)) ++failures;

        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<double> flipped(x);
            flipped[i] = -flipped[i];
            if (std::abs(n3.eval_scalar(flipped) - fx) > 1e-12) ++failures;
        }

        const double p = n2.eval_scalar(std::vector<double>{x[0], x[1]});
        const double q = n2.eval_scalar(std::vector<double>{x[1], x[0]});
        if (std::abs(p - q) > 1e-12) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("sandwich bounds on random points") {
    std::mt19937_64 gen(8);
    std::normal_distribution<double> normal;
    for (int d = 2; d <= 5; ++d) {
        for (int k = 2; k <= 8; ++k) {
            const LayeredNetwork n = build_norm_nd(d, k, 0);
            const double lower = std::pow(std::cos(fold_angle(k)), d - 1);
            std::vector<double> x(static_cast<std::size_t>(d));
            for (int t = 0; t < 2000; ++t) {
                for (double& v : x) v = normal(gen);
                const double r = n.eval_scalar(x) / norm(x);
                CHECK(r >= lower - 1e-9);
                CHECK(r <= 1 + 1e-9);
            }
        }
    }
}
