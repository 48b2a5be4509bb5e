#include <doctest.h>

#include "boundres/lp.hpp"

#include <random>

using namespace boundres::lp;

TEST_CASE("box-constrained maximum") {
    LinearProgram p(2);
    p.set_objective(std::vector<double>{1, 1});
    p.add_le(std::vector<double>{1, 0}, 1);
    p.add_le(std::vector<double>{0, 1}, 2);
    const Result r = p.maximize();
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == doctest::Approx(3));
    CHECK(r.x[0] == doctest::Approx(1));
    CHECK(r.x[1] == doctest::Approx(2));
}

TEST_CASE("free variables reach negative optima") {
    // max -x  s.t. x >= 3  ->  -3
    LinearProgram p(1);
    p.set_objective(std::vector<double>{-1});
    p.add_ge(std::vector<double>{1}, 3);
    const Result r = p.maximize();
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == doctest::Approx(-3));
}

TEST_CASE("unbounded and infeasible") {
    LinearProgram u(2);
    u.set_objective(std::vector<double>{1, 0});
    u.add_le(std::vector<double>{0, 1}, 1);
    CHECK(u.maximize().status == Status::unbounded);

    LinearProgram inf(1);
    inf.add_le(std::vector<double>{1}, -1);
    inf.add_ge(std::vector<double>{1}, 1);
    CHECK(inf.maximize().status == Status::infeasible);
}

TEST_CASE("equality constraints") {
    // max x + 2y  s.t. x + y = 1, x >= 0, y >= 0
    LinearProgram p(2);
    p.set_objective(std::vector<double>{1, 2});
    p.add_eq(std::vector<double>{1, 1}, 1);
    p.add_ge(std::vector<double>{1, 0}, 0);
    p.add_ge(std::vector<double>{0, 1}, 0);
    const Result r = p.maximize();
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == doctest::Approx(2));
    CHECK(r.x[1] == doctest::Approx(1));
}

TEST_CASE("random polytope optimum matches vertex enumeration") {
    // 2D: optimum of a linear objective over a bounded polygon is attained
    // at a pairwise intersection of constraint lines.
    std::mt19937_64 gen(5);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::array<double, 3>> rows;
        for (int i = 0; i < 8; ++i) rows.push_back({n(gen), n(gen), 1.0 + std::abs(n(gen))});
        rows.push_back({1, 0, 5});
        rows.push_back({-1, 0, 5});
        rows.push_back({0, 1, 5});
        rows.push_back({0, -1, 5});
        const double c0 = n(gen), c1 = n(gen);

        LinearProgram p(2);
        p.set_objective(std::vector<double>{c0, c1});
        for (auto& r : rows) p.add_le(std::vector<double>{r[0], r[1]}, r[2]);
        const Result res = p.maximize();
        REQUIRE(res.status == Status::optimal);

        double best = -1e300;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
                if (std::abs(det) < 1e-12) continue;
                const double x = (rows[i][2] * rows[j][1] - rows[i][1] * rows[j][2]) / det;
                const double y = (rows[i][0] * rows[j][2] - rows[i][2] * rows[j][0]) / det;
                bool ok = true;
                for (auto& r : rows) ok = ok && r[0] * x + r[1] * y <= r[2] + 1e-9;
                if (ok) best = std::max(best, c0 * x + c1 * y);
            }
        }
        CHECK(res.value == doctest::Approx(best).epsilon(1e-9));
    }
}
