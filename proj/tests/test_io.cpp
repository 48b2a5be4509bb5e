#include <doctest.h>

#include "boundres/arrangement.hpp"
#include "boundres/error.hpp"
#include "boundres/io.hpp"
#include "boundres/network.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

using namespace boundres;

TEST_CASE("unit CSV parsing") {
    std::istringstream in("# three lines\n1,0,0\n\n 0, 1 ,-0.5\n1,1,+1e-1\r\n");
    const auto units = io::read_units_csv(in);
    REQUIRE(units.size() == 3);
    CHECK(units[1].weights()[1] == 1.0);
    CHECK(units[1].bias() == -0.5);
    CHECK(units[2].bias() == 0.1);
}

TEST_CASE("unit CSV errors carry the row") {
    auto row_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            io::read_units_csv(in);
        } catch (const ParseError& e) {
            return e.row();
        }
        return std::size_t{999};
    };
    CHECK(row_of("1,0,0\n# c\n1,x,0\n") == 3);
    CHECK(row_of("1,0,0\n1,0\n") == 2);
    CHECK(row_of("1,0,0\n1,0,0,0\n") == 2);
    CHECK(row_of("5\n") == 1);
    CHECK(row_of("1,,0\n") == 1);
    CHECK(row_of("1,nan,0\n") == 1);
    CHECK(row_of("1,inf,0\n") == 1);

    std::istringstream empty("# nothing\n\n");
    CHECK_THROWS_WITH_AS(io::read_units_csv(empty), "no units in input", ParseError);
    CHECK_THROWS_AS(io::read_units_csv_file("/nonexistent/units.csv"), ParseError);
}

TEST_CASE("unit CSV round trip") {
    std::vector<AffineUnit> units{{{0.1, -1.0 / 3}, 2.5e-300}, {{std::nextafter(1.0, 2.0), 0.0}, -7}};
    std::ostringstream out;
    io::write_units_csv(out, units);
    std::istringstream in(out.str());
    CHECK(io::read_units_csv(in) == units);
}

TEST_CASE("cells CSV layout") {
    const std::vector<AffineUnit> lines{{{1, 0}, 0}, {{0, 1}, 0}};
    const auto cells = arr::enumerate_cells(lines);
    std::ostringstream out;
    io::write_cells_csv(out, cells);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "s1,s2,x1,x2,bounded");
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        CHECK(line.back() == '0');
        CHECK((line.rfind("1,", 0) == 0 || line.rfind("-1,", 0) == 0));
    }
    CHECK(rows == 4);
}

TEST_CASE("network JSON round trip is exact") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> normal;
    for (auto [d, k] : {std::pair{2, 5}, {3, 5}, {4, 3}}) {
        const auto net = net::build_norm_nd(d, k, 1.0 / 3);
        const auto back = io::network_from_json(io::network_to_json(net));
        CHECK(back == net);
        std::vector<double> x(static_cast<std::size_t>(d));
        for (int i = 0; i < 100; ++i) {
            for (double& v : x) v = normal(gen) * 3;
            const double a = net.eval_scalar(x), b = back.eval_scalar(x);
            CHECK(std::memcmp(&a, &b, sizeof a) == 0);
        }
    }
}

TEST_CASE("network file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "boundres_io_test.json";
    const auto net = net::build_norm_nd(3, 4, 1.0);
    io::save_network(path.string(), net);
    CHECK(io::load_network(path.string()) == net);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(io::load_network(path.string()), ParseError);
}

TEST_CASE("bad network JSON") {
    CHECK_THROWS_AS(io::network_from_json("{"), ParseError);
    CHECK_THROWS_AS(io::network_from_json(R"({"dim":2})"), ParseError);
    CHECK_THROWS_AS(
        io::network_from_json(
            R"({"dim":1,"layers":[{"neurons":[{"activation":"tanh","bias":0,"inputs":[]}]}]})"),
        ParseError);
    CHECK_THROWS_AS(
        io::network_from_json(
            R"({"dim":1,"layers":[{"neurons":[{"activation":"linear","bias":0,"inputs":[{"src":{"kind":"wire","index":0},"w":1}]}]}]})"),
        ParseError);
    // Structurally valid JSON, invalid network.
    CHECK_THROWS_AS(
        io::network_from_json(
            R"({"dim":1,"layers":[{"neurons":[{"activation":"linear","bias":0,"inputs":[{"src":{"kind":"input","index":3},"w":1}]}]}]})"),
        DomainError);
}

TEST_CASE("number formatting") {
    CHECK(io::format_short(104.7021) == "104.702");
    CHECK(io::format_exact(0.1) == "0.10000000000000001");
    CHECK(std::stod(io::format_exact(1.0 / 3)) == 1.0 / 3);
}
