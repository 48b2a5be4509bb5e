#include "boundres/io.hpp"

#include "boundres/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace boundres::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view field, std::size_t row) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
        throw ParseError("not a number: '" + std::string(field) + "'", row);
    if (!std::isfinite(v)) throw ParseError("non-finite value", row);
    return v;
}

} // namespace

std::vector<AffineUnit> read_units_csv(std::istream& in) {
    std::vector<AffineUnit> units;
    std::string line;
    std::size_t row = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;

        std::vector<double> values;
        std::size_t pos = 0;
        for (;;) {
            const std::size_t comma = view.find(',', pos);
            values.push_back(parse_double(view.substr(pos, comma - pos), row));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (values.size() < 2) throw ParseError("need at least one weight and a bias", row);
        if (width == 0) width = values.size();
        if (values.size() != width)
            throw ParseError("expected " + std::to_string(width) + " columns, got " +
                                 std::to_string(values.size()),
                             row);
        const double bias = values.back();
        values.pop_back();
        units.emplace_back(std::move(values), bias);
    }
    if (units.empty()) throw ParseError("no units in input");
    return units;
}

std::vector<AffineUnit> read_units_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_units_csv(in);
}

void write_units_csv(std::ostream& out, std::span<const AffineUnit> units) {
    for (const auto& u : units) {
        for (double w : u.weights()) out << format_exact(w) << ',';
        out << format_exact(u.bias()) << '\n';
    }
}

void write_cells_csv(std::ostream& out, std::span<const arr::Cell> cells) {
    if (cells.empty()) return;
    const std::size_t m = cells.front().signs.size();
    const std::size_t d = cells.front().witness.size();
    for (std::size_t i = 0; i < m; ++i) out << 's' << i + 1 << ',';
    for (std::size_t j = 0; j < d; ++j) out << 'x' << j + 1 << ',';
    out << "bounded\n";
    for (const auto& c : cells) {
        for (int s : c.signs) out << (s > 0 ? "1" : "-1") << ',';
        for (double x : c.witness) out << format_exact(x) << ',';
        out << (c.bounded ? 1 : 0) << '\n';
    }
}

std::string network_to_json(const net::LayeredNetwork& network) {
    using nlohmann::json;
    json layers = json::array();
    for (const auto& layer : network.layers()) {
        json neurons = json::array();
        for (const auto& n : layer.neurons) {
            json inputs = json::array();
            for (const auto& c : n.inputs) {
                json src;
                if (c.src.kind == net::Source::Kind::input) {
                    src = {{"kind", "input"}, {"index", c.src.index}};
                } else {
                    src = {{"kind", "layer"}, {"layer", c.src.layer}, {"index", c.src.index}};
                }
                inputs.push_back({{"src", src}, {"w", c.weight}});
            }
            neurons.push_back({{"activation", n.activation == net::Activation::relu ? "relu" : "linear"},
                               {"bias", n.bias},
                               {"inputs", inputs}});
        }
        layers.push_back({{"neurons", neurons}});
    }
    const json doc = {{"dim", network.dim()}, {"layers", layers}};
    return doc.dump(1) + "\n";
}

net::LayeredNetwork network_from_json(const std::string& text) {
    using nlohmann::json;
    try {
        const json doc = json::parse(text);
        std::vector<net::Layer> layers;
        for (const auto& jl : doc.at("layers")) {
            net::Layer layer;
            for (const auto& jn : jl.at("neurons")) {
                net::Neuron n;
                const std::string act = jn.at("activation").get<std::string>();
                if (act == "relu")
                    n.activation = net::Activation::relu;
                else if (act == "linear")
                    n.activation = net::Activation::linear;
                else
                    throw ParseError("unknown activation '" + act + "'");
                n.bias = jn.at("bias").get<double>();
                for (const auto& ji : jn.at("inputs")) {
                    const auto& src = ji.at("src");
                    const std::string kind = src.at("kind").get<std::string>();
                    net::Connection c;
                    if (kind == "input") {
                        c.src = net::Source::input(src.at("index").get<std::size_t>());
                    } else if (kind == "layer") {
                        c.src = net::Source::neuron(src.at("layer").get<std::size_t>(),
                                                    src.at("index").get<std::size_t>());
                    } else {
                        throw ParseError("unknown source kind '" + kind + "'");
                    }
                    c.weight = ji.at("w").get<double>();
                    n.inputs.push_back(c);
                }
                layer.neurons.push_back(std::move(n));
            }
            layers.push_back(std::move(layer));
        }
        return net::LayeredNetwork(doc.at("dim").get<std::size_t>(), std::move(layers));
    } catch (const json::exception& e) {
        throw ParseError(std::string("network JSON: ") + e.what());
    }
}

void save_network(const std::string& path, const net::LayeredNetwork& network) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << network_to_json(network);
    if (!out) throw Error("write failed for '" + path + "'");
}

net::LayeredNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return network_from_json(ss.str());
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace boundres::io
