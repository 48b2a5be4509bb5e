// boundres command-line front end.
//
//   boundres bounds  --dim D [--m M] [--epsilon E] [--constant C]
//   boundres build   --dim D --k K [--radius R] --out FILE
//   boundres verify  sandwich|volume|segments|theorem5|theorem11 [flags]
//   boundres cells   FILE.csv [--out CELLS.csv] [--tolerance T]
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or input error, 3 numeric error.

#include "boundres/arrangement.hpp"
#include "boundres/bounds.hpp"
#include "boundres/error.hpp"
#include "boundres/io.hpp"
#include "boundres/network.hpp"
#include "boundres/rng.hpp"
#include "boundres/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

using namespace boundres;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, numeric = 3 };

struct Config {
    std::optional<int> dim;
    std::optional<int> k;
    std::optional<int> m;
    std::optional<double> epsilon;
    double constant = bounds::kDefaultConstant;
    double radius = 1.0;
    std::size_t samples = 1000000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    std::string out;
    std::string format = "text";
    bool json = false;
    unsigned threads = 0;
    std::string experiment;
    std::string input;
};

struct Blank {};
using Value = std::variant<Blank, std::string, std::int64_t, double, bool>;

// Ordered key/value report, printed as text, one CSV row or a JSON object.
struct Report {
    std::string invocation;
    bool random = false;
    std::vector<std::pair<std::string, Value>> fields;

    void add(std::string key, Value v) { fields.emplace_back(std::move(key), std::move(v)); }
    void add(std::string key, const bounds::BigInt& v) {
        if (v <= std::numeric_limits<std::int64_t>::max())
            add(std::move(key), Value(v.convert_to<std::int64_t>()));
        else
            add(std::move(key), Value(v.str()));
    }
    template <class T>
    void add(std::string key, const std::optional<T>& v) {
        if (v)
            add(std::move(key), *v);
        else
            add(std::move(key), Value(Blank{}));
    }
    void add(std::string key, int v) { add(std::move(key), Value(static_cast<std::int64_t>(v))); }
    void add(std::string key, double v) { add(std::move(key), Value(v)); }
    void add(std::string key, std::int64_t v) { add(std::move(key), Value(v)); }
    void add(std::string key, std::uint64_t v) {
        if (v <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            add(std::move(key), Value(static_cast<std::int64_t>(v)));
        else
            add(std::move(key), Value(std::to_string(v)));
    }
    void add(std::string key, const char* v) { add(std::move(key), Value(std::string(v))); }
};

std::string text_of(const Value& v, bool exact) {
    struct {
        bool exact;
        std::string operator()(Blank) const { return ""; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(double d) const { return exact ? io::format_exact(d) : io::format_short(d); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    } visitor{exact};
    return std::visit(visitor, v);
}

nlohmann::json json_of(const Value& v) {
    struct {
        nlohmann::json operator()(Blank) const { return nullptr; }
        nlohmann::json operator()(const std::string& s) const { return s; }
        nlohmann::json operator()(std::int64_t i) const { return i; }
        nlohmann::json operator()(double d) const {
            if (!std::isfinite(d)) return io::format_exact(d);
            return d;
        }
        nlohmann::json operator()(bool b) const { return b; }
    } visitor;
    return std::visit(visitor, v);
}

void emit(const Report& r, const Config& cfg, std::ostream& os) {
    const std::string format = cfg.json ? "json" : cfg.format;
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["invocation"] = r.invocation;
        if (r.random) doc["rng"] = rng::kGeneratorName;
        for (const auto& [key, v] : r.fields) doc[key] = json_of(v);
        os << doc.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        os << "# " << r.invocation << '\n';
        if (r.random) os << "# rng: " << rng::kGeneratorName << '\n';
        for (std::size_t i = 0; i < r.fields.size(); ++i) os << (i ? "," : "") << r.fields[i].first;
        os << '\n';
        for (std::size_t i = 0; i < r.fields.size(); ++i) os << (i ? "," : "") << text_of(r.fields[i].second, true);
        os << '\n';
        return;
    }
    os << "# " << r.invocation << '\n';
    if (r.random) os << "# rng: " << rng::kGeneratorName << '\n';
    std::size_t width = 0;
    for (const auto& f : r.fields) width = std::max(width, f.first.size());
    for (const auto& [key, v] : r.fields) {
        const std::string s = text_of(v, false);
        if (s.empty()) continue;
        os << key << std::string(width + 2 - key.size(), ' ') << s << '\n';
    }
}

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& what) {
    if (!v) throw DomainError(what + " needs " + flag);
    return *v;
}

int cmd_bounds(const Config& cfg, Report& r) {
    const int d = need(cfg.dim, "--dim", "bounds");
    if (!cfg.m && !cfg.epsilon) throw DomainError("bounds needs --m and/or --epsilon");
    const auto rep = bounds::make_report(d, cfg.m, cfg.epsilon, cfg.constant);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';

    r.add("d", rep.d);
    r.add("m", rep.m);
    r.add("epsilon", rep.epsilon);
    r.add("constant", rep.constant);
    r.add("G", rep.regions);
    r.add("C", rep.cone_like);
    r.add("bounded_cells", rep.bounded_cells);
    r.add("facets_required", rep.facets_required);
    r.add("N_s", rep.shl ? std::optional(rep.shl->units) : std::nullopt);
    r.add("N_sp", rep.shl ? std::optional(rep.shl->parameters) : std::nullopt);
    r.add("k_star", rep.deep ? std::optional(rep.deep->k_star) : std::nullopt);
    r.add("k_ceil", rep.deep ? std::optional(rep.deep->k_ceil) : std::nullopt);
    r.add("N_d", rep.deep ? std::optional(rep.deep->units) : std::nullopt);
    r.add("depth", rep.deep ? std::optional(rep.deep->depth) : std::nullopt);
    r.add("error_bound", rep.deep ? std::optional(rep.deep->error_bound) : std::nullopt);
    r.add("ratio", rep.ratio);
    return ok;
}

int cmd_build(const Config& cfg, Report& r) {
    const int d = need(cfg.dim, "--dim", "build");
    const int k = need(cfg.k, "--k", "build");
    if (cfg.out.empty()) throw DomainError("build needs --out");
    const auto network = net::build_norm_nd(d, k, cfg.radius);
    io::save_network(cfg.out, network);
    r.add("d", d);
    r.add("k", k);
    r.add("radius", cfg.radius);
    r.add("units", network.unit_count());
    r.add("layers", network.layer_count());
    r.add("out", cfg.out.c_str());
    return ok;
}

struct Row {
    std::optional<int> d, k, m;
    std::optional<double> epsilon;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    Value estimate, ci95, bound;
    bool pass = false;
};

void add_row(Report& r, const std::string& experiment, const Row& row) {
    r.add("experiment", experiment.c_str());
    r.add("d", row.d);
    r.add("k", row.k);
    r.add("m", row.m);
    r.add("epsilon", row.epsilon);
    r.add("samples", row.samples);
    r.add("seed", row.seed);
    r.add("estimate", row.estimate);
    r.add("ci95", row.ci95);
    r.add("bound", row.bound);
    r.add("pass", Value(row.pass));
}

int cmd_verify(const Config& cfg, Report& r) {
    const std::string& e = cfg.experiment;
    const std::string what = "verify " + e;
    Row row;
    if (e == "sandwich") {
        const int d = need(cfg.dim, "--dim", what), k = need(cfg.k, "--k", what);
        r.random = true;
        const auto s = verify::sandwich_sweep(d, k, cfg.samples, cfg.seed, cfg.threads);
        row = {d, k, {}, {}, s.samples, s.seed, s.min_ratio, Blank{}, s.lower_bound, s.pass};
        add_row(r, e, row);
        r.add("max_ratio", Value(s.max_ratio));
    } else if (e == "volume") {
        const int d = cfg.dim.value_or(2), k = need(cfg.k, "--k", what);
        r.random = true;
        const auto network = net::build_norm_nd(d, k, 1.0);
        const auto v = verify::mc_volume_excess(network, k, cfg.samples, cfg.seed, cfg.threads);
        const double bound = bounds::error_bound(d, k);
        row = {d, k, {}, {}, v.samples, v.seed, v.estimate, v.ci95, bound, v.estimate - v.ci95 <= bound};
        add_row(r, e, row);
        r.add("radius", Value(v.radius));
        r.add("hits", v.hits);
    } else if (e == "segments") {
        if (cfg.dim && *cfg.dim != 2) throw DomainError("verify segments is two-dimensional");
        const int k = need(cfg.k, "--k", what);
        if (k < 2 || k > 16) throw DomainError("verify segments needs 2 <= k <= 16");
        const std::size_t segments = verify::count_segments_2d(net::build_norm2d(k, 1.0));
        const std::int64_t expected = std::int64_t{1} << k;
        row = {2, k, {}, {}, {}, {}, static_cast<std::int64_t>(segments), Blank{}, expected,
               static_cast<std::int64_t>(segments) == expected};
        add_row(r, e, row);
    } else if (e == "theorem5") {
        const int d = need(cfg.dim, "--dim", what), m = need(cfg.m, "--m", what);
        r.random = true;
        const auto t = arr::theorem5_experiment(d, m, cfg.seed);
        row = {d, {}, m, {}, {}, t.seed, static_cast<std::int64_t>(t.facets), Blank{},
               static_cast<std::int64_t>(t.upper), t.pass};
        add_row(r, e, row);
        r.add("lower", t.lower);
        r.add("attempts", t.attempts);
    } else if (e == "theorem11") {
        const int d = need(cfg.dim, "--dim", what);
        const double eps = need(cfg.epsilon, "--epsilon", what);
        r.random = true;
        const auto t = verify::reproduce_theorem11(d, eps, cfg.samples, cfg.seed, cfg.threads);
        row = {d, t.k_used, {}, eps, t.mc.samples, t.mc.seed, t.mc.estimate, t.mc.ci95, t.bound, t.pass};
        add_row(r, e, row);
        r.add("units", t.units);
        r.add("layers", t.layers);
    } else {
        throw DomainError("unknown experiment '" + e + "'");
    }
    return row.pass ? ok : failed;
}

int cmd_cells(const Config& cfg, Report& r) {
    const auto units = io::read_units_csv_file(cfg.input);
    arr::Options opts;
    opts.tolerance = cfg.tolerance;
    const auto cells = arr::enumerate_cells(units, opts);
    const auto counts = arr::classify_cells(cells, units, cfg.tolerance);
    const bool general = arr::is_general_position(units, cfg.tolerance);
    const int d = static_cast<int>(units.front().dim());
    const int m = static_cast<int>(units.size());
    const auto g = bounds::regions_max(d, m);

    if (cfg.out.empty()) {
        io::write_cells_csv(std::cout, cells);
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw Error("cannot write '" + cfg.out + "'");
        io::write_cells_csv(out, cells);
    }
    // Summary goes to stderr when the cells themselves are on stdout.
    std::ostream& os = cfg.out.empty() ? std::cerr : std::cout;
    os << cells.size() << '/' << g << (general ? " (general position)" : " (degenerate)") << '\n';
    r.add("d", d);
    r.add("m", m);
    r.add("cells", cells.size());
    r.add("bounded", counts.bounded);
    r.add("unbounded", counts.unbounded);
    r.add("G", g);
    r.add("general_position", Value(general));
    return ok;
}

std::string invocation(int argc, char** argv) {
    std::string s = "boundres";
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        s += ' ';
        s += a.find_first_of(" \t\"'") == std::string::npos ? a : "'" + a + "'";
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Region counts, norm networks and bound verification for rectifier classifiers"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
        sub->add_flag("--json", cfg.json, "Same as --format json");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
    };

    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form counts and unit bounds");
    bounds_cmd->add_option("--dim", cfg.dim, "Input dimension d")->required();
    bounds_cmd->add_option("--m", cfg.m, "Number of hidden units / hyperplanes");
    bounds_cmd->add_option("--epsilon", cfg.epsilon, "Target relative volume error");
    bounds_cmd->add_option("--constant", cfg.constant, "Constant in the facet bound")->capture_default_str();
    common(bounds_cmd);

    auto* build_cmd = app.add_subcommand("build", "Write a deep norm network as JSON");
    build_cmd->add_option("--dim", cfg.dim, "Input dimension d")->required();
    build_cmd->add_option("--k", cfg.k, "Folding depth k")->required();
    build_cmd->add_option("--radius", cfg.radius, "Ball radius")->capture_default_str();
    build_cmd->add_option("--out", cfg.out, "Output JSON path")->required();
    common(build_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Run one verification experiment");
    verify_cmd->add_option("experiment", cfg.experiment, "Experiment")
        ->required()
        ->check(CLI::IsMember({"sandwich", "volume", "segments", "theorem5", "theorem11"}));
    verify_cmd->add_option("--dim", cfg.dim, "Input dimension d");
    verify_cmd->add_option("--k", cfg.k, "Folding depth k");
    verify_cmd->add_option("--m", cfg.m, "Hidden units");
    verify_cmd->add_option("--epsilon", cfg.epsilon, "Target relative volume error");
    verify_cmd->add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
    verify_cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    common(verify_cmd);

    auto* cells_cmd = app.add_subcommand("cells", "Enumerate the cells of a hyperplane arrangement");
    cells_cmd->add_option("input", cfg.input, "Hyperplane CSV (w1..wd,b per row)")->required();
    cells_cmd->add_option("--out", cfg.out, "Cells CSV path (default stdout)");
    cells_cmd->add_option("--tolerance", cfg.tolerance, "Numerical tolerance")->capture_default_str();
    common(cells_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    Report report;
    report.invocation = invocation(argc, argv);
    try {
        int rc = ok;
        if (*bounds_cmd) rc = cmd_bounds(cfg, report);
        else if (*build_cmd) rc = cmd_build(cfg, report);
        else if (*verify_cmd) rc = cmd_verify(cfg, report);
        else if (*cells_cmd) rc = cmd_cells(cfg, report);
        if (!*cells_cmd || !cfg.out.empty()) emit(report, cfg, std::cout);
        return rc;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
}
