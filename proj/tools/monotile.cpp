// monotile: generate, verify and inspect Tile(1,1) substitution tilings.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid arguments,
// 3 resource guard hit, 4 internal invariant failure.

#include "monotile/export.hpp"
#include "monotile/substitution.hpp"
#include "monotile/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using namespace monotile;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;
constexpr int kExitInternal = 4;

// Size of generation 7, the largest run allowed without --allow-huge.
constexpr std::uint64_t kDefaultTileGuard = 2'147'679;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    int iterations = -1;
    std::string format = "csv";
    std::string output = "-";
    std::string window;
    bool keypoints = false;
    bool legacy_rows = false;
    bool allow_huge = false;
    unsigned threads = 1;
    bool predict_only = false;
    std::string checks = "all";
    bool each = false;
    int precision = 17;
    double stroke_width = 0.05;
};

std::uint64_t tile_guard(const Config& cfg)
{
    return cfg.allow_huge ? std::numeric_limits<std::uint64_t>::max() : kDefaultTileGuard;
}

void require_iterations(const Config& cfg)
{
    if (cfg.iterations < 0) throw UsageError("--iterations must be a non-negative integer");
    if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
}

Window parse_window(const std::string& text)
{
    std::vector<double> v;
    std::istringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        }
        catch (const std::exception&) {
            throw UsageError("--window expects X0,Y0,X1,Y1, got '" + text + "'");
        }
    }
    if (v.size() != 4) throw UsageError("--window expects X0,Y0,X1,Y1, got '" + text + "'");
    try {
        return Window::from_corners(v[0], v[1], v[2], v[3]);
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Opens the output stream ("-" is stdout).
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void finish()
    {
        stream().flush();
        if (!stream()) throw std::runtime_error("write to output failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

int cmd_generate(const Config& cfg)
{
    require_iterations(cfg);
    std::string format = cfg.legacy_rows ? "legacy" : cfg.format;
    if (format != "csv" && format != "legacy" && format != "transforms" && format != "svg")
        throw UsageError("unknown format '" + format + "'");

    RenderOptions opts;
    opts.threads = cfg.threads;
    opts.precision = cfg.precision;
    opts.stroke_width = cfg.stroke_width;
    opts.show_keypoints = cfg.keypoints;
    opts.max_tiles = tile_guard(cfg);
    if (!cfg.window.empty()) opts.window = parse_window(cfg.window);
    if (cfg.precision < 1 || cfg.precision > 17) throw UsageError("--precision must be in 1..17");
    if (!(cfg.stroke_width > 0)) throw UsageError("--stroke-width must be positive");

    RunOptions run_opts;
    run_opts.max_tiles = tile_guard(cfg);
    if (cfg.keypoints) {
        run_opts.on_step = [&](int n, const Cluster& s, const Cluster&, const StepTrace& trace) {
            if (n != cfg.iterations) return;
            opts.candidate_keys.clear();
            for (const auto& a : trace.inherited_keys)
                opts.candidate_keys.push_back(tile_vertex(s, a.tile_ordinal, a.vertex_index));
        };
    }
    const Cluster s = run(cfg.iterations, run_opts);

    Output out(cfg.output);
    if (format == "csv") export_csv(out.stream(), s, opts);
    else if (format == "legacy") export_legacy_rows(out.stream(), s, opts);
    else if (format == "transforms") export_transforms(out.stream(), s, cfg.iterations);
    else render_svg(out.stream(), s, opts);
    out.finish();
    return kExitOk;
}

int cmd_verify(const Config& cfg)
{
    require_iterations(cfg);
    CheckSelection checks;
    try {
        checks = CheckSelection::parse(cfg.checks);
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    VerifyOptions vopts;
    vopts.threads = cfg.threads;
    const CountTable counts = predict_counts(cfg.iterations);

    nlohmann::ordered_json doc;
    doc["iterations"] = cfg.iterations;
    nlohmann::ordered_json key_rows = nlohmann::ordered_json::array();
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    bool pass = true;

    const auto record = [&](int n, const Cluster& s) {
        key_rows.push_back({{"iteration", n}, {"key_rows", monotile::key_rows(s)}});
        if (cfg.each || n == cfg.iterations) {
            const VerifyReport r = full_report(s, counts, n, checks, vopts);
            pass = pass && r.pass;
            reports.push_back(to_json(r));
        }
    };

    RunOptions run_opts;
    run_opts.max_tiles = tile_guard(cfg);
    run_opts.on_step = [&](int n, const Cluster& s, const Cluster&, const StepTrace&) { record(n, s); };
    const auto seed = seed_S0();
    if (counts.nS.back() > run_opts.max_tiles) throw ResourceLimitError(counts.nS.back(), run_opts.max_tiles);
    record(0, seed);
    run(cfg.iterations, run_opts);

    doc["pass"] = pass;
    doc["key_rows_by_iteration"] = key_rows;
    doc["reports"] = reports;

    Output out(cfg.output);
    out.stream() << doc.dump(2) << '\n';
    out.finish();
    return pass ? kExitOk : kExitCheckFailed;
}

std::string join(const std::vector<std::uint64_t>& v, std::size_t from)
{
    std::string s;
    for (std::size_t i = from; i < v.size(); ++i) s += (i > from ? " " : "") + std::to_string(v[i]);
    return s;
}

int cmd_stats(const Config& cfg)
{
    require_iterations(cfg);
    const CountTable counts = predict_counts(cfg.iterations);
    auto& os = std::cout;
    os << "predicted nS (N = 1.." << cfg.iterations << "): " << join(counts.nS, 1) << '\n';
    os << "predicted nM (N = 1.." << cfg.iterations << "): " << join(counts.nM, 1) << '\n';
    if (cfg.predict_only) return kExitOk;

    std::vector<std::uint64_t> actual{1};
    RunOptions run_opts;
    run_opts.max_tiles = tile_guard(cfg);
    run_opts.on_step = [&](int n, const Cluster& s, const Cluster&, const StepTrace&) {
        actual.push_back(s.size());
        os << "iteration " << n << " has " << s.size() << " tiles\n";
    };
    const Cluster s = run(cfg.iterations, run_opts);

    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool first = true;
    for (const auto& t : s.tiles())
        for (const auto& v : tile_vertices(t)) {
            const Vec2 p = to_xy(v);
            if (first) {
                x0 = x1 = p.x;
                y0 = y1 = p.y;
                first = false;
            }
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    os << "actual nS (N = 1.." << cfg.iterations << "): " << join(actual, 1) << '\n';
    os << "bounding box: " << format_double(x0) << ',' << format_double(y0) << ',' << format_double(x1) << ','
       << format_double(y1) << '\n';
    const bool match = actual == counts.nS;
    os << (match ? "counts match the recurrence\n" : "COUNT MISMATCH\n");
    return match ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generate and verify Tile(1,1) substitution tilings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "monotile 1.0.0");

    Config cfg;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("-n,--iterations", cfg.iterations, "Substitution iterations (>= 0)")->required();
        sub->add_flag("--allow-huge", cfg.allow_huge, "Lift the default tile guard (iteration 7 size)");
        sub->add_option("--threads", cfg.threads, "Worker threads for verification and export");
    };

    auto* gen = app.add_subcommand("generate", "Generate a tiling and write it out");
    add_common(gen);
    gen->add_option("--format", cfg.format, "csv | legacy | transforms | svg");
    gen->add_option("-o,--output", cfg.output, "Output path, '-' for stdout");
    gen->add_option("--window", cfg.window, "Render window X0,Y0,X1,Y1 (svg)");
    gen->add_flag("--keypoints", cfg.keypoints, "Overlay key points (svg)");
    gen->add_flag("--legacy-rows", cfg.legacy_rows, "Same as --format legacy");
    gen->add_option("--precision", cfg.precision, "Significant digits for floats");
    gen->add_option("--stroke-width", cfg.stroke_width, "SVG stroke width in plane units");

    auto* ver = app.add_subcommand("verify", "Generate and structurally verify a tiling");
    add_common(ver);
    ver->add_option("--checks", cfg.checks, "Comma list: congruence,chirality,edges,euler,area,duplicates,count,all");
    ver->add_flag("--each", cfg.each, "Verify every iteration, not just the last");
    ver->add_option("-o,--output", cfg.output, "Report path, '-' for stdout");

    auto* stats = app.add_subcommand("stats", "Print predicted and actual tile counts");
    add_common(stats);
    stats->add_flag("--predict-only", cfg.predict_only, "Only evaluate the count recurrence");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(cfg);
        if (ver->parsed()) return cmd_verify(cfg);
        return cmd_stats(cfg);
    }
    catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGuard;
    }
    catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
