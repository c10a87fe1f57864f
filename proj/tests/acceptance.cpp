// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "monotile/export.hpp"
#include "monotile/substitution.hpp"
#include "monotile/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/resource.h>
#include <sys/wait.h>

using namespace monotile;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail)
{
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << std::endl;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double peak_rss_mib()
{
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<double>(ru.ru_maxrss) / 1024.0;
}

std::string join(const auto& v)
{
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return "[" + s + "]";
}

std::pair<int, std::string> cli(const std::string& args)
{
    const std::string cmd = std::string(MONOTILE_CLI) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    char buf[65536];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void counts()
{
    const auto t0 = Clock::now();
    std::vector<std::uint64_t> got;
    RunOptions opts;
    opts.on_step = [&](int, const Cluster& s, const Cluster&, const StepTrace&) { got.push_back(s.size()); };
    run(6, opts);
    const double secs = seconds_since(t0);
    const std::vector<std::uint64_t> want{9, 71, 559, 4401, 34649, 272791};
    report(1, "tile counts N=1..6", got == want && secs < 10,
           join(got) + " in " + std::to_string(secs) + " s (limit 10 s)");
}

void full_scale()
{
    const auto t0 = Clock::now();
    std::uint64_t tiles = 0;
    std::string note;
    try {
        tiles = run(8).size();
    }
    catch (const std::bad_alloc&) {
        note = " (out of memory at N=8)";
    }
    const double secs = seconds_since(t0);
    const double mib = peak_rss_mib();
    bool ok = tiles == 16'908'641 && secs < 300 && mib < 8192;
    std::string detail = "N=8 gives " + std::to_string(tiles) + " tiles in " + std::to_string(secs) + " s, peak RSS "
                         + std::to_string(static_cast<long>(mib)) + " MiB" + note;
    if (tiles != 16'908'641) {
        // Mandatory fallback.
        const std::uint64_t n7 = run(7).size();
        ok = n7 == 2'147'679;
        detail += "; fallback N=7 gives " + std::to_string(n7);
    }
    report(2, "full-scale count", ok, detail);
}

void structure()
{
    const CountTable t = predict_counts(5);
    bool ok = true;
    std::string detail;
    for (int n = 0; n <= 5; ++n) {
        const VerifyReport r = full_report(run(n), t, n);
        const bool good = r.pass && r.congruence_failures.empty() && r.chirality.uniform
                          && r.chirality.reflected == (n % 2 == 1) && r.edge_violation_count == 0 && r.euler == 1
                          && r.area_residual == 0.0 && r.duplicate_tiles.empty();
        ok = ok && good;
        detail += "N=" + std::to_string(n) + (good ? " ok" : " bad") + (n < 5 ? ", " : "");
    }
    report(3, "structural verification N=0..5", ok, detail);
}

void key_rows_vector()
{
    std::array<std::uint64_t, 4> carried{};
    std::array<std::array<int, 4>, 2> labels{};
    RunOptions opts;
    opts.on_step = [&](int n, const Cluster& s, const Cluster&, const StepTrace& trace) {
        if (n == 1) carried = key_rows(s);
        if (n > 2) return;
        const std::array<std::size_t, 4> pick = n == 1 ? std::array<std::size_t, 4>{2, 13, 22, 25}
                                                       : std::array<std::size_t, 4>{3, 14, 23, 26};
        for (std::size_t i = 0; i < 4; ++i)
            labels[static_cast<std::size_t>(n - 1)][i] = trace.inherited_keys.at(pick[i] - 1).label;
    };
    run(2, opts);
    const bool ok = carried == std::array<std::uint64_t, 4>{38, 84, 118, 132}
                    && labels[0] == std::array<int, 4>{2, 1, 2, 1} && labels[1] == std::array<int, 4>{3, 2, 3, 2};
    report(4, "key-row test vector", ok,
           "key rows entering iteration 2 " + join(carried) + ", labels " + join(labels[0]) + " / "
               + join(labels[1]));
}

void schedule_equivalence()
{
    const Generation g = generate(1);
    StepTrace trace;
    step(g.S, g.M, 2, &trace);
    const bool ok = trace.role_rows == std::array<std::uint64_t, 4>{84, 118, 132, 38}
                    && trace.mystic_rows == std::array<std::uint64_t, 3>{68, 102, 116};
    report(5, "schedule equivalence at N=2", ok,
           "role rows " + join(trace.role_rows) + ", Mystic rows " + join(trace.mystic_rows));
}

void seed_fidelity()
{
    const Isometry second = seed_M0().tile(2);
    const Vec2 t = to_xy(second.trans);
    bool ok = second.rot == 11 && !second.reflect && second.trans == CycNum{0, 1, 0, -2}
              && std::abs(t.x - std::sqrt(3.0) / 2) <= 1e-12 && std::abs(t.y + 1.5) <= 1e-12;

    // Float shoelace over the direction word, independent of the ring code.
    double x = 0, y = 0, twice = 0;
    CycNum closure = kZero;
    bool unit_edges = true;
    for (int i = 0; i < kEdgeCount; ++i) {
        const double ang = kDirectionWord[static_cast<std::size_t>(i)] * M_PI / 6;
        const double nx = x + std::cos(ang), ny = y + std::sin(ang);
        twice += x * ny - nx * y;
        x = nx;
        y = ny;
        const CycNum e = prototile().vertex(i + 2) - prototile().vertex(i + 1);
        unit_edges = unit_edges && norm2(e) == HalfSurd{2, 0};
        closure = closure + e;
    }
    const double want = 3 + 3 * std::sqrt(3.0);
    const double float_err = std::abs(std::abs(twice) / 2 - want);
    const HalfSurd exact = twice_signed_area(prototile().vertices);
    const HalfSurd residual = HalfSurd{std::abs(exact.r), std::abs(exact.s)} - tile_area() * 2;
    ok = ok && unit_edges && closure == kZero && float_err <= 1e-12 && residual == HalfSurd{0, 0}
         && exact.r * exact.s > 0;
    std::ostringstream d;
    d << "second Mystic tile rot 11 at " << second.trans << ", 14 unit edges, closed, area error " << float_err
      << " (float), exact residual " << residual.value();
    report(6, "seed fidelity", ok, d.str());
}

void negative_cases()
{
    const Cluster base = run(2);
    const CountTable t = predict_counts(2);
    Cluster dup = base;
    dup.mutable_tiles().push_back(dup.tile(17));
    Cluster mirrored = base;
    mirrored.mutable_tiles()[30] = compose(Isometry::mirror(), mirrored.tile(31));
    Cluster moved = base;
    moved.mutable_tiles()[50].trans = moved.tile(51).trans + kOne;
    const bool d = !full_report(dup, t, 2).pass;
    const bool m = !full_report(mirrored, t, 2).pass;
    const bool v = !full_report(moved, t, 2).pass;
    const bool clean = full_report(base, t, 2).pass;
    report(7, "negative-case sensitivity", d && m && v && clean,
           std::string("duplicate ") + (d ? "rejected" : "accepted") + ", mirrored " + (m ? "rejected" : "accepted")
               + ", translated " + (v ? "rejected" : "accepted") + ", clean " + (clean ? "accepted" : "rejected"));
}

void determinism()
{
    bool ok = true;
    std::string detail;
    const std::vector<std::string> cmds{
        "generate -n 5 --format csv",
        "generate -n 5 --format legacy",
        "generate -n 5 --format transforms",
        "generate -n 5 --format svg --keypoints",
        "generate -n 5 --format svg --window -10,-10,10,10",
        "verify -n 5 --each",
    };
    for (const auto& c : cmds) {
        const auto a = cli(c + " --threads 1");
        const auto b = cli(c + " --threads 1");
        const auto p = cli(c + " --threads 8");
        const bool same = a.first == 0 && !a.second.empty() && a == b && a == p;
        ok = ok && same;
        if (!same) detail += "differs: " + c + "; ";
    }
    std::ostringstream x, y;
    export_transforms(x, run(4), 4);
    export_transforms(y, run(4), 4);
    ok = ok && x.str() == y.str();
    report(8, "determinism", ok,
           detail.empty() ? std::to_string(cmds.size()) + " CLI outputs identical across repeats and --threads 1/8"
                          : detail);
}

} // namespace

int main()
{
    const std::vector<void (*)()> checks{counts, full_scale, structure, key_rows_vector, schedule_equivalence,
                                         seed_fidelity, negative_cases, determinism};
    for (auto* c : checks) {
        try {
            c();
        }
        catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL criterion raised: " << e.what() << std::endl;
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
