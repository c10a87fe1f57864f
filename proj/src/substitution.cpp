#include "monotile/substitution.hpp"

#include <algorithm>
#include <string>

namespace monotile {

ResourceLimitError::ResourceLimitError(std::uint64_t required_tiles, std::uint64_t limit_tiles)
    : std::runtime_error("generation needs " + std::to_string(required_tiles)
                         + " tiles, above the limit of " + std::to_string(limit_tiles)
                         + " (pass --allow-huge to lift it)"),
      required(required_tiles),
      limit(limit_tiles)
{
}

ResourceLimitError::ResourceLimitError(const std::string& what, std::uint64_t required_tiles,
                                       std::uint64_t limit_tiles)
    : std::runtime_error(what), required(required_tiles), limit(limit_tiles)
{
}

CountTable predict_counts(int max_n)
{
    if (max_n < 0) throw std::invalid_argument("iteration count must be non-negative");
    CountTable t;
    t.nS.push_back(1);
    t.nM.push_back(2);
    for (int n = 1; n <= max_n; ++n) {
        const auto s = static_cast<std::int64_t>(t.nS.back());
        const auto m = static_cast<std::int64_t>(t.nM.back());
        t.nS.push_back(static_cast<std::uint64_t>(checked::add(m, checked::mul(7, s))));
        t.nM.push_back(static_cast<std::uint64_t>(checked::add(m, checked::mul(6, s))));
    }
    return t;
}

IterationSchedule schedule(int n)
{
    if (n < 1) throw std::invalid_argument("schedule: iteration index must be >= 1, got " + std::to_string(n));
    if (n == 1) {
        // 150, 90, 90, 30, -30, -30, -90 degrees
        return {{5, 3, 3, 1, -1, -1, -3},
                {1, 2, 3, 4},
                {{{1, 2}, {4, 1}, {6, 2}, {7, 1}}},
                MysticAnchor::SeedSecondTile};
    }
    // 120, 60, 60, 0, -60, -60, -120 degrees; stationary from the second step on.
    return {{4, 2, 2, 0, -2, -2, -4},
            {2, 3, 4, 1},
            {{{1, 3}, {4, 2}, {6, 3}, {7, 2}}},
            MysticAnchor::SkipCellOffset};
}

namespace {

std::string context(int n) { return "substitution step " + std::to_string(n) + ": "; }

struct MysticResolution {
    KeyAnchor anchor;
    std::array<std::uint64_t, 3> rows;
};

// Maps the role-C anchor of S onto the matching tile of M.
MysticResolution resolve_mystic(const Cluster& S, const Cluster& M, const IterationSchedule& sched,
                                const std::array<KeyAnchor, 4>& roles)
{
    MysticResolution out{};
    const KeyAnchor& c = roles[static_cast<std::size_t>(Role::C)];
    if (sched.mystic_anchor == MysticAnchor::SeedSecondTile) {
        for (std::size_t i = 0; i < 3; ++i) out.rows[i] = legacy_row(roles[i]) + 16;
        out.anchor = {c.label, c.tile_ordinal + 1, c.vertex_index};
    }
    else {
        if (M.size() > S.size()) throw SubstitutionError("Mystic is larger than Specter");
        const std::uint64_t skip = S.size() - M.size();
        if (skip == 0 || M.size() < 6 * skip || M.size() - 6 * skip + 7 * skip != S.size())
            throw SubstitutionError("cluster sizes do not follow the substitution layout");
        const std::uint64_t head = M.size() - 6 * skip; // tiles of cell0
        const std::uint64_t skipped_first = head + 2 * skip + 1;
        const std::uint64_t skipped_last = head + 3 * skip;
        for (std::size_t i = 0; i < 3; ++i) {
            const std::uint64_t row = legacy_row(roles[i]);
            out.rows[i] = row > 16 * skip ? row - 16 * skip : 0;
        }
        std::uint64_t t = c.tile_ordinal;
        if (t >= skipped_first && t <= skipped_last)
            throw SubstitutionError("role C anchor lies in the cell the Mystic omits");
        if (t > skipped_last) t -= skip;
        out.anchor = {c.label, t, c.vertex_index};
    }
    if (out.anchor.tile_ordinal > M.size()) throw SubstitutionError("Mystic anchor outside the Mystic");
    return out;
}

std::pair<Cluster, Cluster> step_impl(const Cluster& S, const Cluster& M, int n, StepTrace* trace)
{
    if (!S.has_keys()) throw SubstitutionError("Specter cluster has no key points");
    if (M.has_keys()) throw SubstitutionError("Mystic cluster must not carry key points");
    const auto sc = uniform_chirality(S);
    const auto mc = uniform_chirality(M);
    if (!sc || !mc || *sc != *mc) throw SubstitutionError("clusters have mixed chirality");

    const IterationSchedule sched = schedule(n);
    const Isometry mirror = Isometry::mirror();

    std::array<KeyAnchor, 4> roles{};
    std::array<CycNum, 4> role_points{}; // in the mirrored S
    for (std::size_t r = 0; r < 4; ++r) {
        roles[r] = key_anchor(S, sched.role_labels[r]);
        role_points[r] = mirror_x(key_point(S, sched.role_labels[r]));
    }
    const MysticResolution mystic = resolve_mystic(S, M, sched, roles);

    std::array<Isometry, 8> cells{};
    cells[0] = mirror;
    std::array<CycNum, 7> targets{};
    std::array<CycNum, 7> images{};
    Isometry previous{}; // placement of the preceding cell, acting on mirrored S
    for (std::size_t k = 0; k < 7; ++k) {
        const CellPin pin = kCellPins[k];
        const CycNum target = k == 0
            ? mirror_x(tile_vertex(M, mystic.anchor.tile_ordinal, mystic.anchor.vertex_index))
            : apply(previous, role_points[static_cast<std::size_t>(pin.target)]);
        const CycNum& about = role_points[static_cast<std::size_t>(pin.about)];
        const Isometry motion = placement(about, sched.angles[k], target);
        targets[k] = target;
        images[k] = apply(motion, about);
        if (images[k] != target) throw SubstitutionError("cell " + std::to_string(k + 1) + " anchor mismatch");
        cells[k + 1] = compose(motion, mirror);
        previous = motion;
    }

    std::array<std::uint64_t, 9> offsets{};
    offsets[1] = M.size();
    for (std::size_t k = 2; k <= 8; ++k) offsets[k] = offsets[k - 1] + S.size();

    std::vector<Isometry> s_tiles;
    s_tiles.reserve(offsets[8]);
    for (const auto& t : M.tiles()) s_tiles.push_back(compose(cells[0], t));
    for (std::size_t k = 1; k < 8; ++k)
        for (const auto& t : S.tiles()) s_tiles.push_back(compose(cells[k], t));

    std::vector<Isometry> m_tiles;
    m_tiles.reserve(offsets[8] - S.size());
    m_tiles.insert(m_tiles.end(), s_tiles.begin(), s_tiles.begin() + static_cast<std::ptrdiff_t>(offsets[3]));
    m_tiles.insert(m_tiles.end(), s_tiles.begin() + static_cast<std::ptrdiff_t>(offsets[4]), s_tiles.end());

    KeySet keys{};
    for (std::size_t i = 0; i < 4; ++i) {
        const CellKey src = sched.key_sources[i];
        const KeyAnchor& a = key_anchor(S, src.label);
        keys[i] = {static_cast<int>(i) + 1, offsets[static_cast<std::size_t>(src.cell)] + a.tile_ordinal,
                   a.vertex_index};
    }

    if (trace) {
        trace->iteration = n;
        for (std::size_t r = 0; r < 4; ++r) trace->role_rows[r] = legacy_row(roles[r]);
        trace->mystic_rows = mystic.rows;
        trace->mystic_anchor = mystic.anchor;
        trace->cell_motions = cells;
        trace->cell_offsets = offsets;
        trace->pin_targets = targets;
        trace->pin_images = images;
        trace->inherited_keys.clear();
        for (std::size_t k = 1; k < 8; ++k)
            for (const auto& a : *S.keys())
                trace->inherited_keys.push_back({a.label, offsets[k] + a.tile_ordinal, a.vertex_index});
        std::sort(trace->inherited_keys.begin(), trace->inherited_keys.end(),
                  [](const KeyAnchor& x, const KeyAnchor& y) { return legacy_row(x) < legacy_row(y); });
    }

    return {Cluster(std::move(s_tiles), keys), Cluster(std::move(m_tiles))};
}

} // namespace

std::pair<Cluster, Cluster> step(const Cluster& S, const Cluster& M, int n, StepTrace* trace)
{
    try {
        return step_impl(S, M, n, trace);
    }
    catch (const SubstitutionError& e) {
        throw SubstitutionError(context(n) + e.what());
    }
    catch (const ClusterError& e) {
        throw SubstitutionError(context(n) + e.what());
    }
    catch (const OverflowError& e) {
        throw SubstitutionError(context(n) + e.what());
    }
}

Generation generate(int max_n, const RunOptions& options)
{
    const CountTable counts = predict_counts(max_n);
    const std::uint64_t need = counts.nS[static_cast<std::size_t>(max_n)];
    if (need > options.max_tiles) throw ResourceLimitError(need, options.max_tiles);

    Generation g{seed_S0(), seed_M0()};
    for (int n = 1; n <= max_n; ++n) {
        StepTrace trace;
        auto [s, m] = step(g.S, g.M, n, &trace);
        g.S = std::move(s);
        g.M = std::move(m);
        if (g.S.size() != counts.nS[static_cast<std::size_t>(n)] || g.M.size() != counts.nM[static_cast<std::size_t>(n)])
            throw SubstitutionError(context(n) + "tile count disagrees with the recurrence");
        if (options.on_step) options.on_step(n, g.S, g.M, trace);
    }
    return g;
}

Cluster run(int max_n, const RunOptions& options)
{
    return generate(max_n, options).S;
}

} // namespace monotile
