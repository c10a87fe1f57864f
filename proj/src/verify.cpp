#include "monotile/verify.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <tuple>

namespace monotile {

namespace {

constexpr std::size_t kEdges = kEdgeCount;

int direction_of(const CycNum& v)
{
    static const std::array<CycNum, 12> units = [] {
        std::array<CycNum, 12> u{};
        for (int k = 0; k < 12; ++k) u[static_cast<std::size_t>(k)] = unit(k);
        return u;
    }();
    for (int k = 0; k < 12; ++k)
        if (units[static_cast<std::size_t>(k)] == v) return k;
    return -1;
}

int placed_direction(const Isometry& iso, std::size_t edge)
{
    const int w = kDirectionWord[edge];
    return mod12(iso.reflect ? 6 - w + iso.rot : w + iso.rot);
}

// Tile i as vertices plus edge directions; direction -1 marks a non-unit edge.
struct ClusterSource {
    const Cluster& cluster;
    std::size_t size() const { return cluster.size(); }
    void load(std::size_t i, TileVertices& v, std::array<int, kEdges>& dirs) const
    {
        const Isometry& iso = cluster.tiles()[i];
        v = tile_vertices(iso);
        for (std::size_t e = 0; e < kEdges; ++e) dirs[e] = placed_direction(iso, e);
    }
};

struct PatchSource {
    const Patch& patch;
    std::size_t size() const { return patch.size(); }
    void load(std::size_t i, TileVertices& v, std::array<int, kEdges>& dirs) const
    {
        v = patch[i];
        for (std::size_t e = 0; e < kEdges; ++e) dirs[e] = direction_of(v[(e + 1) % kEdges] - v[e]);
    }
};

// Packed key layout: four 15-bit biased components, 3-bit direction, 1-bit orientation.
constexpr std::int64_t kPackBias = 1 << 14;
constexpr std::uint64_t kNonUnit = ~std::uint64_t{0};

bool fits(std::int64_t x) { return x >= -kPackBias && x < kPackBias; }

bool packable(const CycNum& p) { return fits(p.a) && fits(p.b) && fits(p.c) && fits(p.d); }

std::uint64_t pack_point(const CycNum& p)
{
    const auto u = [](std::int64_t x) { return static_cast<std::uint64_t>(x + kPackBias); };
    return (u(p.a) << 45) | (u(p.b) << 30) | (u(p.c) << 15) | u(p.d);
}

CycNum unpack_point(std::uint64_t k)
{
    const auto s = [](std::uint64_t x) { return static_cast<std::int64_t>(x & 0x7fff) - kPackBias; };
    return {s(k >> 45), s(k >> 30), s(k >> 15), s(k)};
}

struct WideKey {
    CycNum start;
    std::int8_t dir = 0;
    std::int8_t orient = 0;
    bool non_unit = false;

    auto edge_tie() const { return std::tie(non_unit, start, dir); }
    friend bool operator<(const WideKey& x, const WideKey& y)
    {
        return std::tie(x.non_unit, x.start, x.dir, x.orient) < std::tie(y.non_unit, y.start, y.dir, y.orient);
    }
};

struct CanonicalEdge {
    CycNum start;
    int dir = 0;    // 0..5
    int orient = 0; // 1 when the tile traverses the edge against dir
};

CanonicalEdge canonical(const CycNum& from, const CycNum& to, int dir)
{
    if (dir < 6) return {from, dir, 0};
    return {to, dir - 6, 1};
}

void note_violation(EdgeMatch& m, const CycNum& start, int dir, std::uint32_t multiplicity, std::string reason)
{
    ++m.violation_count;
    if (m.violations.size() >= kMaxListedViolations) return;
    CycNum end = start + unit(dir);
    CycNum lo = std::min(start, end);
    CycNum hi = std::max(start, end);
    m.violations.push_back({lo, hi, multiplicity, std::move(reason)});
}

// Classifies one group of slots sharing an undirected edge.
template <class OrientAt>
void classify_group(EdgeMatch& m, const CycNum& start, int dir, std::size_t count, OrientAt orient_at)
{
    if (count == 1) {
        ++m.boundary;
        const CycNum end = start + unit(dir);
        m.boundary_twice_area += orient_at(0) == 0 ? cross(start, end) : cross(end, start);
        const Vec2 p = to_xy(start);
        const Vec2 q = to_xy(end);
        const double c = p.x * q.y - p.y * q.x;
        m.boundary_twice_area_float += orient_at(0) == 0 ? c : -c;
    }
    else if (count == 2 && orient_at(0) != orient_at(1)) {
        ++m.interior;
    }
    else if (count == 2) {
        note_violation(m, start, dir, 2, "edge traversed twice in the same direction");
    }
    else {
        note_violation(m, start, dir, static_cast<std::uint32_t>(count),
                       "edge shared by " + std::to_string(count) + " tiles");
    }
}

template <class Source>
bool all_packable(const Source& src, unsigned threads)
{
    std::atomic<bool> ok{true};
    detail::parallel_for(src.size(), threads, [&](std::size_t begin, std::size_t end) {
        TileVertices v;
        std::array<int, kEdges> dirs{};
        for (std::size_t i = begin; i < end && ok.load(std::memory_order_relaxed); ++i) {
            src.load(i, v, dirs);
            for (const auto& p : v)
                if (!packable(p)) ok = false;
        }
    });
    return ok;
}

template <class Source>
EdgeMatch edge_match_packed(const Source& src, unsigned threads)
{
    EdgeMatch m;
    m.packed = true;
    const std::size_t slots = src.size() * kEdges;
    std::vector<std::uint64_t> keys(slots);
    detail::parallel_for(src.size(), threads, [&](std::size_t begin, std::size_t end) {
        TileVertices v;
        std::array<int, kEdges> dirs{};
        for (std::size_t i = begin; i < end; ++i) {
            src.load(i, v, dirs);
            for (std::size_t e = 0; e < kEdges; ++e) {
                auto& key = keys[i * kEdges + e];
                if (dirs[e] < 0) {
                    key = kNonUnit;
                    continue;
                }
                const auto ce = canonical(v[e], v[(e + 1) % kEdges], dirs[e]);
                key = (pack_point(ce.start) << 4) | (static_cast<std::uint64_t>(ce.dir) << 1)
                      | static_cast<std::uint64_t>(ce.orient);
            }
        }
    });
    std::sort(keys.begin(), keys.end());

    std::size_t i = 0;
    while (i < slots) {
        if (keys[i] == kNonUnit) {
            // Non-unit edges cannot be keyed; each one is its own violation.
            for (; i < slots; ++i) note_violation(m, kZero, 0, 1, "edge is not a unit vector");
            break;
        }
        std::size_t j = i + 1;
        while (j < slots && (keys[j] >> 1) == (keys[i] >> 1)) ++j;
        const CycNum start = unpack_point(keys[i] >> 4);
        const int dir = static_cast<int>((keys[i] >> 1) & 7);
        classify_group(m, start, dir, j - i, [&](std::size_t k) { return static_cast<int>(keys[i + k] & 1); });
        i = j;
    }

    // Reuse the buffer for distinct vertices.
    detail::parallel_for(src.size(), threads, [&](std::size_t begin, std::size_t end) {
        TileVertices v;
        std::array<int, kEdges> dirs{};
        for (std::size_t t = begin; t < end; ++t) {
            src.load(t, v, dirs);
            for (std::size_t e = 0; e < kEdges; ++e) keys[t * kEdges + e] = pack_point(v[e]);
        }
    });
    std::sort(keys.begin(), keys.end());
    m.vertices = static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    return m;
}

template <class Source>
EdgeMatch edge_match_wide(const Source& src, unsigned threads)
{
    EdgeMatch m;
    const std::size_t slots = src.size() * kEdges;
    std::vector<WideKey> keys(slots);
    std::vector<CycNum> points(slots);
    detail::parallel_for(src.size(), threads, [&](std::size_t begin, std::size_t end) {
        TileVertices v;
        std::array<int, kEdges> dirs{};
        for (std::size_t i = begin; i < end; ++i) {
            src.load(i, v, dirs);
            for (std::size_t e = 0; e < kEdges; ++e) {
                points[i * kEdges + e] = v[e];
                auto& key = keys[i * kEdges + e];
                if (dirs[e] < 0) {
                    key.non_unit = true;
                    continue;
                }
                const auto ce = canonical(v[e], v[(e + 1) % kEdges], dirs[e]);
                key = {ce.start, static_cast<std::int8_t>(ce.dir), static_cast<std::int8_t>(ce.orient), false};
            }
        }
    });
    std::sort(keys.begin(), keys.end());
    std::size_t i = 0;
    while (i < slots) {
        if (keys[i].non_unit) {
            for (; i < slots; ++i) note_violation(m, kZero, 0, 1, "edge is not a unit vector");
            break;
        }
        std::size_t j = i + 1;
        while (j < slots && keys[j].edge_tie() == keys[i].edge_tie()) ++j;
        classify_group(m, keys[i].start, keys[i].dir, j - i, [&](std::size_t k) { return int(keys[i + k].orient); });
        i = j;
    }
    std::sort(points.begin(), points.end());
    m.vertices = static_cast<std::uint64_t>(std::unique(points.begin(), points.end()) - points.begin());
    return m;
}

template <class Source>
EdgeMatch edge_match_impl(const Source& src, const VerifyOptions& options)
{
    if (!options.force_wide_keys && all_packable(src, options.threads))
        return edge_match_packed(src, options.threads);
    return edge_match_wide(src, options.threads);
}

std::string describe(const std::optional<TileOrientation>& o)
{
    if (!o) return "not congruent to the prototile";
    std::ostringstream s;
    s << "orientation (reflect " << (o->reflected ? "true" : "false") << ", rot " << o->rot << ')';
    return s.str();
}

} // namespace

Patch materialize(const Cluster& c)
{
    Patch p;
    p.reserve(c.size());
    for (const auto& iso : c.tiles()) p.push_back(tile_vertices(iso));
    return p;
}

std::optional<TileOrientation> classify_tile(const TileVertices& poly)
{
    std::array<int, kEdges> dirs{};
    for (std::size_t e = 0; e < kEdges; ++e) {
        dirs[e] = direction_of(poly[(e + 1) % kEdges] - poly[e]);
        if (dirs[e] < 0) return std::nullopt;
    }
    for (const bool reflected : {false, true}) {
        const auto word = [&](std::size_t e) {
            return reflected ? 6 - kDirectionWord[e] : kDirectionWord[e];
        };
        const int k = mod12(dirs[0] - word(0));
        bool ok = true;
        for (std::size_t e = 1; e < kEdges && ok; ++e) ok = mod12(dirs[e] - word(e)) == k;
        if (ok) return TileOrientation{reflected, k};
    }
    return std::nullopt;
}

std::vector<CongruenceFailure> check_congruence(const Patch& p)
{
    std::vector<CongruenceFailure> out;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!classify_tile(p[i])) out.push_back({i + 1, describe(std::nullopt)});
    return out;
}

std::vector<CongruenceFailure> check_congruence(const Cluster& c)
{
    std::vector<CongruenceFailure> out;
    std::size_t i = 0;
    for (const auto& iso : c.tiles()) {
        ++i;
        const auto o = classify_tile(tile_vertices(iso));
        const TileOrientation want{iso.reflect, iso.rot};
        if (!o || *o != want) out.push_back({i, describe(o) + ", placement says " + describe(want)});
    }
    return out;
}

ChiralityResult check_chirality(const Cluster& c)
{
    ChiralityResult r;
    if (c.empty()) return r;
    r.reflected = c.tiles().front().reflect;
    std::uint64_t i = 0;
    for (const auto& t : c.tiles()) {
        ++i;
        if (t.reflect != r.reflected) r.violations.push_back(i);
    }
    r.uniform = r.violations.empty();
    return r;
}

EdgeMatch edge_match(const Cluster& c, const VerifyOptions& options)
{
    return edge_match_impl(ClusterSource{c}, options);
}

EdgeMatch edge_match(const Patch& p, const VerifyOptions& options)
{
    return edge_match_impl(PatchSource{p}, options);
}

std::int64_t euler_from(const EdgeMatch& m, std::uint64_t tiles)
{
    // Violating slots are counted once per distinct edge.
    const auto edges = m.interior + m.boundary + m.violation_count;
    return static_cast<std::int64_t>(m.vertices) - static_cast<std::int64_t>(edges)
           + static_cast<std::int64_t>(tiles);
}

std::int64_t euler(const Cluster& c, const VerifyOptions& options)
{
    const EdgeMatch m = edge_match(c, options);
    if (m.violation_count != 0)
        throw std::invalid_argument("euler: edge matching has " + std::to_string(m.violation_count) + " violations");
    return euler_from(m, c.size());
}

namespace {

AreaCheck area_from(const Cluster& c, const EdgeMatch& m, AreaMode mode, unsigned threads)
{
    AreaCheck out;
    if (c.empty()) return out;
    const bool reflected = c.tiles().front().reflect;
    const int sign = reflected ? -prototile_orientation() : prototile_orientation();
    const HalfSurd twice_tile = tile_area() * 2;

    std::vector<std::uint8_t> bad(c.size(), 0);
    detail::parallel_for(c.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            bad[i] = twice_signed_area(tile_vertices(c.tiles()[i])).sign() != sign;
    });
    out.sign_failures = static_cast<std::uint64_t>(std::count(bad.begin(), bad.end(), 1));

    const auto tiles = static_cast<std::int64_t>(c.size());
    const HalfSurd expected = twice_tile * (tiles * sign);
    const double scale = std::abs(expected.value());
    if (mode == AreaMode::Exact) {
        const HalfSurd diff = m.boundary_twice_area - expected;
        out.residual = diff == HalfSurd{} ? 0.0 : std::abs(diff.value()) / scale;
    }
    else {
        out.residual = std::abs(m.boundary_twice_area_float - expected.value()) / scale;
    }
    return out;
}

} // namespace

AreaCheck area_check(const Cluster& c, AreaMode mode, const VerifyOptions& options)
{
    return area_from(c, edge_match(c, options), mode, options.threads);
}

std::vector<std::uint64_t> duplicate_tiles(const Cluster& c)
{
    std::vector<std::pair<Isometry, std::uint64_t>> sorted;
    sorted.reserve(c.size());
    std::uint64_t i = 0;
    for (const auto& t : c.tiles()) sorted.emplace_back(t, ++i);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint64_t> dups;
    for (std::size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k].first == sorted[k - 1].first) dups.push_back(sorted[k].second);
    std::sort(dups.begin(), dups.end());
    return dups;
}

CheckSelection CheckSelection::parse(const std::string& list)
{
    CheckSelection s{false, false, false, false, false, false, false};
    std::istringstream in(list);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name == "all") s = CheckSelection{};
        else if (name == "congruence") s.congruence = true;
        else if (name == "chirality") s.chirality = true;
        else if (name == "edges") s.edges = true;
        else if (name == "euler") s.euler = true;
        else if (name == "area") s.area = true;
        else if (name == "duplicates") s.duplicates = true;
        else if (name == "count") s.count = true;
        else throw std::invalid_argument("unknown check '" + name + "'");
    }
    return s;
}

VerifyReport full_report(const Cluster& c, const CountTable& expected, int n, const CheckSelection& checks,
                         const VerifyOptions& options)
{
    VerifyReport r;
    r.iteration = n;
    r.checks = checks;
    r.tiles = c.size();
    bool pass = true;

    if (checks.count) {
        if (n >= 0 && static_cast<std::size_t>(n) < expected.nS.size())
            r.expected_tiles = expected.nS[static_cast<std::size_t>(n)];
        pass = pass && r.expected_tiles == r.tiles;
    }
    if (checks.chirality) {
        r.chirality = check_chirality(c);
        r.expected_reflected = (n % 2) == 1;
        pass = pass && r.chirality.uniform && r.chirality.reflected == *r.expected_reflected;
    }
    if (checks.congruence) {
        r.congruence_failures = check_congruence(c);
        pass = pass && r.congruence_failures.empty();
    }
    if (checks.edges || checks.euler || checks.area) {
        const EdgeMatch m = edge_match(c, options);
        r.vertices = m.vertices;
        r.interior_edges = m.interior;
        r.boundary_edges = m.boundary;
        r.edges = m.interior + m.boundary + m.violation_count;
        r.edge_violation_count = m.violation_count;
        r.edge_violations = m.violations;
        r.euler = euler_from(m, c.size());
        if (checks.edges) pass = pass && m.violation_count == 0;
        if (checks.euler) pass = pass && m.violation_count == 0 && r.euler == 1;
        if (checks.area) {
            const AreaCheck a = area_from(c, m, AreaMode::Exact, options.threads);
            r.area_residual = a.residual;
            r.area_sign_failures = a.sign_failures;
            pass = pass && a.residual == 0.0 && a.sign_failures == 0;
        }
    }
    if (checks.duplicates) {
        r.duplicate_tiles = duplicate_tiles(c);
        pass = pass && r.duplicate_tiles.empty();
    }
    if (c.has_keys()) r.key_rows = key_rows(c);
    r.pass = pass;
    return r;
}

namespace {

nlohmann::ordered_json point_json(const CycNum& p) { return {p.a, p.b, p.c, p.d}; }

} // namespace

nlohmann::ordered_json to_json(const VerifyReport& r)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["iteration"] = r.iteration;
    j["pass"] = r.pass;
    j["tiles"] = r.tiles;
    if (r.checks.count) j["expected_tiles"] = r.expected_tiles;
    if (r.checks.edges || r.checks.euler || r.checks.area) {
        j["vertices"] = r.vertices;
        j["edges"] = r.edges;
        j["interior_edges"] = r.interior_edges;
        j["boundary_edges"] = r.boundary_edges;
        j["euler"] = r.euler;
        j["edge_violation_count"] = r.edge_violation_count;
        ordered_json ev = ordered_json::array();
        for (const auto& v : r.edge_violations)
            ev.push_back({{"start", point_json(v.start)}, {"end", point_json(v.end)},
                          {"multiplicity", v.multiplicity}, {"reason", v.reason}});
        j["edge_violations"] = ev;
    }
    if (r.checks.chirality) {
        j["chirality"] = {{"uniform", r.chirality.uniform},
                          {"reflected", r.chirality.reflected},
                          {"expected_reflected", r.expected_reflected.value_or(false)},
                          {"violations", r.chirality.violations}};
    }
    if (r.checks.congruence) {
        ordered_json cf = ordered_json::array();
        for (const auto& f : r.congruence_failures) cf.push_back({{"tile", f.tile}, {"reason", f.reason}});
        j["congruence_failures"] = cf;
    }
    if (r.checks.area) {
        j["area_residual"] = r.area_residual;
        j["area_sign_failures"] = r.area_sign_failures;
    }
    if (r.checks.duplicates) j["duplicate_tiles"] = r.duplicate_tiles;
    if (r.key_rows) j["key_rows"] = *r.key_rows;
    return j;
}

} // namespace monotile
