#pragma once

// Structural certification of a generated patch. Every check works on exact
// lattice points: edges are keyed by their integer endpoints, so no tolerance
// enters the verdict.
//
// A patch passes when
//   - every tile is a rotated (and uniformly reflected or not) prototile,
//   - every unit edge is shared by at most two tiles, traversed in opposite
//     directions,
//   - V - E + F == 1 (one simply connected piece, no holes),
//   - the area enclosed by the boundary equals F times the tile area,
//   - no two tiles coincide.

#include "monotile/cluster.hpp"
#include "monotile/substitution.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace monotile {

/// Polygons given directly by their vertices, e.g. to inject perturbations
/// that no rigid placement can express.
using Patch = std::vector<TileVertices>;

Patch materialize(const Cluster& c);

struct TileOrientation {
    bool reflected = false;
    int rot = 0;
    friend constexpr bool operator==(const TileOrientation&, const TileOrientation&) = default;
};

/// Orientation of a polygon if it is a congruent copy of the prototile.
std::optional<TileOrientation> classify_tile(const TileVertices& poly);

struct CongruenceFailure {
    std::uint64_t tile = 0; // 1-based
    std::string reason;
};

std::vector<CongruenceFailure> check_congruence(const Cluster& c);
std::vector<CongruenceFailure> check_congruence(const Patch& p);

struct ChiralityResult {
    bool uniform = true;
    bool reflected = false;
    std::vector<std::uint64_t> violations; // tiles whose flag differs from tile 1
};

ChiralityResult check_chirality(const Cluster& c);

struct EdgeViolation {
    CycNum start; // lexicographically smaller endpoint
    CycNum end;
    std::uint32_t multiplicity = 0;
    std::string reason;
};

struct EdgeMatch {
    std::uint64_t interior = 0;
    std::uint64_t boundary = 0;
    std::uint64_t violation_count = 0;
    std::vector<EdgeViolation> violations; // first few only, see kMaxListedViolations
    std::uint64_t vertices = 0;            // distinct vertex points
    HalfSurd boundary_twice_area{};        // exact doubled area enclosed by boundary edges
    double boundary_twice_area_float = 0.0;
    bool packed = false;                   // compact 64-bit keys were used
};

inline constexpr std::size_t kMaxListedViolations = 64;

struct VerifyOptions {
    unsigned threads = 1;
    /// Force the wide-key path even when coordinates fit in 64-bit keys.
    bool force_wide_keys = false;
};

EdgeMatch edge_match(const Cluster& c, const VerifyOptions& options = {});
EdgeMatch edge_match(const Patch& p, const VerifyOptions& options = {});

/// V - E + F. Throws if the edge matching found violations.
std::int64_t euler(const Cluster& c, const VerifyOptions& options = {});
std::int64_t euler_from(const EdgeMatch& m, std::uint64_t tiles);

enum class AreaMode { Exact, Float };

struct AreaCheck {
    double residual = 0.0;              // |boundary area - F * tile area| / (F * tile area)
    std::uint64_t sign_failures = 0;    // tiles whose orientation disagrees with the chirality
};

AreaCheck area_check(const Cluster& c, AreaMode mode = AreaMode::Exact, const VerifyOptions& options = {});

/// Ordinals (1-based) of tiles whose placement repeats an earlier tile.
std::vector<std::uint64_t> duplicate_tiles(const Cluster& c);

/// Which checks full_report runs.
struct CheckSelection {
    bool congruence = true;
    bool chirality = true;
    bool edges = true;
    bool euler = true;
    bool area = true;
    bool duplicates = true;
    bool count = true;

    /// Parses a comma separated list such as "edges,euler". Throws on unknown names.
    static CheckSelection parse(const std::string& list);
};

struct VerifyReport {
    int iteration = 0;
    std::uint64_t tiles = 0;
    std::uint64_t expected_tiles = 0;
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t interior_edges = 0;
    std::uint64_t boundary_edges = 0;
    std::int64_t euler = 0;
    ChiralityResult chirality;
    std::optional<bool> expected_reflected;
    std::vector<CongruenceFailure> congruence_failures;
    std::uint64_t edge_violation_count = 0;
    std::vector<EdgeViolation> edge_violations;
    std::vector<std::uint64_t> duplicate_tiles;
    double area_residual = 0.0;
    std::uint64_t area_sign_failures = 0;
    std::optional<std::array<std::uint64_t, 4>> key_rows;
    CheckSelection checks;
    bool pass = false;
};

VerifyReport full_report(const Cluster& c, const CountTable& expected, int n,
                         const CheckSelection& checks = {}, const VerifyOptions& options = {});

nlohmann::ordered_json to_json(const VerifyReport& r);

} // namespace monotile
