#pragma once

#include "monotile/cyc.hpp"
#include "monotile/prototile.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace monotile {

/// Raised for misuse of cluster primitives (missing keys, mixed chirality, ...).
class ClusterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A labeled copy of one of the prototile's key vertices inside a cluster.
struct KeyAnchor {
    int label = 0;                   // 1..4
    std::uint64_t tile_ordinal = 0;  // 1-based
    int vertex_index = 0;            // one of kKeyVertex

    friend constexpr bool operator==(const KeyAnchor&, const KeyAnchor&) = default;
};

using KeySet = std::array<KeyAnchor, 4>;

/// Row of an anchor in the 16-rows-per-tile layout (15 vertices plus a separator).
inline std::uint64_t legacy_row(std::uint64_t tile_ordinal, int vertex_index)
{
    return 16 * (tile_ordinal - 1) + static_cast<std::uint64_t>(vertex_index);
}
inline std::uint64_t legacy_row(const KeyAnchor& k) { return legacy_row(k.tile_ordinal, k.vertex_index); }

/// An ordered patch of placed prototiles, optionally carrying four key anchors.
class Cluster {
public:
    Cluster() = default;
    explicit Cluster(std::vector<Isometry> tiles, std::optional<KeySet> keys = std::nullopt);

    std::span<const Isometry> tiles() const { return tiles_; }
    std::size_t size() const { return tiles_.size(); }
    bool empty() const { return tiles_.empty(); }
    const Isometry& tile(std::size_t ordinal) const { return tiles_.at(ordinal - 1); }

    const std::optional<KeySet>& keys() const { return keys_; }
    bool has_keys() const { return keys_.has_value(); }

    /// Same tiles, different (or no) keys.
    Cluster with_keys(std::optional<KeySet> keys) const&;
    Cluster with_keys(std::optional<KeySet> keys) &&;

    /// Mutable tile storage; used to build perturbed fixtures.
    std::vector<Isometry>& mutable_tiles() { return tiles_; }

    friend bool operator==(const Cluster&, const Cluster&) = default;

private:
    std::vector<Isometry> tiles_;
    std::optional<KeySet> keys_;
};

/// Vertex `vertex_index` (1-based) of tile `ordinal` (1-based).
CycNum tile_vertex(const Cluster& c, std::uint64_t ordinal, int vertex_index);
TileVertices tile_vertices(const Isometry& iso);

CycNum key_point(const Cluster& c, int label);
const KeyAnchor& key_anchor(const Cluster& c, int label);

/// Rigid motion taking `about` to `to` with rotation zeta^k about it.
Isometry placement(const CycNum& about, int k, const CycNum& to);

/// translate(to) . rot(k) . translate(-about) applied to every tile.
Cluster place(const Cluster& c, const CycNum& about, int k, const CycNum& to);

/// Applies (x, y) -> (-x, y) to the whole cluster.
Cluster mirror_cluster(const Cluster& c);

/// Concatenates tile sequences; the result carries no keys.
Cluster concat(std::span<const Cluster* const> parts);
Cluster concat(std::initializer_list<const Cluster*> parts);

/// Legacy rows of the four keys, in label order.
std::array<std::uint64_t, 4> key_rows(const Cluster& c);

/// Shared reflect flag of all tiles, or nullopt if mixed or empty.
std::optional<bool> uniform_chirality(const Cluster& c);

/// Single prototile with identity placement and keys 1..4 on vertices 4, 6, 8, 14.
Cluster seed_S0();

/// Two prototiles (identity, then rot -30 deg about the origin shifted to
/// (sqrt(3)/2, -3/2)); no keys.
Cluster seed_M0();

} // namespace monotile
