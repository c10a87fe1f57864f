#include "monotile/cluster.hpp"

#include <string>

namespace monotile {

Cluster::Cluster(std::vector<Isometry> tiles, std::optional<KeySet> keys)
    : tiles_(std::move(tiles)), keys_(keys)
{
    if (!keys_) return;
    for (int label = 1; label <= 4; ++label) {
        const auto& k = (*keys_)[static_cast<std::size_t>(label - 1)];
        if (k.label != label) throw ClusterError("key anchors must be ordered by label 1..4");
        if (k.tile_ordinal < 1 || k.tile_ordinal > tiles_.size())
            throw ClusterError("key anchor " + std::to_string(label) + " references tile "
                               + std::to_string(k.tile_ordinal) + " outside the cluster");
        bool known = false;
        for (int v : kKeyVertex) known = known || v == k.vertex_index;
        if (!known) throw ClusterError("key anchor on a non-key vertex " + std::to_string(k.vertex_index));
    }
}

Cluster Cluster::with_keys(std::optional<KeySet> keys) const&
{
    return Cluster(tiles_, keys);
}

Cluster Cluster::with_keys(std::optional<KeySet> keys) &&
{
    return Cluster(std::move(tiles_), keys);
}

TileVertices tile_vertices(const Isometry& iso)
{
    TileVertices out;
    const auto& base = prototile().vertices;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = apply(iso, base[i]);
    return out;
}

CycNum tile_vertex(const Cluster& c, std::uint64_t ordinal, int vertex_index)
{
    return apply(c.tile(ordinal), prototile().vertex(vertex_index));
}

const KeyAnchor& key_anchor(const Cluster& c, int label)
{
    if (!c.has_keys()) throw ClusterError("cluster has no key points");
    if (label < 1 || label > 4) throw ClusterError("key label must be in 1..4");
    return (*c.keys())[static_cast<std::size_t>(label - 1)];
}

CycNum key_point(const Cluster& c, int label)
{
    const auto& k = key_anchor(c, label);
    return tile_vertex(c, k.tile_ordinal, k.vertex_index);
}

Isometry placement(const CycNum& about, int k, const CycNum& to)
{
    return {to - rot_pow(about, k), static_cast<std::int8_t>(mod12(k)), false};
}

Cluster place(const Cluster& c, const CycNum& about, int k, const CycNum& to)
{
    const Isometry motion = placement(about, k, to);
    std::vector<Isometry> tiles;
    tiles.reserve(c.size());
    for (const auto& t : c.tiles()) tiles.push_back(compose(motion, t));
    return Cluster(std::move(tiles), c.keys());
}

Cluster mirror_cluster(const Cluster& c)
{
    const Isometry m = Isometry::mirror();
    std::vector<Isometry> tiles;
    tiles.reserve(c.size());
    for (const auto& t : c.tiles()) tiles.push_back(compose(m, t));
    return Cluster(std::move(tiles), c.keys());
}

Cluster concat(std::span<const Cluster* const> parts)
{
    std::size_t total = 0;
    std::optional<bool> chirality;
    for (const Cluster* part : parts) {
        total += part->size();
        if (part->empty()) continue;
        const auto own = uniform_chirality(*part);
        if (!own || (chirality && *chirality != *own))
            throw ClusterError("concat: parts have mixed chirality");
        chirality = own;
    }
    std::vector<Isometry> tiles;
    tiles.reserve(total);
    for (const Cluster* part : parts) tiles.insert(tiles.end(), part->tiles().begin(), part->tiles().end());
    return Cluster(std::move(tiles));
}

Cluster concat(std::initializer_list<const Cluster*> parts)
{
    return concat(std::span<const Cluster* const>(parts.begin(), parts.size()));
}

std::array<std::uint64_t, 4> key_rows(const Cluster& c)
{
    std::array<std::uint64_t, 4> rows{};
    for (int label = 1; label <= 4; ++label)
        rows[static_cast<std::size_t>(label - 1)] = legacy_row(key_anchor(c, label));
    return rows;
}

std::optional<bool> uniform_chirality(const Cluster& c)
{
    if (c.empty()) return std::nullopt;
    const bool first = c.tiles().front().reflect;
    for (const auto& t : c.tiles())
        if (t.reflect != first) return std::nullopt;
    return first;
}

Cluster seed_S0()
{
    KeySet keys{};
    for (int label = 1; label <= 4; ++label)
        keys[static_cast<std::size_t>(label - 1)] = {label, 1, kKeyVertex[static_cast<std::size_t>(label - 1)]};
    return Cluster({Isometry::identity()}, keys);
}

Cluster seed_M0()
{
    // Second tile: rotate by -30 degrees, then move the origin to sqrt(3)/2 - 1.5i.
    const Isometry second{CycNum{0, 1, 0, -2}, 11, false};
    return Cluster({Isometry::identity(), second});
}

} // namespace monotile
