#pragma once

// One substitution step turns (S, M) of generation N-1 into generation N:
//
//   1. mirror S and M;
//   2. cell0 = M, then seven copies of S (cells 1..7) are chained together,
//      each placed by pinning one of its key points onto a key point of the
//      previous cell (cell1 is pinned onto the Mystic);
//   3. S' = cells 0..7, M' = the same without cell 3;
//   4. four of the 28 inherited key anchors become the keys of S'.

#include "monotile/cluster.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace monotile {

class SubstitutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested generation would exceed the configured tile budget.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(std::uint64_t required, std::uint64_t limit);
    ResourceLimitError(const std::string& what, std::uint64_t required, std::uint64_t limit);
    std::uint64_t required;
    std::uint64_t limit;
};

/// Expected tile counts; index n holds generation n (index 0 is the seed pair).
struct CountTable {
    std::vector<std::uint64_t> nS;
    std::vector<std::uint64_t> nM;
};

CountTable predict_counts(int max_n);

enum class Role { A = 0, B = 1, C = 2, D = 3 };

/// Anchor of the next generation's key: key `label` of placed copy `cell`.
struct CellKey {
    int cell = 0;
    int label = 0;
    friend constexpr bool operator==(const CellKey&, const CellKey&) = default;
};

/// How cell1 finds its target point inside the (mirrored) Mystic.
enum class MysticAnchor {
    SeedSecondTile, // M0: role C on the second tile
    SkipCellOffset  // same anchor as role C in S, shifted past the skipped cell 3
};

struct IterationSchedule {
    std::array<int, 7> angles{};      // rotation of cells 1..7 in units of 30 degrees
    std::array<int, 4> role_labels{}; // key label playing role A, B, C, D
    std::array<CellKey, 4> key_sources{};
    MysticAnchor mystic_anchor = MysticAnchor::SkipCellOffset;

    int label(Role r) const { return role_labels[static_cast<std::size_t>(r)]; }
    friend bool operator==(const IterationSchedule&, const IterationSchedule&) = default;
};

IterationSchedule schedule(int n);

/// How each cell k = 1..7 is pinned: its `about` role point goes onto the
/// `target` role point of cell k-1 (cell1 targets the Mystic).
struct CellPin {
    Role about;
    Role target;
};
inline constexpr std::array<CellPin, 7> kCellPins{{
    {Role::C, Role::C},
    {Role::B, Role::D},
    {Role::C, Role::A},
    {Role::B, Role::D},
    {Role::B, Role::D},
    {Role::C, Role::A},
    {Role::B, Role::D},
}};

/// Bookkeeping from one step, exposed for row-level cross checks and plotting.
struct StepTrace {
    int iteration = 0;
    std::array<std::uint64_t, 4> role_rows{};    // legacy rows of roles A..D in the previous S
    std::array<std::uint64_t, 3> mystic_rows{};  // role rows A..C shifted into the previous M
    KeyAnchor mystic_anchor{};                    // resolved role C anchor inside M
    std::array<Isometry, 8> cell_motions{};       // cell k occupies tiles placed by motion k
    std::array<std::uint64_t, 9> cell_offsets{};  // first tile ordinal - 1 of cells 0..7, plus end
    std::array<CycNum, 7> pin_targets{};
    std::array<CycNum, 7> pin_images{};
    std::vector<KeyAnchor> inherited_keys;        // 28 anchors of cells 1..7, in row order
};

/// One substitution step for generation n >= 1.
std::pair<Cluster, Cluster> step(const Cluster& S, const Cluster& M, int n, StepTrace* trace = nullptr);

struct RunOptions {
    std::uint64_t max_tiles = std::numeric_limits<std::uint64_t>::max();
    /// Called after each generation with (n, S_n, M_n, trace).
    std::function<void(int, const Cluster&, const Cluster&, const StepTrace&)> on_step;
};

struct Generation {
    Cluster S;
    Cluster M;
};

/// Generation max_n, starting from (S0, M0).
Generation generate(int max_n, const RunOptions& options = {});
Cluster run(int max_n, const RunOptions& options = {});

} // namespace monotile
