#pragma once

#include "ontocompo/application.hpp"
#include "ontocompo/error.hpp"
#include "ontocompo/store.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace ontocompo {

struct grid_cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const grid_cell&) const = default;
};

/// Component id -> cell of an abstract grid; no two components share a cell.
using placement = std::map<std::string, grid_cell>;

enum class conflict_kind {
    horizontal_cycle,  // strict left/right order (with same-column equalities) is cyclic
    vertical_cycle,    // strict above/below order (with same-row equalities) is cyclic
    shared_cell,       // two components forced into the same row and the same column
    self_anchored,
    not_spatial,
};

auto to_string(conflict_kind kind) -> std::string_view;

struct conflict {
    conflict_kind kind;
    std::vector<std::string> ids;
    std::vector<relative_constraint> constraints;
    std::string message;
};

/// Thrown when a constraint set cannot be solved or an update is refused.
class layout_conflict : public error {
public:
    explicit layout_conflict(std::vector<conflict> conflicts);
    auto conflicts() const noexcept -> const std::vector<conflict>& { return m_conflicts; }

private:
    std::vector<conflict> m_conflicts;
};

/// Spatial facts described by a container's layout, in canonical orientation
/// (onTheRightOf, below, belowLeft, belowRight) except relative constraints,
/// which are emitted as declared. Never contains both a fact and its inverse.
///
/// Absolute: per seed and direction only the nearest neighbours are kept.
/// `right` needs b.left >= a.right with overlapping vertical projections,
/// `below` needs b.top >= a.bottom with overlapping horizontal projections,
/// diagonals need both separations. Distance is the edge gap (sum of gaps for diagonals).
/// Table: the same rule in grid units, but diagonals only for corner-touching cells.
auto derive_relations(std::span<const std::string> children, const layout_spec& layout) -> std::vector<triple>;

/// Empty when the constraints are satisfiable on a grid where right/left share a
/// row, above/below share a column, and diagonals are strict on both axes.
auto check_consistency(std::span<const relative_constraint> constraints) -> std::vector<conflict>;

/// Layered placement: longest-path rank per axis over equality classes, ties
/// broken by id; unconstrained components go to fresh rows in id order.
/// Throws layout_conflict when inconsistent, unknown_id for endpoints outside `components`.
auto solve(std::span<const std::string> components, std::span<const relative_constraint> constraints)
    -> placement;

/// Replaces any constraint on the same pair (either orientation) with `update`.
/// Throws precondition on self-anchoring and layout_conflict when the result is inconsistent.
auto place(std::span<const relative_constraint> constraints, const relative_constraint& update)
    -> std::vector<relative_constraint>;

/// Table layout with unit spans.
auto to_table(const placement& p) -> table_layout;

/// Adds constraints one at a time in the given order, skipping any that would
/// make the set inconsistent.
auto greedy_consistent(std::span<const relative_constraint> constraints) -> std::vector<relative_constraint>;

} // namespace ontocompo
