#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace ontocompo {

/// Fixed predicate vocabulary of the annotation store.
enum class predicate {
    contains,
    on_the_left_of,
    on_the_right_of,
    above,
    below,
    above_left,
    above_right,
    below_left,
    below_right,
    linked_to_task,
    linked_to_functionality,
    task_uses_functionality,
    sub_task_of,
    belongs_to_screen,
    belongs_to_app,
};

inline constexpr std::array all_predicates{
    predicate::contains,          predicate::on_the_left_of,
    predicate::on_the_right_of,   predicate::above,
    predicate::below,             predicate::above_left,
    predicate::above_right,       predicate::below_left,
    predicate::below_right,       predicate::linked_to_task,
    predicate::linked_to_functionality, predicate::task_uses_functionality,
    predicate::sub_task_of,       predicate::belongs_to_screen,
    predicate::belongs_to_app,
};

/// The eight directions, in the order used wherever directions are enumerated.
inline constexpr std::array spatial_predicates{
    predicate::on_the_left_of, predicate::on_the_right_of, predicate::above,
    predicate::below,          predicate::above_left,      predicate::above_right,
    predicate::below_left,     predicate::below_right,
};

constexpr auto is_spatial(predicate p) noexcept -> bool {
    switch (p) {
    case predicate::on_the_left_of:
    case predicate::on_the_right_of:
    case predicate::above:
    case predicate::below:
    case predicate::above_left:
    case predicate::above_right:
    case predicate::below_left:
    case predicate::below_right:
        return true;
    default:
        return false;
    }
}

/// Inverse of a spatial predicate; identity for the others.
constexpr auto inverse(predicate p) noexcept -> predicate {
    switch (p) {
    case predicate::on_the_left_of: return predicate::on_the_right_of;
    case predicate::on_the_right_of: return predicate::on_the_left_of;
    case predicate::above: return predicate::below;
    case predicate::below: return predicate::above;
    case predicate::above_left: return predicate::below_right;
    case predicate::below_right: return predicate::above_left;
    case predicate::above_right: return predicate::below_left;
    case predicate::below_left: return predicate::above_right;
    default: return p;
    }
}

/// Canonical orientation emitted by layout derivation: right, below and the two lower diagonals.
constexpr auto is_canonical_direction(predicate p) noexcept -> bool {
    return p == predicate::on_the_right_of || p == predicate::below ||
           p == predicate::below_left || p == predicate::below_right;
}

/// Sign of the subject's offset from the anchor on each axis (x grows right, y grows down).
struct axis_offset {
    int dx;
    int dy;
};

constexpr auto offset_of(predicate p) noexcept -> axis_offset {
    switch (p) {
    case predicate::on_the_left_of: return {-1, 0};
    case predicate::on_the_right_of: return {1, 0};
    case predicate::above: return {0, -1};
    case predicate::below: return {0, 1};
    case predicate::above_left: return {-1, -1};
    case predicate::above_right: return {1, -1};
    case predicate::below_left: return {-1, 1};
    case predicate::below_right: return {1, 1};
    default: return {0, 0};
    }
}

/// Wire name, e.g. "onTheRightOf".
auto to_string(predicate p) -> std::string_view;

/// Accepts wire names and the short direction names ("right", "belowLeft", ...).
auto parse_predicate(std::string_view text) -> std::optional<predicate>;

} // namespace ontocompo
