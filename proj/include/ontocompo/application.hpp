#pragma once

#include "ontocompo/vocabulary.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ontocompo {

enum class component_kind { container, button, textfield, label, list, image, custom };

auto to_string(component_kind kind) -> std::string_view;
auto parse_component_kind(std::string_view text) -> std::optional<component_kind>;

struct ui_component {
    std::string id;
    component_kind kind = component_kind::container;
    std::string label;
    std::vector<ui_component> children;

    auto operator==(const ui_component&) const -> bool = default;
};

/// Pixel rectangle of an absolutely positioned component.
struct rect {
    int x = 0;
    int y = 0;
    int w = 1;
    int h = 1;

    auto right() const noexcept -> int { return x + w; }
    auto bottom() const noexcept -> int { return y + h; }
    auto operator==(const rect&) const -> bool = default;
};

struct table_cell {
    int row = 0;
    int col = 0;
    int row_span = 1;
    int col_span = 1;

    auto operator==(const table_cell&) const -> bool = default;
};

/// "subject is <relation> anchor", e.g. (B, onTheRightOf, A).
struct relative_constraint {
    std::string subject;
    predicate relation = predicate::on_the_right_of;
    std::string anchor;

    auto operator==(const relative_constraint&) const -> bool = default;
    auto operator<=>(const relative_constraint&) const = default;
};

struct absolute_layout {
    std::map<std::string, rect> positions;
    auto operator==(const absolute_layout&) const -> bool = default;
};

struct table_layout {
    std::map<std::string, table_cell> cells;
    auto operator==(const table_layout&) const -> bool = default;
};

struct relative_layout {
    std::vector<relative_constraint> constraints;
    auto operator==(const relative_layout&) const -> bool = default;
};

using layout_spec = std::variant<absolute_layout, table_layout, relative_layout>;

struct screen {
    std::string id;
    std::string name;
    ui_component root;
    /// container id -> layout; a container without an entry has an empty relative layout
    std::map<std::string, layout_spec> layouts;
    /// container id -> editable constraints behind a solved table layout (composed screens)
    std::map<std::string, relative_layout> positioning;

    auto operator==(const screen&) const -> bool = default;
};

struct task_node {
    std::string id;
    std::string name;
    std::optional<std::string> parent;
    std::vector<std::string> functionalities;

    auto operator==(const task_node&) const -> bool = default;
};

struct functionality {
    std::string id;
    std::string name;
    std::string signature;

    auto operator==(const functionality&) const -> bool = default;
};

struct ui_task_link {
    std::string ui;
    std::string task;
    auto operator==(const ui_task_link&) const -> bool = default;
};

struct ui_functionality_link {
    std::string ui;
    std::string functionality;
    auto operator==(const ui_functionality_link&) const -> bool = default;
};

using link = std::variant<ui_task_link, ui_functionality_link>;

auto link_ui(const link& l) -> const std::string&;
auto link_target(const link& l) -> const std::string&;

struct application {
    std::string id;
    std::string name;
    std::vector<screen> screens;
    std::vector<task_node> tasks;
    std::vector<functionality> functionalities;
    std::vector<link> links;

    auto operator==(const application&) const -> bool = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class violation_kind {
    duplicate_id,
    dangling_reference,
    children_on_leaf,
    layout_not_container,
    layout_key_not_child,
    missing_placement,
    bad_geometry,
    overlap,
    relative_not_siblings,
    relation_not_spatial,
    self_anchored,
    task_cycle,
    duplicate_link,
    link_kind_mismatch,
};

auto to_string(violation_kind kind) -> std::string_view;

struct violation {
    violation_kind kind;
    std::vector<std::string> ids;
    std::string message;

    auto operator==(const violation&) const -> bool = default;
};

/// Checks every structural invariant; an empty result means the application is valid.
auto validate(const application& app) -> std::vector<violation>;

// ---------------------------------------------------------------------------
// Document format

/// Parses and validates a JSON description. Throws `error` with code syntax
/// (with byte offset or key path), reference or invariant.
auto parse_application(std::string_view text) -> application;

/// Deterministic JSON rendering; re-parses to an equal value.
auto serialize_application(const application& app) -> std::string;

// ---------------------------------------------------------------------------
// Tree queries

auto find_component(const application& app, std::string_view id) -> const ui_component*;
auto find_screen(const application& app, std::string_view id) -> const screen*;
auto find_task(const application& app, std::string_view id) -> const task_node*;
auto find_functionality(const application& app, std::string_view id) -> const functionality*;

/// Screen whose tree holds the component, or nullptr.
auto screen_of(const application& app, std::string_view component_id) -> const screen*;

/// Containing component, or nullopt for a screen root. Throws unknown_id.
auto parent_of(const application& app, std::string_view component_id) -> std::optional<std::string>;

/// Pre-order walk; the callback receives the component and its parent (nullptr for roots).
void for_each_component(const ui_component& root,
                        const std::function<void(const ui_component&, const ui_component*)>& fn);
void for_each_component(const application& app,
                        const std::function<void(const ui_component&, const ui_component*)>& fn);

/// Every identifier declared by the application (screens, components, tasks, functionalities).
auto declared_ids(const application& app) -> std::vector<std::string>;

/// The layout in effect for a container (empty relative when undeclared).
auto layout_of(const screen& s, std::string_view container_id) -> layout_spec;

} // namespace ontocompo
