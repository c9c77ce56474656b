#pragma once

#include "ontocompo/store.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ontocompo {

/// Insertion-ordered, duplicate-free list of component ids.
class selection {
public:
    selection() = default;
    selection(std::initializer_list<std::string> ids);

    auto items() const noexcept -> const std::vector<std::string>& { return m_items; }
    auto empty() const noexcept -> bool { return m_items.empty(); }
    auto size() const noexcept -> std::size_t { return m_items.size(); }
    auto contains(std::string_view id) const -> bool;
    auto first() const -> const std::string& { return m_items.front(); }
    auto last() const -> const std::string& { return m_items.back(); }

    /// Appends if absent; returns whether it was added.
    auto add(const std::string& id) -> bool;
    auto erase(std::string_view id) -> bool;
    void clear() noexcept { m_items.clear(); }

    auto operator==(const selection&) const -> bool = default;

private:
    std::vector<std::string> m_items;
};

/// One toggle per spatial direction.
class direction_set {
public:
    direction_set() = default;
    direction_set(std::initializer_list<predicate> directions);

    void set(predicate direction, bool on = true);
    auto test(predicate direction) const -> bool;
    auto any() const -> bool;
    /// Toggled directions, in vocabulary order.
    auto toggled() const -> std::vector<predicate>;

private:
    std::array<bool, spatial_predicates.size()> m_on{};
};

enum class extension_scope { first, last, all };

auto to_string(extension_scope scope) -> std::string_view;
auto parse_scope(std::string_view text) -> std::optional<extension_scope>;

enum class suggestion_source { task, functionality, layout };
enum class help_mode { tasks, functionalities, layout, complete };

auto to_string(suggestion_source source) -> std::string_view;
auto to_string(help_mode mode) -> std::string_view;
auto parse_help_mode(std::string_view text) -> std::optional<help_mode>;

struct suggestion {
    std::string question;
    std::vector<std::string> candidates;
    suggestion_source source;
    /// The task id, functionality id or direction name the question is about.
    std::string about;

    auto operator==(const suggestion&) const -> bool = default;
};

/// Throws unknown_id unless `id` is a component known to the store.
auto select(const store& s, selection sel, const std::string& id) -> selection;
auto deselect(const store& s, selection sel, const std::string& id) -> selection;

/// Adds every c with (c, d, seed) for the seeds picked by `scope` and each toggled d.
auto extend_layout(const store& s, selection sel, const direction_set& directions, extension_scope scope)
    -> selection;

/// Adds the container of the last selected component.
auto extend_parent(const store& s, selection sel) -> selection;

/// Adds every component sharing a task with the last selected component.
auto extend_task(const store& s, selection sel) -> selection;

/// Adds every component reaching, directly or through its tasks, a functionality
/// reached by any selected component.
auto extend_functionality(const store& s, selection sel) -> selection;

/// What each extension would add, as questions; never modifies anything.
auto suggest(const store& s, const selection& sel, help_mode mode) -> std::vector<suggestion>;

} // namespace ontocompo
