#include "ontocompo/selection.hpp"
#include "ontocompo/error.hpp"

#include <algorithm>
#include <set>

namespace ontocompo {

selection::selection(std::initializer_list<std::string> ids) {
    for (const auto& id : ids) {
        add(id);
    }
}

auto selection::contains(std::string_view id) const -> bool {
    return std::find(m_items.begin(), m_items.end(), id) != m_items.end();
}

auto selection::add(const std::string& id) -> bool {
    if (contains(id)) {
        return false;
    }
    m_items.push_back(id);
    return true;
}

auto selection::erase(std::string_view id) -> bool {
    auto it = std::find(m_items.begin(), m_items.end(), id);
    if (it == m_items.end()) {
        return false;
    }
    m_items.erase(it);
    return true;
}

namespace {

auto direction_index(predicate p) -> std::size_t {
    auto it = std::find(spatial_predicates.begin(), spatial_predicates.end(), p);
    if (it == spatial_predicates.end()) {
        throw error(error_code::precondition, std::string(to_string(p)) + " is not a direction");
    }
    return static_cast<std::size_t>(it - spatial_predicates.begin());
}

} // namespace

direction_set::direction_set(std::initializer_list<predicate> directions) {
    for (auto d : directions) {
        set(d);
    }
}

void direction_set::set(predicate direction, bool on) {
    m_on[direction_index(direction)] = on;
}

auto direction_set::test(predicate direction) const -> bool {
    return m_on[direction_index(direction)];
}

auto direction_set::any() const -> bool {
    return std::find(m_on.begin(), m_on.end(), true) != m_on.end();
}

auto direction_set::toggled() const -> std::vector<predicate> {
    std::vector<predicate> out;
    for (std::size_t i = 0; i < m_on.size(); ++i) {
        if (m_on[i]) {
            out.push_back(spatial_predicates[i]);
        }
    }
    return out;
}

auto to_string(extension_scope scope) -> std::string_view {
    switch (scope) {
    case extension_scope::first: return "first";
    case extension_scope::last: return "last";
    case extension_scope::all: return "all";
    }
    return "?";
}

auto parse_scope(std::string_view text) -> std::optional<extension_scope> {
    for (auto s : {extension_scope::first, extension_scope::last, extension_scope::all}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    return std::nullopt;
}

auto to_string(suggestion_source source) -> std::string_view {
    switch (source) {
    case suggestion_source::task: return "task";
    case suggestion_source::functionality: return "functionality";
    case suggestion_source::layout: return "layout";
    }
    return "?";
}

auto to_string(help_mode mode) -> std::string_view {
    switch (mode) {
    case help_mode::tasks: return "tasks";
    case help_mode::functionalities: return "functionalities";
    case help_mode::layout: return "layout";
    case help_mode::complete: return "complete";
    }
    return "?";
}

auto parse_help_mode(std::string_view text) -> std::optional<help_mode> {
    for (auto m : {help_mode::tasks, help_mode::functionalities, help_mode::layout, help_mode::complete}) {
        if (to_string(m) == text) {
            return m;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

void require_component(const store& s, const std::string& id) {
    const auto* info = s.entity(id);
    if (info == nullptr || info->kind != entity_kind::component) {
        throw error(error_code::unknown_id, "unknown component '" + id + "'", id);
    }
}

void require_nonempty(const selection& sel) {
    if (sel.empty()) {
        throw error(error_code::precondition, "the selection is empty", "selection");
    }
}

template <typename Ids>
void append_all(selection& sel, const Ids& ids) {
    for (const auto& id : ids) {
        sel.add(id);
    }
}

/// Components bearing (c, d, seed) for any toggled d.
auto layout_neighbours(const store& s, const std::string& seed, const std::vector<predicate>& directions)
    -> std::set<std::string> {
    std::set<std::string> out;
    for (auto d : directions) {
        const auto& found = s.subjects(d, seed);
        out.insert(found.begin(), found.end());
    }
    return out;
}

auto tasks_of(const store& s, const std::string& component) -> const store::id_set& {
    return s.objects(component, predicate::linked_to_task);
}

auto components_of_task(const store& s, const std::string& task) -> const store::id_set& {
    return s.subjects(predicate::linked_to_task, task);
}

/// Functionalities reached by one component, directly or through its tasks.
auto functionalities_of(const store& s, const std::string& component) -> std::set<std::string> {
    const auto& direct = s.objects(component, predicate::linked_to_functionality);
    std::set<std::string> out(direct.begin(), direct.end());
    for (const auto& t : tasks_of(s, component)) {
        const auto& used = s.objects(t, predicate::task_uses_functionality);
        out.insert(used.begin(), used.end());
    }
    return out;
}

/// Components reaching the functionality, directly or through a task using it.
auto components_of_functionality(const store& s, const std::string& f) -> std::set<std::string> {
    const auto& direct = s.subjects(predicate::linked_to_functionality, f);
    std::set<std::string> out(direct.begin(), direct.end());
    for (const auto& t : s.subjects(predicate::task_uses_functionality, f)) {
        const auto& linked = components_of_task(s, t);
        out.insert(linked.begin(), linked.end());
    }
    return out;
}

auto reachable_functionalities(const store& s, const selection& sel) -> std::set<std::string> {
    std::set<std::string> out;
    for (const auto& c : sel.items()) {
        auto found = functionalities_of(s, c);
        out.insert(found.begin(), found.end());
    }
    return out;
}

template <typename Ids>
auto not_selected(const selection& sel, const Ids& ids) -> std::vector<std::string> {
    std::vector<std::string> out;
    for (const auto& id : ids) {
        if (!sel.contains(id)) {
            out.push_back(id);
        }
    }
    return out;
}

auto entity_name(const store& s, const std::string& id) -> std::string {
    const auto* info = s.entity(id);
    return info == nullptr || info->name.empty() ? id : info->name;
}

auto count_phrase(std::size_t n) -> std::string {
    return std::to_string(n) + (n == 1 ? " element" : " elements");
}

} // namespace

auto select(const store& s, selection sel, const std::string& id) -> selection {
    require_component(s, id);
    sel.add(id);
    return sel;
}

auto deselect(const store& s, selection sel, const std::string& id) -> selection {
    require_component(s, id);
    sel.erase(id);
    return sel;
}

auto extend_layout(const store& s, selection sel, const direction_set& directions, extension_scope scope)
    -> selection {
    require_nonempty(sel);
    if (!directions.any()) {
        throw error(error_code::precondition, "no extension direction is toggled", "directions");
    }
    std::vector<std::string> seeds;
    switch (scope) {
    case extension_scope::first: seeds = {sel.first()}; break;
    case extension_scope::last: seeds = {sel.last()}; break;
    case extension_scope::all: seeds = sel.items(); break;
    }
    const auto toggled = directions.toggled();
    for (const auto& seed : seeds) {
        append_all(sel, layout_neighbours(s, seed, toggled));
    }
    return sel;
}

auto extend_parent(const store& s, selection sel) -> selection {
    require_nonempty(sel);
    append_all(sel, s.subjects(predicate::contains, sel.last()));
    return sel;
}

auto extend_task(const store& s, selection sel) -> selection {
    require_nonempty(sel);
    std::set<std::string> found;
    for (const auto& t : tasks_of(s, sel.last())) {
        const auto& linked = components_of_task(s, t);
        found.insert(linked.begin(), linked.end());
    }
    append_all(sel, found);
    return sel;
}

auto extend_functionality(const store& s, selection sel) -> selection {
    require_nonempty(sel);
    std::set<std::string> found;
    for (const auto& f : reachable_functionalities(s, sel)) {
        auto linked = components_of_functionality(s, f);
        found.insert(linked.begin(), linked.end());
    }
    append_all(sel, found);
    return sel;
}

auto suggest(const store& s, const selection& sel, help_mode mode) -> std::vector<suggestion> {
    require_nonempty(sel);
    std::vector<suggestion> out;
    const bool complete = mode == help_mode::complete;

    if (complete || mode == help_mode::tasks) {
        for (const auto& t : tasks_of(s, sel.last())) {
            auto candidates = not_selected(sel, components_of_task(s, t));
            if (!candidates.empty()) {
                auto question = "Also select the " + count_phrase(candidates.size()) + " linked to task '" +
                                entity_name(s, t) + "'?";
                out.push_back({std::move(question), std::move(candidates), suggestion_source::task, t});
            }
        }
    }
    if (complete || mode == help_mode::functionalities) {
        for (const auto& f : reachable_functionalities(s, sel)) {
            auto candidates = not_selected(sel, components_of_functionality(s, f));
            if (!candidates.empty()) {
                auto question = "Also select the " + count_phrase(candidates.size()) + " using functionality '" +
                                entity_name(s, f) + "'?";
                out.push_back({std::move(question), std::move(candidates), suggestion_source::functionality, f});
            }
        }
    }
    if (complete || mode == help_mode::layout) {
        for (auto d : spatial_predicates) {
            auto candidates = not_selected(sel, s.subjects(d, sel.last()));
            if (!candidates.empty()) {
                auto question = "Also select the " + count_phrase(candidates.size()) + " " +
                                std::string(to_string(d)) + " '" + entity_name(s, sel.last()) + "'?";
                out.push_back(
                    {std::move(question), std::move(candidates), suggestion_source::layout, std::string(to_string(d))});
            }
        }
    }
    return out;
}

} // namespace ontocompo
