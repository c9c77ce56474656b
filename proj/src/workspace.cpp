#include "ontocompo/workspace.hpp"
#include "ontocompo/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ontocompo {

namespace {

constexpr auto composed_base_id = "composed";

auto find_mutable(ui_component& node, std::string_view id) -> ui_component* {
    if (node.id == id) {
        return &node;
    }
    for (auto& child : node.children) {
        if (auto* hit = find_mutable(child, id)) {
            return hit;
        }
    }
    return nullptr;
}

auto child_ids(const ui_component& c) -> std::vector<std::string> {
    std::vector<std::string> out;
    for (const auto& child : c.children) {
        out.push_back(child.id);
    }
    return out;
}

auto to_constraints(const std::vector<triple>& triples) -> std::vector<relative_constraint> {
    std::vector<relative_constraint> out;
    for (const auto& t : triples) {
        out.push_back({t.subject, t.pred, t.object});
    }
    return out;
}

/// Editable constraints of a container: stored positioning, a relative layout, or what its layout shows.
auto constraints_of(const screen& s, const ui_component& container) -> std::vector<relative_constraint> {
    if (auto it = s.positioning.find(container.id); it != s.positioning.end()) {
        return it->second.constraints;
    }
    auto layout = layout_of(s, container.id);
    if (const auto* rel = std::get_if<relative_layout>(&layout)) {
        return greedy_consistent(rel->constraints);
    }
    auto children = child_ids(container);
    return greedy_consistent(to_constraints(derive_relations(children, layout)));
}

/// Solves a container's constraints into its table layout.
auto resolve(screen& s, const ui_component& container, std::vector<relative_constraint> constraints) -> placement {
    auto children = child_ids(container);
    auto solved = solve(children, constraints);
    s.layouts[container.id] = to_table(solved);
    s.positioning[container.id] = relative_layout{std::move(constraints)};
    return solved;
}

class id_renamer {
public:
    explicit id_renamer(std::string app) : m_app(std::move(app)) {}

    auto operator()(const std::string& id) const -> std::string { return copied_id(m_app, id); }

    auto layout(const layout_spec& spec) const -> layout_spec {
        return std::visit(
            [&](const auto& l) -> layout_spec {
                using T = std::decay_t<decltype(l)>;
                T out;
                if constexpr (std::is_same_v<T, absolute_layout>) {
                    for (const auto& [id, r] : l.positions) {
                        out.positions[(*this)(id)] = r;
                    }
                } else if constexpr (std::is_same_v<T, table_layout>) {
                    for (const auto& [id, c] : l.cells) {
                        out.cells[(*this)(id)] = c;
                    }
                } else {
                    out = relative(l);
                }
                return out;
            },
            spec);
    }

    auto relative(const relative_layout& l) const -> relative_layout {
        relative_layout out;
        for (const auto& c : l.constraints) {
            out.constraints.push_back({(*this)(c.subject), c.relation, (*this)(c.anchor)});
        }
        return out;
    }

private:
    std::string m_app;
};

/// Copies a source subtree with renamed ids, carrying its container layouts into `target`.
auto copy_subtree(const ui_component& node, const screen& source, screen& target, const id_renamer& rename,
                  std::vector<std::string>& copied) -> ui_component {
    ui_component out{rename(node.id), node.kind, node.label, {}};
    copied.push_back(node.id);
    if (auto it = source.layouts.find(node.id); it != source.layouts.end()) {
        target.layouts[out.id] = rename.layout(it->second);
    }
    if (auto it = source.positioning.find(node.id); it != source.positioning.end()) {
        target.positioning[out.id] = rename.relative(it->second);
    }
    for (const auto& child : node.children) {
        out.children.push_back(copy_subtree(child, source, target, rename, copied));
    }
    return out;
}

/// Adds the task, its ancestor chain and the functionalities they use.
void copy_task(const application& source, const std::string& task_id, application& into, const id_renamer& rename) {
    const auto* task = find_task(source, task_id);
    if (task == nullptr || find_task(into, rename(task_id)) != nullptr) {
        return;
    }
    if (task->parent) {
        copy_task(source, *task->parent, into, rename);
    }
    task_node copy{rename(task->id), task->name, std::nullopt, {}};
    if (task->parent) {
        copy.parent = rename(*task->parent);
    }
    for (const auto& f : task->functionalities) {
        if (const auto* fn = find_functionality(source, f); fn && !find_functionality(into, rename(f))) {
            into.functionalities.push_back({rename(fn->id), fn->name, fn->signature});
        }
        copy.functionalities.push_back(rename(f));
    }
    into.tasks.push_back(std::move(copy));
}

void copy_links(const application& source, const std::set<std::string>& components, application& into,
                const id_renamer& rename) {
    for (const auto& l : source.links) {
        if (!components.contains(link_ui(l))) {
            continue;
        }
        link copy = l;
        if (const auto* t = std::get_if<ui_task_link>(&l)) {
            copy_task(source, t->task, into, rename);
            copy = ui_task_link{rename(t->ui), rename(t->task)};
        } else {
            const auto& f = std::get<ui_functionality_link>(l);
            if (const auto* fn = find_functionality(source, f.functionality);
                fn && !find_functionality(into, rename(fn->id))) {
                into.functionalities.push_back({rename(fn->id), fn->name, fn->signature});
            }
            copy = ui_functionality_link{rename(f.ui), rename(f.functionality)};
        }
        if (std::find(into.links.begin(), into.links.end(), copy) == into.links.end()) {
            into.links.push_back(std::move(copy));
        }
    }
}

auto sanitize(const std::string& name) -> std::string {
    std::string out;
    for (char ch : name) {
        out += (ch == ' ' || ch == '\t' || ch == '"' || ch == '=' || ch == '#') ? '_' : ch;
    }
    return out;
}

} // namespace

auto copied_id(const std::string& source_app, const std::string& id) -> std::string {
    return source_app + "." + id;
}

workspace::workspace() {
    m_composed.id = composed_base_id;
    m_composed.name = "Composed application";
    refresh();
}

void workspace::refresh() {
    std::vector<const application*> apps;
    for (const auto& a : m_sources) {
        apps.push_back(&a);
    }
    apps.push_back(&m_composed);
    m_store = build_store(apps);
}

auto workspace::source_of(std::string_view component) const -> const application* {
    for (const auto& a : m_sources) {
        if (find_component(a, component) != nullptr) {
            return &a;
        }
    }
    return nullptr;
}

void workspace::load(application app) {
    if (auto violations = validate(app); !violations.empty()) {
        const auto& v = violations.front();
        throw error(v.kind == violation_kind::dangling_reference ? error_code::reference : error_code::invariant,
                    v.message, v.ids.empty() ? std::string{} : v.ids.front());
    }
    for (const auto& s : m_sources) {
        if (s.id == app.id) {
            throw error(error_code::precondition, "application '" + app.id + "' is already loaded", app.id);
        }
    }
    auto composed = m_composed;
    if (app.id == composed.id) {
        if (!composed.screens.empty()) {
            throw error(error_code::precondition,
                        "application id '" + app.id + "' is taken by the composed application", app.id);
        }
        for (int n = 2;; ++n) {
            auto candidate = std::string(composed_base_id) + std::to_string(n);
            if (candidate != app.id && m_store.entity(candidate) == nullptr) {
                composed.id = candidate;
                break;
            }
        }
    }
    auto ids = declared_ids(app);
    ids.push_back(app.id);
    for (const auto& id : ids) {
        if (m_store.entity(id) != nullptr && !(id == app.id && id == m_composed.id)) {
            throw error(error_code::precondition, "identifier '" + id + "' is already used by a loaded application",
                        id);
        }
    }
    auto sources = m_sources;
    sources.push_back(std::move(app));
    std::vector<const application*> refs;
    for (const auto& a : sources) {
        refs.push_back(&a);
    }
    refs.push_back(&composed);
    auto annotations = build_store(refs);

    m_sources = std::move(sources);
    m_composed = std::move(composed);
    m_store = std::move(annotations);
}

void workspace::select(const std::string& component) {
    m_selection = ontocompo::select(m_store, m_selection, component);
}

void workspace::deselect(const std::string& component) {
    m_selection = ontocompo::deselect(m_store, m_selection, component);
}

void workspace::extend_layout(const direction_set& directions, extension_scope scope) {
    m_selection = ontocompo::extend_layout(m_store, m_selection, directions, scope);
}

void workspace::extend_parent() {
    m_selection = ontocompo::extend_parent(m_store, m_selection);
}

void workspace::extend_task() {
    m_selection = ontocompo::extend_task(m_store, m_selection);
}

void workspace::extend_functionality() {
    m_selection = ontocompo::extend_functionality(m_store, m_selection);
}

auto workspace::suggest(help_mode mode) const -> std::vector<suggestion> {
    return ontocompo::suggest(m_store, m_selection, mode);
}

auto workspace::extract(const extraction_target& target) -> std::string {
    if (m_selection.empty()) {
        throw error(error_code::precondition, "the selection is empty", "selection");
    }
    struct picked {
        const application* app;
        const screen* source_screen;
        const ui_component* node;
        std::optional<std::string> parent;
    };
    std::vector<picked> items;
    for (const auto& id : m_selection.items()) {
        const auto* app = source_of(id);
        if (app == nullptr) {
            throw error(error_code::precondition,
                        "'" + id + "' belongs to the composed application; only source components can be extracted",
                        id);
        }
        items.push_back({app, screen_of(*app, id), find_component(*app, id), parent_of(*app, id)});
    }
    // Drop items that a selected ancestor already brings along.
    std::vector<picked> top;
    for (const auto& item : items) {
        bool covered = false;
        for (auto parent = item.parent; parent && !covered; parent = parent_of(*item.app, *parent)) {
            covered = m_selection.contains(*parent);
        }
        if (!covered) {
            top.push_back(item);
        }
    }

    auto composed = m_composed;
    std::size_t screen_index = 0;
    if (const auto* existing = std::get_if<existing_screen>(&target)) {
        auto it = std::find_if(composed.screens.begin(), composed.screens.end(),
                               [&](const screen& s) { return s.id == existing->id; });
        if (it == composed.screens.end()) {
            throw error(error_code::unknown_id, "unknown composed screen '" + existing->id + "'", existing->id);
        }
        screen_index = static_cast<std::size_t>(it - composed.screens.begin());
    } else {
        auto name = std::get<new_screen>(target).name;
        if (name.empty()) {
            name = "Screen" + std::to_string(composed.screens.size() + 1);
        }
        const auto base = copied_id(composed.id, sanitize(name));
        auto id = base;
        for (int n = 2; m_store.entity(id) != nullptr || m_store.entity(id + ".root") != nullptr; ++n) {
            id = base + "-" + std::to_string(n);
        }
        composed.screens.push_back(screen{id, name, ui_component{id + ".root", component_kind::container, name, {}}, {}, {}});
        screen_index = composed.screens.size() - 1;
    }
    auto& dest = composed.screens[screen_index];

    // Newly copied top-level items grouped by the source container they sat in.
    std::map<std::pair<const screen*, std::string>, std::vector<std::string>> groups;
    std::map<const application*, std::set<std::string>> copied_per_app;
    for (const auto& item : top) {
        const id_renamer rename(item.app->id);
        const auto new_id = rename(item.node->id);
        if (find_component(composed, new_id) != nullptr) {
            continue;
        }
        std::vector<std::string> subtree;
        auto copy = copy_subtree(*item.node, *item.source_screen, dest, rename, subtree);
        for (const auto& id : subtree) {
            if (find_component(composed, rename(id)) != nullptr) {
                throw error(error_code::precondition,
                            "'" + id + "' was already extracted on its own; its container cannot be copied around it",
                            id);
            }
        }
        dest.root.children.push_back(std::move(copy));
        copied_per_app[item.app].insert(subtree.begin(), subtree.end());
        if (item.parent) {
            groups[{item.source_screen, *item.parent}].push_back(item.node->id);
        }
    }
    for (const auto& [app, ids] : copied_per_app) {
        copy_links(*app, ids, composed, id_renamer(app->id));
    }

    // Relations that held among copied siblings become constraints of the destination root.
    auto constraints = constraints_of(dest, dest.root);
    for (const auto& [key, ids] : groups) {
        const auto& [source_screen, parent_id] = key;
        if (ids.size() < 2) {
            continue;
        }
        const auto* app = source_of(ids.front());
        const id_renamer rename(app->id);
        const auto* parent = find_component(*app, parent_id);
        const std::set<std::string> members(ids.begin(), ids.end());
        for (const auto& t : derive_relations(child_ids(*parent), layout_of(*source_screen, parent_id))) {
            if (members.contains(t.subject) && members.contains(t.object)) {
                constraints.push_back({rename(t.subject), t.pred, rename(t.object)});
            }
        }
    }
    resolve(dest, dest.root, greedy_consistent(constraints));

    if (auto violations = validate(composed); !violations.empty()) {
        throw error(error_code::invariant, "extraction produced an invalid application: " + violations.front().message,
                    violations.front().ids.empty() ? std::string{} : violations.front().ids.front());
    }
    const auto screen_id = dest.id;
    std::vector<const application*> refs;
    for (const auto& a : m_sources) {
        refs.push_back(&a);
    }
    refs.push_back(&composed);
    auto annotations = build_store(refs);

    m_composed = std::move(composed);
    m_store = std::move(annotations);
    m_selection.clear();
    return screen_id;
}

auto workspace::place(const std::string& screen_id, const relative_constraint& update) -> placement {
    auto composed = m_composed;
    auto it = std::find_if(composed.screens.begin(), composed.screens.end(),
                           [&](const screen& s) { return s.id == screen_id; });
    if (it == composed.screens.end()) {
        throw error(error_code::unknown_id, "unknown composed screen '" + screen_id + "'", screen_id);
    }
    auto& dest = *it;
    for (const auto* id : {&update.subject, &update.anchor}) {
        if (find_mutable(dest.root, *id) == nullptr) {
            throw error(error_code::unknown_id, "'" + *id + "' is not on screen '" + screen_id + "'", *id);
        }
    }
    if (update.subject == update.anchor) {
        throw error(error_code::precondition, "'" + update.subject + "' cannot be positioned relative to itself",
                    update.subject);
    }
    const application view{composed.id, composed.name, {dest}, {}, {}, {}};
    const auto parent = parent_of(view, update.subject);
    if (!parent || parent != parent_of(view, update.anchor)) {
        throw error(error_code::precondition,
                    "'" + update.subject + "' and '" + update.anchor + "' are not in the same container",
                    update.subject);
    }
    const auto* container = find_mutable(dest.root, *parent);
    auto constraints = ontocompo::place(constraints_of(dest, *container), update);
    auto solved = resolve(dest, *container, std::move(constraints));

    std::vector<const application*> refs;
    for (const auto& a : m_sources) {
        refs.push_back(&a);
    }
    refs.push_back(&composed);
    auto annotations = build_store(refs);
    m_composed = std::move(composed);
    m_store = std::move(annotations);
    return solved;
}

auto workspace::export_document() const -> std::string {
    if (m_composed.screens.empty()) {
        throw error(error_code::precondition, "the composed application is empty", m_composed.id);
    }
    return serialize_application(m_composed);
}

} // namespace ontocompo
