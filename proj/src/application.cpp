#include "ontocompo/application.hpp"
#include "ontocompo/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace ontocompo {

using nlohmann::json;

auto to_string(component_kind kind) -> std::string_view {
    switch (kind) {
    case component_kind::container: return "container";
    case component_kind::button: return "button";
    case component_kind::textfield: return "textfield";
    case component_kind::label: return "label";
    case component_kind::list: return "list";
    case component_kind::image: return "image";
    case component_kind::custom: return "custom";
    }
    return "custom";
}

auto parse_component_kind(std::string_view text) -> std::optional<component_kind> {
    for (auto kind : {component_kind::container, component_kind::button, component_kind::textfield,
                      component_kind::label, component_kind::list, component_kind::image,
                      component_kind::custom}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    return std::nullopt;
}

auto link_ui(const link& l) -> const std::string& {
    return std::visit([](const auto& v) -> const std::string& { return v.ui; }, l);
}

auto link_target(const link& l) -> const std::string& {
    if (const auto* t = std::get_if<ui_task_link>(&l)) {
        return t->task;
    }
    return std::get<ui_functionality_link>(l).functionality;
}

auto to_string(violation_kind kind) -> std::string_view {
    switch (kind) {
    case violation_kind::duplicate_id: return "duplicate_id";
    case violation_kind::dangling_reference: return "dangling_reference";
    case violation_kind::children_on_leaf: return "children_on_leaf";
    case violation_kind::layout_not_container: return "layout_not_container";
    case violation_kind::layout_key_not_child: return "layout_key_not_child";
    case violation_kind::missing_placement: return "missing_placement";
    case violation_kind::bad_geometry: return "bad_geometry";
    case violation_kind::overlap: return "overlap";
    case violation_kind::relative_not_siblings: return "relative_not_siblings";
    case violation_kind::relation_not_spatial: return "relation_not_spatial";
    case violation_kind::self_anchored: return "self_anchored";
    case violation_kind::task_cycle: return "task_cycle";
    case violation_kind::duplicate_link: return "duplicate_link";
    case violation_kind::link_kind_mismatch: return "link_kind_mismatch";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Tree queries

void for_each_component(const ui_component& root,
                        const std::function<void(const ui_component&, const ui_component*)>& fn) {
    struct frame {
        const ui_component* node;
        const ui_component* parent;
    };
    std::vector<frame> stack{{&root, nullptr}};
    while (!stack.empty()) {
        auto [node, parent] = stack.back();
        stack.pop_back();
        fn(*node, parent);
        for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
            stack.push_back({&*it, node});
        }
    }
}

void for_each_component(const application& app,
                        const std::function<void(const ui_component&, const ui_component*)>& fn) {
    for (const auto& s : app.screens) {
        for_each_component(s.root, fn);
    }
}

namespace {

auto find_in_tree(const ui_component& node, std::string_view id, const ui_component** parent_out,
                  const ui_component* parent) -> const ui_component* {
    if (node.id == id) {
        if (parent_out != nullptr) {
            *parent_out = parent;
        }
        return &node;
    }
    for (const auto& child : node.children) {
        if (const auto* hit = find_in_tree(child, id, parent_out, &node)) {
            return hit;
        }
    }
    return nullptr;
}

} // namespace

auto find_component(const application& app, std::string_view id) -> const ui_component* {
    for (const auto& s : app.screens) {
        if (const auto* hit = find_in_tree(s.root, id, nullptr, nullptr)) {
            return hit;
        }
    }
    return nullptr;
}

auto find_screen(const application& app, std::string_view id) -> const screen* {
    auto it = std::find_if(app.screens.begin(), app.screens.end(),
                           [&](const screen& s) { return s.id == id; });
    return it == app.screens.end() ? nullptr : &*it;
}

auto find_task(const application& app, std::string_view id) -> const task_node* {
    auto it = std::find_if(app.tasks.begin(), app.tasks.end(),
                           [&](const task_node& t) { return t.id == id; });
    return it == app.tasks.end() ? nullptr : &*it;
}

auto find_functionality(const application& app, std::string_view id) -> const functionality* {
    auto it = std::find_if(app.functionalities.begin(), app.functionalities.end(),
                           [&](const functionality& f) { return f.id == id; });
    return it == app.functionalities.end() ? nullptr : &*it;
}

auto screen_of(const application& app, std::string_view component_id) -> const screen* {
    for (const auto& s : app.screens) {
        if (find_in_tree(s.root, component_id, nullptr, nullptr) != nullptr) {
            return &s;
        }
    }
    return nullptr;
}

auto parent_of(const application& app, std::string_view component_id) -> std::optional<std::string> {
    for (const auto& s : app.screens) {
        const ui_component* parent = nullptr;
        if (find_in_tree(s.root, component_id, &parent, nullptr) != nullptr) {
            if (parent == nullptr) {
                return std::nullopt;
            }
            return parent->id;
        }
    }
    throw error(error_code::unknown_id, "unknown component '" + std::string(component_id) + "'",
                std::string(component_id));
}

auto declared_ids(const application& app) -> std::vector<std::string> {
    std::vector<std::string> ids;
    for (const auto& s : app.screens) {
        ids.push_back(s.id);
    }
    for_each_component(app, [&](const ui_component& c, const ui_component*) { ids.push_back(c.id); });
    for (const auto& t : app.tasks) {
        ids.push_back(t.id);
    }
    for (const auto& f : app.functionalities) {
        ids.push_back(f.id);
    }
    return ids;
}

auto layout_of(const screen& s, std::string_view container_id) -> layout_spec {
    auto it = s.layouts.find(std::string(container_id));
    if (it == s.layouts.end()) {
        return relative_layout{};
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

auto sorted_pair(const std::string& a, const std::string& b) -> std::vector<std::string> {
    return a < b ? std::vector{a, b} : std::vector{b, a};
}

auto open_overlap(int a_lo, int a_hi, int b_lo, int b_hi) -> bool {
    return a_lo < b_hi && b_lo < a_hi;
}

class validator {
public:
    explicit validator(const application& app) : m_app(app) {}

    auto run() -> std::vector<violation> {
        check_ids();
        for (const auto& s : m_app.screens) {
            check_screen(s);
        }
        check_tasks();
        check_links();
        return std::move(m_out);
    }

private:
    enum class entity { screen, component, task, functionality };

    void report(violation_kind kind, std::vector<std::string> ids, std::string message) {
        m_out.push_back({kind, std::move(ids), std::move(message)});
    }

    void declare(const std::string& id, entity kind) {
        auto [it, inserted] = m_kinds.emplace(id, kind);
        if (!inserted && m_reported_duplicates.insert(id).second) {
            report(violation_kind::duplicate_id, {id}, "identifier '" + id + "' is declared more than once");
        }
    }

    void check_ids() {
        for (const auto& s : m_app.screens) {
            declare(s.id, entity::screen);
        }
        for_each_component(m_app, [&](const ui_component& c, const ui_component*) {
            declare(c.id, entity::component);
            if (c.kind != component_kind::container && !c.children.empty()) {
                report(violation_kind::children_on_leaf, {c.id},
                       "component '" + c.id + "' of kind " + std::string(to_string(c.kind)) +
                           " has children");
            }
        });
        for (const auto& t : m_app.tasks) {
            declare(t.id, entity::task);
        }
        for (const auto& f : m_app.functionalities) {
            declare(f.id, entity::functionality);
        }
    }

    auto is(const std::string& id, entity kind) const -> bool {
        auto it = m_kinds.find(id);
        return it != m_kinds.end() && it->second == kind;
    }

    void check_relative(const std::string& container, const std::vector<relative_constraint>& constraints,
                        const std::set<std::string>& children) {
        for (const auto& c : constraints) {
            if (!is_spatial(c.relation)) {
                report(violation_kind::relation_not_spatial, {c.subject, c.anchor},
                       "relation " + std::string(to_string(c.relation)) + " in container '" + container +
                           "' is not spatial");
            } else if (c.subject == c.anchor) {
                report(violation_kind::self_anchored, {c.subject},
                       "component '" + c.subject + "' is positioned relative to itself");
            } else if (!children.contains(c.subject) || !children.contains(c.anchor)) {
                report(violation_kind::relative_not_siblings, sorted_pair(c.subject, c.anchor),
                       "constraint between '" + c.subject + "' and '" + c.anchor +
                           "' does not relate two children of '" + container + "'");
            }
        }
    }

    template <typename Value>
    auto check_keys(const std::string& container, const std::map<std::string, Value>& placed,
                    const std::set<std::string>& children) -> void {
        for (const auto& [id, value] : placed) {
            if (!children.contains(id)) {
                report(violation_kind::layout_key_not_child, {id},
                       "'" + id + "' is placed in '" + container + "' but is not one of its children");
            }
        }
        for (const auto& child : children) {
            if (!placed.contains(child)) {
                report(violation_kind::missing_placement, {child},
                       "child '" + child + "' of '" + container + "' has no placement");
            }
        }
    }

    void check_absolute(const std::string& container, const absolute_layout& layout,
                        const std::set<std::string>& children) {
        check_keys(container, layout.positions, children);
        for (const auto& [id, r] : layout.positions) {
            if (r.w <= 0 || r.h <= 0) {
                report(violation_kind::bad_geometry, {id}, "rectangle of '" + id + "' has non-positive size");
            }
        }
        for (auto a = layout.positions.begin(); a != layout.positions.end(); ++a) {
            for (auto b = std::next(a); b != layout.positions.end(); ++b) {
                const auto& ra = a->second;
                const auto& rb = b->second;
                if (ra.w > 0 && ra.h > 0 && rb.w > 0 && rb.h > 0 &&
                    open_overlap(ra.x, ra.right(), rb.x, rb.right()) &&
                    open_overlap(ra.y, ra.bottom(), rb.y, rb.bottom())) {
                    report(violation_kind::overlap, {a->first, b->first},
                           "rectangles of '" + a->first + "' and '" + b->first + "' overlap");
                }
            }
        }
    }

    void check_table(const std::string& container, const table_layout& layout,
                     const std::set<std::string>& children) {
        check_keys(container, layout.cells, children);
        auto good = [](const table_cell& c) {
            return c.row >= 0 && c.col >= 0 && c.row_span >= 1 && c.col_span >= 1;
        };
        for (const auto& [id, cell] : layout.cells) {
            if (!good(cell)) {
                report(violation_kind::bad_geometry, {id}, "cell of '" + id + "' has an invalid position or span");
            }
        }
        for (auto a = layout.cells.begin(); a != layout.cells.end(); ++a) {
            for (auto b = std::next(a); b != layout.cells.end(); ++b) {
                const auto& ca = a->second;
                const auto& cb = b->second;
                if (good(ca) && good(cb) && open_overlap(ca.col, ca.col + ca.col_span, cb.col, cb.col + cb.col_span) &&
                    open_overlap(ca.row, ca.row + ca.row_span, cb.row, cb.row + cb.row_span)) {
                    report(violation_kind::overlap, {a->first, b->first},
                           "cells of '" + a->first + "' and '" + b->first + "' overlap");
                }
            }
        }
    }

    auto container_children(const screen& s, const std::string& container_id)
        -> std::optional<std::set<std::string>> {
        const auto* node = find_in_tree(s.root, container_id, nullptr, nullptr);
        if (node == nullptr || node->kind != component_kind::container) {
            report(violation_kind::layout_not_container, {container_id},
                   "layout key '" + container_id + "' is not a container of screen '" + s.id + "'");
            return std::nullopt;
        }
        std::set<std::string> children;
        for (const auto& c : node->children) {
            children.insert(c.id);
        }
        return children;
    }

    void check_screen(const screen& s) {
        for (const auto& [container, layout] : s.layouts) {
            auto children = container_children(s, container);
            if (!children) {
                continue;
            }
            std::visit(
                [&](const auto& l) {
                    using T = std::decay_t<decltype(l)>;
                    if constexpr (std::is_same_v<T, absolute_layout>) {
                        check_absolute(container, l, *children);
                    } else if constexpr (std::is_same_v<T, table_layout>) {
                        check_table(container, l, *children);
                    } else {
                        check_relative(container, l.constraints, *children);
                    }
                },
                layout);
        }
        for (const auto& [container, layout] : s.positioning) {
            if (auto children = container_children(s, container)) {
                check_relative(container, layout.constraints, *children);
            }
        }
    }

    void check_tasks() {
        std::unordered_map<std::string, const task_node*> by_id;
        for (const auto& t : m_app.tasks) {
            by_id.emplace(t.id, &t);
            if (t.parent && !is(*t.parent, entity::task)) {
                report(violation_kind::dangling_reference, {*t.parent},
                       "task '" + t.id + "' has unknown parent '" + *t.parent + "'");
            }
            for (const auto& f : t.functionalities) {
                if (!is(f, entity::functionality)) {
                    report(violation_kind::dangling_reference, {f},
                           "task '" + t.id + "' uses unknown functionality '" + f + "'");
                }
            }
        }
        // parent pointers: each node has out-degree <= 1, so cycles are disjoint loops
        enum class state { fresh, on_path, done };
        std::unordered_map<std::string, state> marks;
        for (const auto& t : m_app.tasks) {
            if (marks[t.id] != state::fresh) {
                continue;
            }
            std::vector<std::string> path;
            std::string current = t.id;
            while (true) {
                auto& mark = marks[current];
                if (mark == state::done) {
                    break;
                }
                if (mark == state::on_path) {
                    auto start = std::find(path.begin(), path.end(), current);
                    std::vector<std::string> cycle(start, path.end());
                    std::sort(cycle.begin(), cycle.end());
                    std::string names;
                    for (const auto& id : cycle) {
                        names += (names.empty() ? "" : ", ") + id;
                    }
                    report(violation_kind::task_cycle, cycle, "task parents form a cycle: " + names);
                    break;
                }
                mark = state::on_path;
                path.push_back(current);
                auto it = by_id.find(current);
                if (it == by_id.end() || !it->second->parent || !by_id.contains(*it->second->parent)) {
                    break;
                }
                current = *it->second->parent;
            }
            for (const auto& id : path) {
                marks[id] = state::done;
            }
        }
    }

    void check_links() {
        std::set<std::tuple<int, std::string, std::string>> seen;
        for (const auto& l : m_app.links) {
            const bool to_task = std::holds_alternative<ui_task_link>(l);
            const auto& ui = link_ui(l);
            const auto& target = link_target(l);
            bool ok = true;
            for (const auto* id : {&ui, &target}) {
                if (!m_kinds.contains(*id)) {
                    report(violation_kind::dangling_reference, {*id},
                           "link " + ui + " -> " + target + " references unknown id '" + *id + "'");
                    ok = false;
                }
            }
            if (ok && (!is(ui, entity::component) ||
                       !is(target, to_task ? entity::task : entity::functionality))) {
                report(violation_kind::link_kind_mismatch, {ui, target},
                       "link " + ui + " -> " + target + " connects the wrong kinds of entity");
            }
            if (!seen.emplace(to_task ? 0 : 1, ui, target).second) {
                report(violation_kind::duplicate_link, {ui, target},
                       "link " + ui + " -> " + target + " is declared twice");
            }
        }
    }

    const application& m_app;
    std::unordered_map<std::string, entity> m_kinds;
    std::unordered_set<std::string> m_reported_duplicates;
    std::vector<violation> m_out;
};

} // namespace

auto validate(const application& app) -> std::vector<violation> {
    return validator(app).run();
}

// ---------------------------------------------------------------------------
// Document reading

namespace {

/// Typed access to one JSON object; rejects keys that are never read.
class object_reader {
public:
    object_reader(const json& value, std::string path) : m_value(value), m_path(std::move(path)) {
        if (!m_value.is_object()) {
            fail("expected an object");
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw error(error_code::syntax, (m_path.empty() ? std::string("/") : m_path) + ": " + what,
                    m_path.empty() ? "/" : m_path);
    }

    auto path(std::string_view key) const -> std::string { return m_path + "/" + std::string(key); }

    auto has(std::string_view key) const -> bool { return m_value.contains(std::string(key)); }

    auto raw(std::string_view key) -> const json& {
        m_used.insert(std::string(key));
        auto it = m_value.find(std::string(key));
        if (it == m_value.end()) {
            fail("missing key '" + std::string(key) + "'");
        }
        return *it;
    }

    auto string(std::string_view key) -> std::string {
        const auto& v = raw(key);
        if (!v.is_string()) {
            throw error(error_code::syntax, path(key) + ": expected a string", path(key));
        }
        return v.get<std::string>();
    }

    auto string_or(std::string_view key, std::string fallback) -> std::string {
        return has(key) ? string(key) : fallback;
    }

    auto integer(std::string_view key) -> int {
        const auto& v = raw(key);
        if (!v.is_number_integer()) {
            throw error(error_code::syntax, path(key) + ": expected an integer", path(key));
        }
        return v.get<int>();
    }

    auto integer_or(std::string_view key, int fallback) -> int { return has(key) ? integer(key) : fallback; }

    auto array(std::string_view key) -> const json& {
        const auto& v = raw(key);
        if (!v.is_array()) {
            throw error(error_code::syntax, path(key) + ": expected an array", path(key));
        }
        return v;
    }

    auto object(std::string_view key) -> const json& {
        const auto& v = raw(key);
        if (!v.is_object()) {
            throw error(error_code::syntax, path(key) + ": expected an object", path(key));
        }
        return v;
    }

    void finish() const {
        for (const auto& [key, v] : m_value.items()) {
            if (!m_used.contains(key)) {
                fail("unknown key '" + key + "'");
            }
        }
    }

private:
    const json& m_value;
    std::string m_path;
    std::set<std::string> m_used;
};

auto expect_string(const json& v, const std::string& path) -> std::string {
    if (!v.is_string()) {
        throw error(error_code::syntax, path + ": expected a string", path);
    }
    return v.get<std::string>();
}

auto read_component(const json& v, const std::string& path) -> ui_component {
    object_reader r(v, path);
    ui_component c;
    c.id = r.string("id");
    auto kind_text = r.string("kind");
    auto kind = parse_component_kind(kind_text);
    if (!kind) {
        r.fail("unknown component kind '" + kind_text + "'");
    }
    c.kind = *kind;
    c.label = r.string_or("label", "");
    if (r.has("children")) {
        const auto& children = r.array("children");
        for (std::size_t i = 0; i < children.size(); ++i) {
            c.children.push_back(read_component(children[i], r.path("children") + "/" + std::to_string(i)));
        }
    }
    r.finish();
    return c;
}

auto read_constraints(object_reader& r, std::string_view key) -> std::vector<relative_constraint> {
    std::vector<relative_constraint> out;
    const auto& list = r.array(key);
    for (std::size_t i = 0; i < list.size(); ++i) {
        object_reader cr(list[i], r.path(key) + "/" + std::to_string(i));
        relative_constraint c;
        c.subject = cr.string("subject");
        auto relation = cr.string("relation");
        auto p = parse_predicate(relation);
        if (!p) {
            cr.fail("unknown relation '" + relation + "'");
        }
        c.relation = *p;
        c.anchor = cr.string("anchor");
        cr.finish();
        out.push_back(std::move(c));
    }
    return out;
}

auto read_relative(const json& v, const std::string& path) -> relative_layout {
    object_reader r(v, path);
    if (r.string("type") != "relative") {
        r.fail("expected a relative layout");
    }
    relative_layout out{read_constraints(r, "constraints")};
    r.finish();
    return out;
}

auto read_layout(const json& v, const std::string& path) -> layout_spec {
    object_reader r(v, path);
    auto type = r.string("type");
    layout_spec out;
    if (type == "absolute") {
        absolute_layout layout;
        for (const auto& [id, pos] : r.object("positions").items()) {
            object_reader pr(pos, r.path("positions") + "/" + id);
            layout.positions[id] = rect{pr.integer("x"), pr.integer("y"), pr.integer("w"), pr.integer("h")};
            pr.finish();
        }
        out = std::move(layout);
    } else if (type == "table") {
        table_layout layout;
        for (const auto& [id, cell] : r.object("cells").items()) {
            object_reader cr(cell, r.path("cells") + "/" + id);
            layout.cells[id] = table_cell{cr.integer("row"), cr.integer("col"), cr.integer_or("rowSpan", 1),
                                          cr.integer_or("colSpan", 1)};
            cr.finish();
        }
        out = std::move(layout);
    } else if (type == "relative") {
        out = relative_layout{read_constraints(r, "constraints")};
    } else {
        r.fail("unknown layout type '" + type + "'");
    }
    r.finish();
    return out;
}

auto read_screen(const json& v, const std::string& path) -> screen {
    object_reader r(v, path);
    screen s;
    s.id = r.string("id");
    s.name = r.string_or("name", "");
    s.root = read_component(r.object("root"), r.path("root"));
    if (r.has("layouts")) {
        for (const auto& [id, layout] : r.object("layouts").items()) {
            s.layouts[id] = read_layout(layout, r.path("layouts") + "/" + id);
        }
    }
    if (r.has("positioning")) {
        for (const auto& [id, layout] : r.object("positioning").items()) {
            s.positioning[id] = read_relative(layout, r.path("positioning") + "/" + id);
        }
    }
    r.finish();
    return s;
}

auto read_application(const json& doc) -> application {
    object_reader r(doc, "");
    application app;
    app.id = r.string("id");
    app.name = r.string_or("name", "");
    const auto& screens = r.array("screens");
    for (std::size_t i = 0; i < screens.size(); ++i) {
        app.screens.push_back(read_screen(screens[i], "/screens/" + std::to_string(i)));
    }
    if (r.has("tasks")) {
        const auto& tasks = r.array("tasks");
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto path = "/tasks/" + std::to_string(i);
            object_reader tr(tasks[i], path);
            task_node t;
            t.id = tr.string("id");
            t.name = tr.string_or("name", "");
            if (tr.has("parent") && !tr.raw("parent").is_null()) {
                t.parent = tr.string("parent");
            }
            if (tr.has("functionalities")) {
                const auto& fs = tr.array("functionalities");
                for (std::size_t k = 0; k < fs.size(); ++k) {
                    t.functionalities.push_back(
                        expect_string(fs[k], path + "/functionalities/" + std::to_string(k)));
                }
            }
            tr.finish();
            app.tasks.push_back(std::move(t));
        }
    }
    if (r.has("functionalities")) {
        const auto& fs = r.array("functionalities");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            object_reader fr(fs[i], "/functionalities/" + std::to_string(i));
            functionality f{fr.string("id"), fr.string_or("name", ""), fr.string_or("signature", "")};
            fr.finish();
            app.functionalities.push_back(std::move(f));
        }
    }
    if (r.has("links")) {
        const auto& links = r.array("links");
        for (std::size_t i = 0; i < links.size(); ++i) {
            object_reader lr(links[i], "/links/" + std::to_string(i));
            auto ui = lr.string("ui");
            const bool has_task = lr.has("task");
            const bool has_function = lr.has("functionality");
            if (has_task == has_function) {
                lr.fail("a link needs exactly one of 'task' or 'functionality'");
            }
            if (has_task) {
                app.links.emplace_back(ui_task_link{ui, lr.string("task")});
            } else {
                app.links.emplace_back(ui_functionality_link{ui, lr.string("functionality")});
            }
            lr.finish();
        }
    }
    r.finish();
    return app;
}

} // namespace

auto parse_application(std::string_view text) -> application {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw error(error_code::syntax, "syntax error at byte " + std::to_string(e.byte) + ": " + e.what(),
                    "byte " + std::to_string(e.byte));
    }
    auto app = read_application(doc);
    auto violations = validate(app);
    if (!violations.empty()) {
        const auto& first = violations.front();
        const auto code = first.kind == violation_kind::dangling_reference ? error_code::reference
                                                                           : error_code::invariant;
        std::string message = first.message;
        if (violations.size() > 1) {
            message += " (and " + std::to_string(violations.size() - 1) + " more)";
        }
        throw error(code, message, first.ids.empty() ? std::string{} : first.ids.front());
    }
    return app;
}

// ---------------------------------------------------------------------------
// Document writing

namespace {

auto write_component(const ui_component& c) -> json {
    json children = json::array();
    for (const auto& child : c.children) {
        children.push_back(write_component(child));
    }
    return {{"id", c.id}, {"kind", to_string(c.kind)}, {"label", c.label}, {"children", std::move(children)}};
}

auto write_constraints(const std::vector<relative_constraint>& constraints) -> json {
    json out = json::array();
    for (const auto& c : constraints) {
        out.push_back({{"subject", c.subject}, {"relation", to_string(c.relation)}, {"anchor", c.anchor}});
    }
    return out;
}

auto write_layout(const layout_spec& layout) -> json {
    return std::visit(
        [](const auto& l) -> json {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, absolute_layout>) {
                json positions = json::object();
                for (const auto& [id, r] : l.positions) {
                    positions[id] = {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
                }
                return {{"type", "absolute"}, {"positions", std::move(positions)}};
            } else if constexpr (std::is_same_v<T, table_layout>) {
                json cells = json::object();
                for (const auto& [id, c] : l.cells) {
                    cells[id] = {{"row", c.row}, {"col", c.col}, {"rowSpan", c.row_span}, {"colSpan", c.col_span}};
                }
                return {{"type", "table"}, {"cells", std::move(cells)}};
            } else {
                return {{"type", "relative"}, {"constraints", write_constraints(l.constraints)}};
            }
        },
        layout);
}

} // namespace

auto serialize_application(const application& app) -> std::string {
    json screens = json::array();
    for (const auto& s : app.screens) {
        json layouts = json::object();
        for (const auto& [id, layout] : s.layouts) {
            layouts[id] = write_layout(layout);
        }
        json entry = {{"id", s.id}, {"name", s.name}, {"root", write_component(s.root)}, {"layouts", layouts}};
        if (!s.positioning.empty()) {
            json positioning = json::object();
            for (const auto& [id, layout] : s.positioning) {
                positioning[id] = write_layout(layout);
            }
            entry["positioning"] = std::move(positioning);
        }
        screens.push_back(std::move(entry));
    }
    json tasks = json::array();
    for (const auto& t : app.tasks) {
        tasks.push_back({{"id", t.id},
                         {"name", t.name},
                         {"parent", t.parent ? json(*t.parent) : json(nullptr)},
                         {"functionalities", t.functionalities}});
    }
    json functionalities = json::array();
    for (const auto& f : app.functionalities) {
        functionalities.push_back({{"id", f.id}, {"name", f.name}, {"signature", f.signature}});
    }
    json links = json::array();
    for (const auto& l : app.links) {
        if (const auto* t = std::get_if<ui_task_link>(&l)) {
            links.push_back({{"ui", t->ui}, {"task", t->task}});
        } else {
            const auto& f = std::get<ui_functionality_link>(l);
            links.push_back({{"ui", f.ui}, {"functionality", f.functionality}});
        }
    }
    json doc = {{"id", app.id},         {"name", app.name},
                {"screens", screens},   {"tasks", tasks},
                {"functionalities", functionalities}, {"links", links}};
    return doc.dump(2) + "\n";
}

} // namespace ontocompo
