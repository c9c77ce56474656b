#include "ontocompo/layout.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

namespace ontocompo {

auto to_string(conflict_kind kind) -> std::string_view {
    switch (kind) {
    case conflict_kind::horizontal_cycle: return "horizontal_cycle";
    case conflict_kind::vertical_cycle: return "vertical_cycle";
    case conflict_kind::shared_cell: return "shared_cell";
    case conflict_kind::self_anchored: return "self_anchored";
    case conflict_kind::not_spatial: return "not_spatial";
    }
    return "?";
}

namespace {

auto describe(const std::vector<conflict>& conflicts) -> std::string {
    if (conflicts.empty()) {
        return "inconsistent constraints";
    }
    std::string out = conflicts.front().message;
    if (conflicts.size() > 1) {
        out += " (and " + std::to_string(conflicts.size() - 1) + " more)";
    }
    return out;
}

auto first_id(const std::vector<conflict>& conflicts) -> std::string {
    if (conflicts.empty() || conflicts.front().ids.empty()) {
        return {};
    }
    return conflicts.front().ids.front();
}

} // namespace

layout_conflict::layout_conflict(std::vector<conflict> conflicts)
  : error(error_code::conflict, describe(conflicts), first_id(conflicts)), m_conflicts(std::move(conflicts)) {}

// ---------------------------------------------------------------------------
// Derivation

namespace {

struct box {
    std::string id;
    int x0, x1, y0, y1;
};

auto overlaps(int a0, int a1, int b0, int b1) -> bool {
    return a0 < b1 && b0 < a1;
}

/// Edge gap from `a` to `b` in direction `d`, or -1 when `b` is not in that direction.
auto gap(const box& a, const box& b, predicate d, bool corner_touch_only) -> int {
    const bool h = overlaps(a.x0, a.x1, b.x0, b.x1);
    const bool v = overlaps(a.y0, a.y1, b.y0, b.y1);
    const int right = b.x0 - a.x1;
    const int left = a.x0 - b.x1;
    const int down = b.y0 - a.y1;
    const int up = a.y0 - b.y1;
    auto diagonal = [&](int dx, int dy) {
        if (dx < 0 || dy < 0 || (corner_touch_only && (dx != 0 || dy != 0))) {
            return -1;
        }
        return dx + dy;
    };
    switch (d) {
    case predicate::on_the_right_of: return right >= 0 && v ? right : -1;
    case predicate::on_the_left_of: return left >= 0 && v ? left : -1;
    case predicate::below: return down >= 0 && h ? down : -1;
    case predicate::above: return up >= 0 && h ? up : -1;
    case predicate::below_right: return diagonal(right, down);
    case predicate::below_left: return diagonal(left, down);
    case predicate::above_right: return diagonal(right, up);
    case predicate::above_left: return diagonal(left, up);
    default: return -1;
    }
}

auto canonical(const std::string& subject, predicate d, const std::string& anchor) -> triple {
    if (is_canonical_direction(d)) {
        return {subject, d, anchor};
    }
    return {anchor, inverse(d), subject};
}

auto derive_from_boxes(const std::vector<box>& boxes, bool corner_touch_only) -> std::set<triple> {
    std::set<triple> out;
    for (const auto& seed : boxes) {
        for (auto d : spatial_predicates) {
            int best = std::numeric_limits<int>::max();
            std::vector<const box*> nearest;
            for (const auto& other : boxes) {
                if (other.id == seed.id) {
                    continue;
                }
                const int g = gap(seed, other, d, corner_touch_only);
                if (g < 0 || g > best) {
                    continue;
                }
                if (g < best) {
                    best = g;
                    nearest.clear();
                }
                nearest.push_back(&other);
            }
            for (const auto* n : nearest) {
                out.insert(canonical(n->id, d, seed.id));
            }
        }
    }
    return out;
}

} // namespace

auto derive_relations(std::span<const std::string> children, const layout_spec& layout) -> std::vector<triple> {
    const std::set<std::string> members(children.begin(), children.end());
    std::set<triple> out;
    if (const auto* abs = std::get_if<absolute_layout>(&layout)) {
        std::vector<box> boxes;
        for (const auto& [id, r] : abs->positions) {
            if (members.contains(id)) {
                boxes.push_back({id, r.x, r.right(), r.y, r.bottom()});
            }
        }
        out = derive_from_boxes(boxes, false);
    } else if (const auto* table = std::get_if<table_layout>(&layout)) {
        std::vector<box> boxes;
        for (const auto& [id, c] : table->cells) {
            if (members.contains(id)) {
                boxes.push_back({id, c.col, c.col + c.col_span, c.row, c.row + c.row_span});
            }
        }
        out = derive_from_boxes(boxes, true);
    } else {
        for (const auto& c : std::get<relative_layout>(layout).constraints) {
            if (!is_spatial(c.relation) || c.subject == c.anchor || !members.contains(c.subject) ||
                !members.contains(c.anchor)) {
                continue;
            }
            if (!out.contains({c.anchor, inverse(c.relation), c.subject})) {
                out.insert({c.subject, c.relation, c.anchor});
            }
        }
    }
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Consistency

namespace {

class union_find {
public:
    auto find(const std::string& id) -> std::string {
        auto it = m_parent.try_emplace(id, id).first;
        if (it->second == id) {
            return id;
        }
        auto root = find(it->second);
        m_parent[id] = root;
        return root;
    }

    // The smaller id becomes the representative.
    void unite(const std::string& a, const std::string& b) {
        auto ra = find(a);
        auto rb = find(b);
        if (ra == rb) {
            return;
        }
        if (rb < ra) {
            std::swap(ra, rb);
        }
        m_parent[rb] = ra;
    }

private:
    std::map<std::string, std::string> m_parent;
};

struct edge {
    std::string from;  // class that must come first (left / top)
    std::string to;
    const relative_constraint* source = nullptr;
};

/// Both axes of a constraint set, projected onto equality classes.
struct projection {
    std::set<std::string> nodes;
    union_find rows;  // same-row classes (left/right)
    union_find cols;  // same-column classes (above/below)
    std::vector<edge> x_edges;  // between column classes
    std::vector<edge> y_edges;  // between row classes
};

auto project(std::span<const relative_constraint> constraints, std::vector<conflict>& conflicts) -> projection {
    projection p;
    std::vector<const relative_constraint*> usable;
    for (const auto& c : constraints) {
        if (!is_spatial(c.relation)) {
            conflicts.push_back({conflict_kind::not_spatial, {c.subject, c.anchor}, {c},
                                 std::string(to_string(c.relation)) + " is not a spatial relation"});
            continue;
        }
        if (c.subject == c.anchor) {
            conflicts.push_back(
                {conflict_kind::self_anchored, {c.subject}, {c}, "'" + c.subject + "' is anchored to itself"});
            continue;
        }
        usable.push_back(&c);
        p.nodes.insert(c.subject);
        p.nodes.insert(c.anchor);
        const auto off = offset_of(c.relation);
        if (off.dy == 0) {
            p.rows.unite(c.subject, c.anchor);
        }
        if (off.dx == 0) {
            p.cols.unite(c.subject, c.anchor);
        }
    }
    for (const auto* c : usable) {
        const auto off = offset_of(c->relation);
        if (off.dx != 0) {
            auto s = p.cols.find(c->subject);
            auto a = p.cols.find(c->anchor);
            p.x_edges.push_back(off.dx > 0 ? edge{a, s, c} : edge{s, a, c});
        }
        if (off.dy != 0) {
            auto s = p.rows.find(c->subject);
            auto a = p.rows.find(c->anchor);
            p.y_edges.push_back(off.dy > 0 ? edge{a, s, c} : edge{s, a, c});
        }
    }
    return p;
}

/// Strongly connected components that contain a cycle (size > 1 or a self-loop).
auto cyclic_components(const std::vector<edge>& edges) -> std::vector<std::set<std::string>> {
    std::map<std::string, std::vector<std::string>> adj;
    std::set<std::string> self_loops;
    for (const auto& e : edges) {
        adj[e.from].push_back(e.to);
        adj.try_emplace(e.to);
        if (e.from == e.to) {
            self_loops.insert(e.from);
        }
    }
    // Tarjan
    std::map<std::string, int> index;
    std::map<std::string, int> low;
    std::set<std::string> on_stack;
    std::vector<std::string> stack;
    std::vector<std::set<std::string>> out;
    int counter = 0;
    std::function<void(const std::string&)> connect = [&](const std::string& v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (const auto& w : adj[v]) {
            if (!index.contains(w)) {
                connect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack.contains(w)) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::set<std::string> component;
            std::string w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                component.insert(w);
            } while (w != v);
            if (component.size() > 1 || self_loops.contains(v)) {
                out.push_back(std::move(component));
            }
        }
    };
    for (const auto& [v, next] : adj) {
        if (!index.contains(v)) {
            connect(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

auto join(const std::vector<std::string>& ids) -> std::string {
    std::string out;
    for (const auto& id : ids) {
        out += (out.empty() ? "" : ", ") + id;
    }
    return out;
}

void report_cycles(const std::vector<edge>& edges, union_find& classes, const std::set<std::string>& nodes,
                   conflict_kind kind, std::vector<conflict>& conflicts) {
    for (const auto& component : cyclic_components(edges)) {
        conflict c{kind, {}, {}, {}};
        for (const auto& n : nodes) {
            if (component.contains(classes.find(n))) {
                c.ids.push_back(n);
            }
        }
        std::set<relative_constraint> involved;
        for (const auto& e : edges) {
            if (component.contains(e.from) && component.contains(e.to)) {
                involved.insert(*e.source);
            }
        }
        c.constraints.assign(involved.begin(), involved.end());
        c.message = std::string(kind == conflict_kind::horizontal_cycle ? "horizontal" : "vertical") +
                    " order is cyclic among " + join(c.ids);
        conflicts.push_back(std::move(c));
    }
}

} // namespace

auto check_consistency(std::span<const relative_constraint> constraints) -> std::vector<conflict> {
    std::vector<conflict> conflicts;
    auto p = project(constraints, conflicts);
    report_cycles(p.x_edges, p.cols, p.nodes, conflict_kind::horizontal_cycle, conflicts);
    report_cycles(p.y_edges, p.rows, p.nodes, conflict_kind::vertical_cycle, conflicts);

    std::map<std::pair<std::string, std::string>, std::vector<std::string>> cells;
    for (const auto& n : p.nodes) {
        cells[{p.rows.find(n), p.cols.find(n)}].push_back(n);
    }
    for (const auto& [key, ids] : cells) {
        if (ids.size() > 1) {
            conflicts.push_back({conflict_kind::shared_cell, ids, {},
                                 "components " + join(ids) + " are forced into the same row and column"});
        }
    }
    return conflicts;
}

// ---------------------------------------------------------------------------
// Solving

namespace {

/// Longest-path layer of every class; `classes` lists all class representatives.
auto rank(const std::set<std::string>& classes, const std::set<std::pair<std::string, std::string>>& edges)
    -> std::map<std::string, int> {
    std::map<std::string, int> indegree;
    std::map<std::string, std::vector<std::string>> next;
    for (const auto& c : classes) {
        indegree[c] = 0;
    }
    for (const auto& [from, to] : edges) {
        next[from].push_back(to);
        ++indegree[to];
    }
    std::map<std::string, int> out;
    std::set<std::string> ready;
    for (const auto& [c, d] : indegree) {
        if (d == 0) {
            ready.insert(c);
            out[c] = 0;
        }
    }
    while (!ready.empty()) {
        auto current = *ready.begin();
        ready.erase(ready.begin());
        for (const auto& n : next[current]) {
            out[n] = std::max(out[n], out[current] + 1);
            if (--indegree[n] == 0) {
                ready.insert(n);
            }
        }
    }
    return out;
}

} // namespace

auto solve(std::span<const std::string> components, std::span<const relative_constraint> constraints)
    -> placement {
    const std::set<std::string> all(components.begin(), components.end());
    for (const auto& c : constraints) {
        for (const auto* id : {&c.subject, &c.anchor}) {
            if (!all.contains(*id)) {
                throw error(error_code::unknown_id, "constraint endpoint '" + *id + "' is not being placed", *id);
            }
        }
    }
    std::vector<conflict> conflicts = check_consistency(constraints);
    if (!conflicts.empty()) {
        throw layout_conflict(std::move(conflicts));
    }
    std::vector<conflict> unused;
    auto p = project(constraints, unused);

    std::set<std::string> row_classes;
    std::set<std::string> col_classes;
    for (const auto& n : p.nodes) {
        row_classes.insert(p.rows.find(n));
        col_classes.insert(p.cols.find(n));
    }
    std::set<std::pair<std::string, std::string>> x_order;
    std::set<std::pair<std::string, std::string>> y_order;
    for (const auto& e : p.x_edges) {
        x_order.emplace(e.from, e.to);
    }
    for (const auto& e : p.y_edges) {
        y_order.emplace(e.from, e.to);
    }

    placement out;
    while (true) {
        auto row_rank = rank(row_classes, y_order);
        auto col_rank = rank(col_classes, x_order);
        out.clear();
        std::map<grid_cell, std::vector<std::string>> occupied;
        for (const auto& n : p.nodes) {
            grid_cell cell{row_rank[p.rows.find(n)], col_rank[p.cols.find(n)]};
            out[n] = cell;
            occupied[cell].push_back(n);
        }
        auto clash = std::find_if(occupied.begin(), occupied.end(), [](const auto& e) { return e.second.size() > 1; });
        if (clash == occupied.end()) {
            break;
        }
        // Two classes tied on both axes are unordered in both; ordering them cannot close a cycle.
        const auto& first = clash->second[0];
        const auto& second = clash->second[1];
        if (p.rows.find(first) == p.rows.find(second)) {
            x_order.emplace(p.cols.find(first), p.cols.find(second));
        } else {
            y_order.emplace(p.rows.find(first), p.rows.find(second));
        }
    }

    int next_row = 0;
    for (const auto& [id, cell] : out) {
        next_row = std::max(next_row, cell.row + 1);
    }
    for (const auto& id : all) {
        if (!p.nodes.contains(id)) {
            out[id] = grid_cell{next_row++, 0};
        }
    }
    return out;
}

auto place(std::span<const relative_constraint> constraints, const relative_constraint& update)
    -> std::vector<relative_constraint> {
    if (update.subject == update.anchor) {
        throw error(error_code::precondition, "'" + update.subject + "' cannot be positioned relative to itself",
                    update.subject);
    }
    if (!is_spatial(update.relation)) {
        throw error(error_code::precondition,
                    std::string(to_string(update.relation)) + " is not a spatial relation", update.subject);
    }
    std::vector<relative_constraint> out;
    for (const auto& c : constraints) {
        const bool same_pair = (c.subject == update.subject && c.anchor == update.anchor) ||
                               (c.subject == update.anchor && c.anchor == update.subject);
        if (!same_pair) {
            out.push_back(c);
        }
    }
    out.push_back(update);
    auto conflicts = check_consistency(out);
    if (!conflicts.empty()) {
        throw layout_conflict(std::move(conflicts));
    }
    return out;
}

auto to_table(const placement& p) -> table_layout {
    table_layout out;
    for (const auto& [id, cell] : p) {
        out.cells[id] = table_cell{cell.row, cell.col, 1, 1};
    }
    return out;
}

auto greedy_consistent(std::span<const relative_constraint> constraints) -> std::vector<relative_constraint> {
    std::vector<relative_constraint> accepted;
    for (const auto& c : constraints) {
        accepted.push_back(c);
        if (!check_consistency(accepted).empty()) {
            accepted.pop_back();
        }
    }
    return accepted;
}

} // namespace ontocompo
