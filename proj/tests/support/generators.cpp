#include "generators.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace ontocompo::testing {

auto pick(rng& gen, int lo, int hi) -> int {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
}

namespace {

auto chance(rng& gen, double p) -> bool {
    return std::bernoulli_distribution(p)(gen);
}

template <typename T>
auto choose(rng& gen, const std::vector<T>& items) -> const T& {
    return items[static_cast<std::size_t>(pick(gen, 0, static_cast<int>(items.size()) - 1))];
}

/// Distinct cells of a square grid just large enough for `n` items.
auto distinct_cells(rng& gen, std::size_t n) -> std::vector<grid_cell> {
    int side = 1;
    while (static_cast<std::size_t>(side * side) < n + 2) {
        ++side;
    }
    std::vector<grid_cell> all;
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            all.push_back({r, c});
        }
    }
    std::shuffle(all.begin(), all.end(), gen);
    all.resize(n);
    return all;
}

/// The direction in which `a` lies relative to `b` on a grid.
auto relation_between(grid_cell a, grid_cell b) -> predicate {
    const int dx = (a.col > b.col) - (a.col < b.col);
    const int dy = (a.row > b.row) - (a.row < b.row);
    for (auto p : spatial_predicates) {
        auto o = offset_of(p);
        if (o.dx == dx && o.dy == dy) {
            return p;
        }
    }
    return predicate::on_the_right_of;  // unreachable for distinct cells
}

auto random_relative(rng& gen, const std::vector<std::string>& children) -> relative_layout {
    relative_layout out;
    if (children.size() < 2) {
        return out;
    }
    auto cells = distinct_cells(gen, children.size());
    std::set<std::pair<std::size_t, std::size_t>> used;
    const int wanted = pick(gen, 0, static_cast<int>(children.size()) + 1);
    for (int i = 0; i < wanted; ++i) {
        auto a = static_cast<std::size_t>(pick(gen, 0, static_cast<int>(children.size()) - 1));
        auto b = static_cast<std::size_t>(pick(gen, 0, static_cast<int>(children.size()) - 1));
        if (a == b || !used.insert({a, b}).second) {
            continue;
        }
        out.constraints.push_back({children[a], relation_between(cells[a], cells[b]), children[b]});
    }
    return out;
}

auto random_absolute(rng& gen, const std::vector<std::string>& children) -> absolute_layout {
    absolute_layout out;
    auto cells = distinct_cells(gen, children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
        // Cells are 100x50; a rectangle never leaves its cell.
        rect r;
        r.x = cells[i].col * 100 + pick(gen, 0, 20);
        r.y = cells[i].row * 50 + pick(gen, 0, 10);
        r.w = pick(gen, 10, 79);
        r.h = pick(gen, 5, 39);
        out.positions[children[i]] = r;
    }
    return out;
}

auto random_table(rng& gen, const std::vector<std::string>& children) -> table_layout {
    table_layout out;
    int side = 1;
    while (side * side < static_cast<int>(children.size()) * 2) {
        ++side;
    }
    std::vector<std::vector<bool>> taken(static_cast<std::size_t>(side + 2),
                                         std::vector<bool>(static_cast<std::size_t>(side + 2), false));
    auto is_free = [&](const table_cell& c) {
        for (int r = c.row; r < c.row + c.row_span; ++r) {
            for (int k = c.col; k < c.col + c.col_span; ++k) {
                if (taken[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)]) {
                    return false;
                }
            }
        }
        return true;
    };
    for (const auto& child : children) {
        table_cell cell;
        do {
            cell = {pick(gen, 0, side - 1), pick(gen, 0, side - 1), 1, 1};
        } while (!is_free(cell));
        if (chance(gen, 0.25)) {
            table_cell wide = cell;
            (chance(gen, 0.5) ? wide.col_span : wide.row_span) = 2;
            if (is_free(wide)) {
                cell = wide;
            }
        }
        for (int r = cell.row; r < cell.row + cell.row_span; ++r) {
            for (int k = cell.col; k < cell.col + cell.col_span; ++k) {
                taken[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = true;
            }
        }
        out.cells[child] = cell;
    }
    return out;
}

const std::vector<component_kind> leaf_kinds{component_kind::button, component_kind::textfield,
                                             component_kind::label,  component_kind::list,
                                             component_kind::image,  component_kind::custom};

struct tree_builder {
    rng& gen;
    const std::string& prefix;
    int budget;
    int counter = 0;
    std::vector<std::string> components;

    auto fresh(component_kind kind) -> ui_component {
        ui_component c;
        c.id = prefix + ".c" + std::to_string(counter++);
        c.kind = kind;
        if (chance(gen, 0.5)) {
            c.label = "Label " + std::to_string(counter);
        }
        components.push_back(c.id);
        --budget;
        return c;
    }

    void fill(ui_component& container, screen& s, int depth) {
        const int wanted = std::min(budget, pick(gen, 1, 5));
        for (int i = 0; i < wanted && budget > 0; ++i) {
            const bool nest = depth < 3 && budget > 2 && chance(gen, 0.3);
            container.children.push_back(fresh(nest ? component_kind::container : choose(gen, leaf_kinds)));
        }
        for (auto& child : container.children) {
            if (child.kind == component_kind::container && budget > 0) {
                fill(child, s, depth + 1);
            }
        }
        if (container.children.empty()) {
            return;
        }
        std::vector<std::string> ids;
        for (const auto& child : container.children) {
            ids.push_back(child.id);
        }
        switch (pick(gen, 0, 3)) {
        case 0: s.layouts[container.id] = random_absolute(gen, ids); break;
        case 1: s.layouts[container.id] = random_table(gen, ids); break;
        case 2: s.layouts[container.id] = random_relative(gen, ids); break;
        default: break;  // undeclared: empty relative layout
        }
    }
};

} // namespace

auto random_application(rng& gen, const std::string& id, const app_shape& shape) -> application {
    application app;
    app.id = id;
    app.name = "Random " + id;

    tree_builder builder{gen, id, pick(gen, 1, shape.max_components)};
    const int screens = pick(gen, 1, shape.max_screens);
    for (int i = 0; i < screens && builder.budget > 0; ++i) {
        screen s;
        s.id = id + ".s" + std::to_string(i);
        s.name = "Screen " + std::to_string(i);
        s.root = builder.fresh(component_kind::container);
        builder.fill(s.root, s, 0);
        app.screens.push_back(std::move(s));
    }

    const int functionalities = pick(gen, 0, shape.max_functionalities);
    std::vector<std::string> function_ids;
    for (int i = 0; i < functionalities; ++i) {
        functionality f{id + ".f" + std::to_string(i), "function " + std::to_string(i), {}};
        if (chance(gen, 0.5)) {
            f.signature = "f" + std::to_string(i) + "(x: Int): Int";
        }
        function_ids.push_back(f.id);
        app.functionalities.push_back(std::move(f));
    }

    const int tasks = pick(gen, 0, shape.max_tasks);
    std::vector<std::string> task_ids;
    for (int i = 0; i < tasks; ++i) {
        task_node t;
        t.id = id + ".t" + std::to_string(i);
        t.name = "Task " + std::to_string(i);
        if (!task_ids.empty() && chance(gen, 0.6)) {
            t.parent = choose(gen, task_ids);
        }
        for (const auto& f : function_ids) {
            if (chance(gen, 0.2)) {
                t.functionalities.push_back(f);
            }
        }
        task_ids.push_back(t.id);
        app.tasks.push_back(std::move(t));
    }

    std::set<std::pair<std::string, std::string>> linked;
    const int links = pick(gen, 0, shape.max_links);
    for (int i = 0; i < links && !builder.components.empty(); ++i) {
        const auto& ui = choose(gen, builder.components);
        const bool to_task = !task_ids.empty() && (function_ids.empty() || chance(gen, 0.7));
        if (!to_task && function_ids.empty()) {
            break;
        }
        const auto& target = to_task ? choose(gen, task_ids) : choose(gen, function_ids);
        if (!linked.insert({ui, target}).second) {
            continue;
        }
        if (to_task) {
            app.links.emplace_back(ui_task_link{ui, target});
        } else {
            app.links.emplace_back(ui_functionality_link{ui, target});
        }
    }
    return app;
}

auto random_store(rng& gen, int max_triples) -> store {
    store s;
    std::vector<std::string> components;
    std::vector<std::string> tasks;
    std::vector<std::string> functions;
    std::vector<std::string> screens;
    const int nc = pick(gen, 2, 12);
    for (int i = 0; i < nc; ++i) {
        components.push_back("c" + std::to_string(i));
        s.declare(components.back(), entity_kind::component);
    }
    for (int i = 0; i < pick(gen, 1, 4); ++i) {
        tasks.push_back("t" + std::to_string(i));
        s.declare(tasks.back(), entity_kind::task, "task " + std::to_string(i));
    }
    for (int i = 0; i < pick(gen, 1, 4); ++i) {
        functions.push_back("f" + std::to_string(i));
        s.declare(functions.back(), entity_kind::functionality);
    }
    for (int i = 0; i < pick(gen, 1, 2); ++i) {
        screens.push_back("s" + std::to_string(i));
        s.declare(screens.back(), entity_kind::screen);
    }
    s.declare("app", entity_kind::application);

    const int wanted = pick(gen, 0, max_triples);
    int attempts = 0;
    while (static_cast<int>(s.size()) < wanted && attempts++ < max_triples * 4) {
        const auto p = all_predicates[static_cast<std::size_t>(pick(gen, 0, all_predicates.size() - 1))];
        triple t{"", p, ""};
        switch (p) {
        case predicate::linked_to_task: t = {choose(gen, components), p, choose(gen, tasks)}; break;
        case predicate::linked_to_functionality: t = {choose(gen, components), p, choose(gen, functions)}; break;
        case predicate::task_uses_functionality: t = {choose(gen, tasks), p, choose(gen, functions)}; break;
        case predicate::sub_task_of: t = {choose(gen, tasks), p, choose(gen, tasks)}; break;
        case predicate::belongs_to_screen: t = {choose(gen, components), p, choose(gen, screens)}; break;
        case predicate::belongs_to_app: t = {choose(gen, components), p, "app"}; break;
        default: t = {choose(gen, components), p, choose(gen, components)}; break;
        }
        // A spatial fact brings its inverse along; stay within the bound.
        if (is_spatial(p) && static_cast<int>(s.size()) + 2 > max_triples) {
            continue;
        }
        s.insert(t);
    }
    return s;
}

auto random_pattern(rng& gen, const store& s, int max_clauses, int max_variables) -> pattern {
    std::vector<std::string> ids;
    for (const auto& [id, info] : s.entities()) {
        ids.push_back(id);
    }
    std::vector<triple> facts(s.triples().begin(), s.triples().end());
    auto make_term = [&](const std::string& constant) {
        const int roll = pick(gen, 0, 9);
        if (roll < 6) {
            return term::var("v" + std::to_string(pick(gen, 0, max_variables - 1)));
        }
        // Mostly constants that occur in the store, sometimes arbitrary ones.
        return term::id(roll < 9 ? constant : choose(gen, ids));
    };
    pattern p;
    const int clauses = pick(gen, 1, max_clauses);
    for (int i = 0; i < clauses; ++i) {
        triple seed = facts.empty()
                          ? triple{choose(gen, ids), predicate::contains, choose(gen, ids)}
                          : choose(gen, facts);
        if (chance(gen, 0.2)) {
            seed.pred = all_predicates[static_cast<std::size_t>(pick(gen, 0, all_predicates.size() - 1))];
        }
        p.clauses.push_back({make_term(seed.subject), seed.pred, make_term(seed.object)});
    }
    return p;
}

auto random_consistent_problem(rng& gen, int max_components, int max_constraints) -> constraint_problem {
    constraint_problem out;
    const int n = pick(gen, 1, max_components);
    for (int i = 0; i < n; ++i) {
        out.components.push_back(std::string("k") + (i < 10 ? "0" : "") + std::to_string(i));
    }
    auto cells = distinct_cells(gen, out.components.size());
    if (n < 2) {
        return out;
    }
    const int wanted = pick(gen, 0, max_constraints);
    for (int i = 0; i < wanted; ++i) {
        auto a = static_cast<std::size_t>(pick(gen, 0, n - 1));
        auto b = static_cast<std::size_t>(pick(gen, 0, n - 1));
        if (a == b) {
            continue;
        }
        out.constraints.push_back(
            {out.components[a], relation_between(cells[a], cells[b]), out.components[b]});
    }
    return out;
}

void inject_conflict(rng& gen, constraint_problem& problem) {
    const auto& ids = problem.components;
    const auto n = static_cast<int>(ids.size());
    auto some = [&] { return ids[static_cast<std::size_t>(pick(gen, 0, n - 1))]; };
    auto distinct_pair = [&] {
        auto a = some();
        auto b = some();
        while (b == a) {
            b = some();
        }
        return std::pair{a, b};
    };
    const auto direction = spatial_predicates[static_cast<std::size_t>(pick(gen, 0, 7))];
    const int variant = pick(gen, 0, 3);
    if (variant == 0 && !problem.constraints.empty()) {
        // Reverse an existing constraint.
        auto c = choose(gen, problem.constraints);
        problem.constraints.push_back({c.anchor, c.relation, c.subject});
    } else if (variant == 1 && n >= 3) {
        // Three-cycle along one direction.
        auto [a, b] = distinct_pair();
        auto c = some();
        while (c == a || c == b) {
            c = some();
        }
        problem.constraints.push_back({a, direction, b});
        problem.constraints.push_back({b, direction, c});
        problem.constraints.push_back({c, direction, a});
    } else if (variant == 2) {
        // Same row and same column at once.
        auto [a, b] = distinct_pair();
        problem.constraints.push_back({a, predicate::on_the_right_of, b});
        problem.constraints.push_back({a, predicate::below, b});
    } else {
        auto [a, b] = distinct_pair();
        problem.constraints.push_back({a, direction, b});
        problem.constraints.push_back({b, direction, a});
    }
    std::shuffle(problem.constraints.begin(), problem.constraints.end(), gen);
}

} // namespace ontocompo::testing
