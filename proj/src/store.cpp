#include "ontocompo/store.hpp"
#include "ontocompo/error.hpp"
#include "ontocompo/layout.hpp"

#include <algorithm>
#include <set>

namespace ontocompo {

auto to_string(entity_kind kind) -> std::string_view {
    switch (kind) {
    case entity_kind::application: return "application";
    case entity_kind::screen: return "screen";
    case entity_kind::component: return "component";
    case entity_kind::task: return "task";
    case entity_kind::functionality: return "functionality";
    }
    return "?";
}

namespace {

struct signature {
    entity_kind subject;
    entity_kind object;
};

auto signature_of(predicate p) -> signature {
    switch (p) {
    case predicate::linked_to_task: return {entity_kind::component, entity_kind::task};
    case predicate::linked_to_functionality: return {entity_kind::component, entity_kind::functionality};
    case predicate::task_uses_functionality: return {entity_kind::task, entity_kind::functionality};
    case predicate::sub_task_of: return {entity_kind::task, entity_kind::task};
    case predicate::belongs_to_screen: return {entity_kind::component, entity_kind::screen};
    case predicate::belongs_to_app: return {entity_kind::component, entity_kind::application};
    default: return {entity_kind::component, entity_kind::component};
    }
}

const store::id_set empty_ids;
const std::map<std::string, store::id_set, std::less<>> empty_pairs;

} // namespace

void store::declare(const std::string& id, entity_kind kind, std::string name) {
    auto [it, inserted] = m_entities.try_emplace(id, entity_info{kind, std::move(name)});
    if (!inserted && it->second.kind != kind) {
        throw error(error_code::invariant,
                    "entity '" + id + "' is both a " + std::string(to_string(it->second.kind)) + " and a " +
                        std::string(to_string(kind)),
                    id);
    }
}

auto store::entity(std::string_view id) const -> const entity_info* {
    auto it = m_entities.find(id);
    return it == m_entities.end() ? nullptr : &it->second;
}

void store::check(const triple& t) const {
    const auto expected = signature_of(t.pred);
    for (auto [id, kind] : {std::pair{&t.subject, expected.subject}, std::pair{&t.object, expected.object}}) {
        const auto* info = entity(*id);
        if (info == nullptr) {
            throw error(error_code::unknown_id, "unknown entity '" + *id + "'", *id);
        }
        if (info->kind != kind) {
            throw error(error_code::invariant,
                        std::string(to_string(t.pred)) + " expects a " + std::string(to_string(kind)) + ", '" +
                            *id + "' is a " + std::string(to_string(info->kind)),
                        *id);
        }
    }
}

auto store::add_one(const triple& t) -> bool {
    if (!m_triples.insert(t).second) {
        return false;
    }
    m_forward[t.pred][t.subject].insert(t.object);
    m_backward[t.pred][t.object].insert(t.subject);
    return true;
}

auto store::remove_one(const triple& t) -> bool {
    if (m_triples.erase(t) == 0) {
        return false;
    }
    auto drop = [](index& idx, const std::string& key, const std::string& value) {
        auto it = idx.find(key);
        it->second.erase(value);
        if (it->second.empty()) {
            idx.erase(it);
        }
    };
    drop(m_forward[t.pred], t.subject, t.object);
    drop(m_backward[t.pred], t.object, t.subject);
    return true;
}

auto store::insert(const triple& t) -> bool {
    check(t);
    bool added = add_one(t);
    if (is_spatial(t.pred)) {
        added = add_one({t.object, inverse(t.pred), t.subject}) || added;
    }
    return added;
}

auto store::remove(const triple& t) -> bool {
    for (const auto* id : {&t.subject, &t.object}) {
        if (entity(*id) == nullptr) {
            throw error(error_code::unknown_id, "unknown entity '" + *id + "'", *id);
        }
    }
    bool removed = remove_one(t);
    if (is_spatial(t.pred)) {
        removed = remove_one({t.object, inverse(t.pred), t.subject}) || removed;
    }
    return removed;
}

auto store::contains(const triple& t) const -> bool {
    return m_triples.contains(t);
}

auto store::objects(std::string_view subject, predicate p) const -> const id_set& {
    auto by_pred = m_forward.find(p);
    if (by_pred == m_forward.end()) {
        return empty_ids;
    }
    auto it = by_pred->second.find(subject);
    return it == by_pred->second.end() ? empty_ids : it->second;
}

auto store::subjects(predicate p, std::string_view object) const -> const id_set& {
    auto by_pred = m_backward.find(p);
    if (by_pred == m_backward.end()) {
        return empty_ids;
    }
    auto it = by_pred->second.find(object);
    return it == by_pred->second.end() ? empty_ids : it->second;
}

auto store::pairs(predicate p) const -> const std::map<std::string, id_set, std::less<>>& {
    auto it = m_forward.find(p);
    return it == m_forward.end() ? empty_pairs : it->second;
}

// ---------------------------------------------------------------------------

auto build_store(std::span<const application* const> apps) -> store {
    store out;
    std::set<std::string> app_ids;
    for (const auto* app : apps) {
        if (!app_ids.insert(app->id).second) {
            throw error(error_code::precondition, "application '" + app->id + "' is loaded twice", app->id);
        }
        out.declare(app->id, entity_kind::application, app->name);
        for (const auto& s : app->screens) {
            out.declare(s.id, entity_kind::screen, s.name);
            for_each_component(s.root, [&](const ui_component& c, const ui_component*) {
                out.declare(c.id, entity_kind::component, c.label);
            });
        }
        for (const auto& t : app->tasks) {
            out.declare(t.id, entity_kind::task, t.name);
        }
        for (const auto& f : app->functionalities) {
            out.declare(f.id, entity_kind::functionality, f.name);
        }
    }

    for (const auto* app : apps) {
        for (const auto& s : app->screens) {
            for_each_component(s.root, [&](const ui_component& c, const ui_component*) {
                out.insert({c.id, predicate::belongs_to_screen, s.id});
                out.insert({c.id, predicate::belongs_to_app, app->id});
                if (c.kind != component_kind::container) {
                    return;
                }
                std::vector<std::string> children;
                for (const auto& child : c.children) {
                    out.insert({c.id, predicate::contains, child.id});
                    children.push_back(child.id);
                }
                for (const auto& t : derive_relations(children, layout_of(s, c.id))) {
                    out.insert(t);
                }
            });
        }
        for (const auto& t : app->tasks) {
            if (t.parent) {
                out.insert({t.id, predicate::sub_task_of, *t.parent});
            }
            for (const auto& f : t.functionalities) {
                out.insert({t.id, predicate::task_uses_functionality, f});
            }
        }
        for (const auto& l : app->links) {
            const auto p = std::holds_alternative<ui_task_link>(l) ? predicate::linked_to_task
                                                                   : predicate::linked_to_functionality;
            out.insert({link_ui(l), p, link_target(l)});
        }
    }
    return out;
}

auto build_store(const std::vector<application>& apps) -> store {
    std::vector<const application*> refs;
    refs.reserve(apps.size());
    for (const auto& a : apps) {
        refs.push_back(&a);
    }
    return build_store(refs);
}

// ---------------------------------------------------------------------------
// Conjunctive matching

namespace {

class matcher {
public:
    matcher(const store& s, const pattern& p) : m_store(s), m_clauses(p.clauses), m_done(p.clauses.size(), false) {}

    auto run() -> std::vector<binding> {
        binding current;
        search(current, m_clauses.size());
        return {m_results.begin(), m_results.end()};
    }

private:
    auto bound(const term& t, const binding& b) const -> const std::string* {
        if (!t.is_variable) {
            return &t.text;
        }
        auto it = b.find(t.text);
        return it == b.end() ? nullptr : &it->second;
    }

    auto pick(const binding& b) const -> std::size_t {
        std::size_t best = m_clauses.size();
        int best_score = -1;
        for (std::size_t i = 0; i < m_clauses.size(); ++i) {
            if (m_done[i]) {
                continue;
            }
            int score = (bound(m_clauses[i].subject, b) ? 1 : 0) + (bound(m_clauses[i].object, b) ? 1 : 0);
            if (score > best_score) {
                best = i;
                best_score = score;
            }
        }
        return best;
    }

    // Binds `t` to `value` if free; reports whether the binding is consistent.
    static auto unify(const term& t, const std::string& value, binding& b, std::vector<std::string>& added)
        -> bool {
        if (!t.is_variable) {
            return t.text == value;
        }
        auto [it, inserted] = b.try_emplace(t.text, value);
        if (inserted) {
            added.push_back(t.text);
            return true;
        }
        return it->second == value;
    }

    void visit(binding& b, std::size_t remaining, const clause& c, const std::string& subject,
               const std::string& object) {
        std::vector<std::string> added;
        if (unify(c.subject, subject, b, added) && unify(c.object, object, b, added)) {
            search(b, remaining - 1);
        }
        for (const auto& name : added) {
            b.erase(name);
        }
    }

    void search(binding& b, std::size_t remaining) {
        if (remaining == 0) {
            m_results.insert(b);
            return;
        }
        const auto index = pick(b);
        const auto& c = m_clauses[index];
        m_done[index] = true;
        const auto* subject = bound(c.subject, b);
        const auto* object = bound(c.object, b);
        if (subject && object) {
            if (m_store.contains({*subject, c.pred, *object})) {
                search(b, remaining - 1);
            }
        } else if (subject) {
            const std::string s = *subject;
            for (const auto& o : m_store.objects(s, c.pred)) {
                visit(b, remaining, c, s, o);
            }
        } else if (object) {
            const std::string o = *object;
            for (const auto& s : m_store.subjects(c.pred, o)) {
                visit(b, remaining, c, s, o);
            }
        } else {
            for (const auto& [s, objects] : m_store.pairs(c.pred)) {
                for (const auto& o : objects) {
                    visit(b, remaining, c, s, o);
                }
            }
        }
        m_done[index] = false;
    }

    const store& m_store;
    const std::vector<clause>& m_clauses;
    std::vector<bool> m_done;
    std::set<binding> m_results;
};

} // namespace

auto match(const store& s, const pattern& p) -> std::vector<binding> {
    if (p.clauses.empty()) {
        throw error(error_code::syntax, "a pattern needs at least one clause");
    }
    return matcher(s, p).run();
}

auto dump(const store& s) -> std::string {
    std::vector<std::string> lines;
    lines.reserve(s.size());
    for (const auto& t : s.triples()) {
        lines.push_back(t.subject + "\t" + std::string(to_string(t.pred)) + "\t" + t.object + "\n");
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) {
        out += line;
    }
    return out;
}

} // namespace ontocompo
