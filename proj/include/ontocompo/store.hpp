#pragma once

#include "ontocompo/application.hpp"
#include "ontocompo/vocabulary.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ontocompo {

enum class entity_kind { application, screen, component, task, functionality };

auto to_string(entity_kind kind) -> std::string_view;

struct entity_info {
    entity_kind kind;
    std::string name;
    auto operator==(const entity_info&) const -> bool = default;
};

struct triple {
    std::string subject;
    predicate pred;
    std::string object;

    auto operator<=>(const triple&) const = default;
};

/// A pattern term: either a constant id or a named variable.
struct term {
    std::string text;
    bool is_variable = false;

    static auto var(std::string name) -> term { return {std::move(name), true}; }
    static auto id(std::string value) -> term { return {std::move(value), false}; }
    auto operator==(const term&) const -> bool = default;
};

struct clause {
    term subject;
    predicate pred;
    term object;
};

/// Conjunction of clauses; at least one clause.
struct pattern {
    std::vector<clause> clauses;
};

/// Variable name -> bound id. Ordered, so bindings compare lexicographically by (name, id).
using binding = std::map<std::string, std::string>;

/// Indexed triple set over a registry of typed entities.
///
/// Spatial facts are kept closed under inversion: inserting (a, onTheRightOf, b)
/// also stores (b, onTheLeftOf, a), and removing either removes both.
class store {
public:
    using id_set = std::set<std::string>;

    /// Registers an entity. Re-declaring with the same kind keeps the first name;
    /// a different kind is an invariant error.
    void declare(const std::string& id, entity_kind kind, std::string name = {});

    auto entity(std::string_view id) const -> const entity_info*;
    auto entities() const noexcept -> const std::map<std::string, entity_info, std::less<>>& { return m_entities; }

    /// Returns false when the triple (and its inverse) were already present.
    /// Throws unknown_id for undeclared entities, invariant for kinds the predicate does not accept.
    auto insert(const triple& t) -> bool;
    auto remove(const triple& t) -> bool;

    auto contains(const triple& t) const -> bool;
    auto objects(std::string_view subject, predicate p) const -> const id_set&;
    auto subjects(predicate p, std::string_view object) const -> const id_set&;
    /// subject -> objects for every triple of the predicate
    auto pairs(predicate p) const -> const std::map<std::string, id_set, std::less<>>&;

    auto triples() const noexcept -> const std::set<triple>& { return m_triples; }
    auto size() const noexcept -> std::size_t { return m_triples.size(); }
    auto empty() const noexcept -> bool { return m_triples.empty(); }

    auto operator==(const store& other) const -> bool {
        return m_triples == other.m_triples && m_entities == other.m_entities;
    }

private:
    using index = std::map<std::string, id_set, std::less<>>;

    void check(const triple& t) const;
    auto add_one(const triple& t) -> bool;
    auto remove_one(const triple& t) -> bool;

    std::map<std::string, entity_info, std::less<>> m_entities;
    std::set<triple> m_triples;
    std::map<predicate, index> m_forward;   // predicate -> subject -> objects
    std::map<predicate, index> m_backward;  // predicate -> object -> subjects
};

/// Annotations of the given applications: containment, derived layout relations,
/// links, task/functionality usage, task hierarchy and screen/app membership.
/// Throws precondition on duplicate application ids.
auto build_store(std::span<const application* const> apps) -> store;
auto build_store(const std::vector<application>& apps) -> store;

/// Every variable assignment satisfying all clauses, sorted and duplicate-free.
auto match(const store& s, const pattern& p) -> std::vector<binding>;

/// One `subject<TAB>predicate<TAB>object` line per triple, lines sorted.
auto dump(const store& s) -> std::string;

} // namespace ontocompo
