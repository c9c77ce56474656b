#pragma once

#include "ontocompo/application.hpp"
#include "ontocompo/layout.hpp"
#include "ontocompo/selection.hpp"
#include "ontocompo/store.hpp"

#include <string>
#include <variant>
#include <vector>

namespace ontocompo {

struct new_screen {
    std::string name;
};

struct existing_screen {
    std::string id;
};

using extraction_target = std::variant<new_screen, existing_screen>;

/// Loaded source applications, the application being composed, their
/// annotations and the current selection.
///
/// Every mutation either completes or throws leaving the workspace untouched.
/// The store always equals build_store(sources ++ [composed]).
class workspace {
public:
    workspace();

    auto sources() const noexcept -> const std::vector<application>& { return m_sources; }
    auto composed() const noexcept -> const application& { return m_composed; }
    auto annotations() const noexcept -> const store& { return m_store; }
    auto current_selection() const noexcept -> const selection& { return m_selection; }

    /// Adds a source. Its ids must not collide with anything already loaded.
    void load(application app);

    void select(const std::string& component);
    void deselect(const std::string& component);
    void extend_layout(const direction_set& directions, extension_scope scope);
    void extend_parent();
    void extend_task();
    void extend_functionality();
    auto suggest(help_mode mode) const -> std::vector<suggestion>;

    /// Copies the selection, with its links, into a screen of the composed
    /// application and clears the selection. Returns the target screen id.
    auto extract(const extraction_target& target) -> std::string;

    /// Positions `update.subject` relative to `update.anchor` inside a composed
    /// screen; both must share a container. Returns the solved placement of that container.
    auto place(const std::string& screen_id, const relative_constraint& update) -> placement;

    /// Serialized composed application. Throws precondition while it has no screen.
    auto export_document() const -> std::string;

    /// Source application owning a component, or nullptr.
    auto source_of(std::string_view component) const -> const application*;

private:
    void refresh();

    std::vector<application> m_sources;
    application m_composed;
    store m_store;
    selection m_selection;
};

/// Prefix applied to ids copied out of a source application.
auto copied_id(const std::string& source_app, const std::string& id) -> std::string;

} // namespace ontocompo
