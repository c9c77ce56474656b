#pragma once

#include "ontocompo/workspace.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontocompo {

enum class verb {
    load,
    select,
    deselect,
    extend_layout,
    extend_parent,
    extend_task,
    extend_functionality,
    suggest,
    extract,
    place,
    export_composed,
};

auto to_string(verb v) -> std::string_view;

/// One script line: `verb key=value ...`. Arguments are kept in schema order.
struct command {
    verb action;
    std::vector<std::pair<std::string, std::string>> args;

    auto arg(std::string_view key) const -> const std::string*;
    auto operator==(const command&) const -> bool = default;
};

/// Parses one script line; nullopt for blank and comment lines.
/// Throws syntax for unknown verbs, unknown or missing arguments and bad quoting.
auto parse_command(std::string_view line) -> std::optional<command>;

/// Canonical text of a command; parse_command(format_command(c)) == c.
auto format_command(const command& c) -> std::string;

/// Whether replaying the command changes the workspace.
auto mutates(verb v) -> bool;

struct command_result {
    std::optional<std::string> loaded_app;
    std::optional<std::string> screen;
    std::optional<placement> solved;
    std::vector<suggestion> suggestions;
    std::optional<std::string> exported;
};

/// A workspace, the pool of application documents it may load, and the log of
/// the mutating commands applied so far.
class session {
public:
    session() = default;

    auto state() const noexcept -> const workspace& { return m_workspace; }
    auto log() const noexcept -> const std::vector<command>& { return m_log; }

    /// Makes an application available to `load app=<id>`; replaces a pool entry with the same id.
    void offer(application app);
    /// Offers the application and runs `load app=<id>`; the pool is unchanged on failure.
    auto load(application app) -> command_result;
    auto pool() const noexcept -> const std::map<std::string, application>& { return m_pool; }

    /// Runs a command; on success mutating commands are appended to the log.
    auto apply(const command& c) -> command_result;

private:
    workspace m_workspace;
    std::map<std::string, application> m_pool;
    std::vector<command> m_log;
};

/// Session log text, one command per line. Throws precondition when the log is empty.
auto save_session(const session& s) -> std::string;

/// Replays a saved log over the given applications. Errors name the failing line.
auto replay_session(std::string_view log, const std::vector<application>& apps) -> session;

struct script_outcome {
    bool ok = true;
    int line = 0;  // 1-based line of the failing command
    std::string message;
    /// Document produced by the last `export` command, if any.
    std::optional<std::string> exported;
    session final_session;
};

/// Loads `apps` in order, then runs the script against them; stops at the first failing line.
auto run_script(const std::vector<application>& apps, std::string_view script) -> script_outcome;

} // namespace ontocompo
