#include "ontocompo/session.hpp"
#include "ontocompo/error.hpp"

#include <algorithm>
#include <sstream>

namespace ontocompo {

namespace {

struct arg_spec {
    std::string_view key;
    bool required;
};

struct verb_spec {
    verb action;
    std::string_view name;
    std::vector<arg_spec> args;
};

auto verb_table() -> const std::vector<verb_spec>& {
    static const std::vector<verb_spec> table{
        {verb::load, "load", {{"app", true}}},
        {verb::select, "select", {{"component", true}}},
        {verb::deselect, "deselect", {{"component", true}}},
        {verb::extend_layout, "extendLayout", {{"directions", true}, {"scope", false}}},
        {verb::extend_parent, "extendParent", {}},
        {verb::extend_task, "extendTask", {}},
        {verb::extend_functionality, "extendFunctionality", {}},
        {verb::suggest, "suggest", {{"mode", false}}},
        {verb::extract, "extract", {{"target", true}, {"name", false}}},
        {verb::place, "place", {{"screen", true}, {"subject", true}, {"relation", true}, {"anchor", true}}},
        {verb::export_composed, "export", {}},
    };
    return table;
}

auto spec_of(verb v) -> const verb_spec& {
    const auto& table = verb_table();
    return *std::find_if(table.begin(), table.end(), [&](const verb_spec& s) { return s.action == v; });
}

auto is_space(char ch) -> bool {
    return ch == ' ' || ch == '\t' || ch == '\r';
}

auto syntax(const std::string& message) -> error {
    return error(error_code::syntax, message);
}

struct token {
    std::string key;
    std::optional<std::string> value;  // absent for a bare word
};

/// Splits a line into bare words and key=value tokens, honouring quotes and comments.
auto tokenize(std::string_view line) -> std::vector<token> {
    std::vector<token> out;
    std::size_t i = 0;
    while (true) {
        while (i < line.size() && is_space(line[i])) {
            ++i;
        }
        if (i >= line.size() || line[i] == '#') {
            break;
        }
        std::string key;
        while (i < line.size() && !is_space(line[i]) && line[i] != '=') {
            if (line[i] == '"') {
                throw syntax("unexpected quote in '" + std::string(line) + "'");
            }
            key += line[i++];
        }
        if (i >= line.size() || line[i] != '=') {
            out.push_back({std::move(key), std::nullopt});
            continue;
        }
        ++i;
        std::string value;
        if (i < line.size() && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                char ch = line[i++];
                if (ch == '\\' && i < line.size()) {
                    value += line[i++];
                } else if (ch == '"') {
                    closed = true;
                    break;
                } else {
                    value += ch;
                }
            }
            if (!closed) {
                throw syntax("unterminated quote in '" + std::string(line) + "'");
            }
            if (i < line.size() && !is_space(line[i])) {
                throw syntax("missing space after quoted value for '" + key + "'");
            }
        } else {
            while (i < line.size() && !is_space(line[i])) {
                value += line[i++];
            }
        }
        out.push_back({std::move(key), std::move(value)});
    }
    return out;
}

auto quote(const std::string& value) -> std::string {
    const bool plain = !value.empty() && std::none_of(value.begin(), value.end(), [](char ch) {
        return is_space(ch) || ch == '"' || ch == '#' || ch == '\\' || ch == '\n';
    });
    if (plain) {
        return value;
    }
    std::string out = "\"";
    for (char ch : value) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
        }
        out += ch;
    }
    return out + "\"";
}

auto parse_directions(const std::string& text) -> direction_set {
    direction_set out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto p = parse_predicate(item);
        if (!p || !is_spatial(*p)) {
            throw syntax("unknown direction '" + item + "'");
        }
        out.set(*p);
    }
    return out;
}

auto required(const command& c, std::string_view key) -> const std::string& {
    const auto* value = c.arg(key);
    if (value == nullptr) {
        throw syntax(std::string(to_string(c.action)) + " needs " + std::string(key) + "=");
    }
    return *value;
}

} // namespace

auto to_string(verb v) -> std::string_view {
    return spec_of(v).name;
}

auto command::arg(std::string_view key) const -> const std::string* {
    for (const auto& [k, v] : args) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

auto mutates(verb v) -> bool {
    return v != verb::suggest && v != verb::export_composed;
}

auto parse_command(std::string_view line) -> std::optional<command> {
    auto tokens = tokenize(line);
    if (tokens.empty()) {
        return std::nullopt;
    }
    const auto& name = tokens.front().key;
    if (tokens.front().value) {
        throw syntax("a command starts with a verb, got '" + name + "='");
    }
    const auto& table = verb_table();
    auto spec = std::find_if(table.begin(), table.end(), [&](const verb_spec& s) { return s.name == name; });
    if (spec == table.end()) {
        throw syntax("unknown command '" + name + "'");
    }
    std::map<std::string, std::string> given;
    for (auto it = std::next(tokens.begin()); it != tokens.end(); ++it) {
        if (!it->value) {
            throw syntax("expected key=value, got '" + it->key + "'");
        }
        auto known = std::find_if(spec->args.begin(), spec->args.end(),
                                  [&](const arg_spec& a) { return a.key == it->key; });
        if (known == spec->args.end()) {
            throw syntax(std::string(spec->name) + " takes no argument '" + it->key + "'");
        }
        if (!given.emplace(it->key, *it->value).second) {
            throw syntax("argument '" + it->key + "' given twice");
        }
    }
    command out{spec->action, {}};
    for (const auto& a : spec->args) {
        auto it = given.find(std::string(a.key));
        if (it != given.end()) {
            out.args.emplace_back(it->first, it->second);
        } else if (a.required) {
            throw syntax(std::string(spec->name) + " needs " + std::string(a.key) + "=");
        }
    }
    return out;
}

auto format_command(const command& c) -> std::string {
    std::string out(to_string(c.action));
    for (const auto& [key, value] : c.args) {
        out += " " + key + "=" + quote(value);
    }
    return out;
}

// ---------------------------------------------------------------------------

void session::offer(application app) {
    auto id = app.id;
    m_pool.insert_or_assign(std::move(id), std::move(app));
}

auto session::load(application app) -> command_result {
    const auto id = app.id;
    std::optional<application> previous;
    if (auto it = m_pool.find(id); it != m_pool.end()) {
        previous = it->second;
    }
    offer(std::move(app));
    try {
        return apply(command{verb::load, {{"app", id}}});
    } catch (...) {
        if (previous) {
            m_pool.insert_or_assign(id, std::move(*previous));
        } else {
            m_pool.erase(id);
        }
        throw;
    }
}

auto session::apply(const command& input) -> command_result {
    // round-trip through the script grammar so every logged command is canonical and schema-checked
    const command c = *parse_command(format_command(input));
    command_result result;
    auto& ws = m_workspace;
    switch (c.action) {
    case verb::load: {
        const auto& id = required(c, "app");
        auto it = m_pool.find(id);
        if (it == m_pool.end()) {
            throw error(error_code::unknown_id, "no application document with id '" + id + "' was provided", id);
        }
        ws.load(it->second);
        result.loaded_app = id;
        break;
    }
    case verb::select: ws.select(required(c, "component")); break;
    case verb::deselect: ws.deselect(required(c, "component")); break;
    case verb::extend_layout: {
        auto directions = parse_directions(required(c, "directions"));
        auto scope = extension_scope::last;
        if (const auto* text = c.arg("scope")) {
            auto parsed = parse_scope(*text);
            if (!parsed) {
                throw syntax("unknown scope '" + *text + "'");
            }
            scope = *parsed;
        }
        ws.extend_layout(directions, scope);
        break;
    }
    case verb::extend_parent: ws.extend_parent(); break;
    case verb::extend_task: ws.extend_task(); break;
    case verb::extend_functionality: ws.extend_functionality(); break;
    case verb::suggest: {
        auto mode = help_mode::complete;
        if (const auto* text = c.arg("mode")) {
            auto parsed = parse_help_mode(*text);
            if (!parsed) {
                throw syntax("unknown help mode '" + *text + "'");
            }
            mode = *parsed;
        }
        result.suggestions = ws.suggest(mode);
        break;
    }
    case verb::extract: {
        const auto& target = required(c, "target");
        const auto* name = c.arg("name");
        if (target == "new") {
            result.screen = ws.extract(new_screen{name ? *name : std::string{}});
        } else {
            if (name != nullptr) {
                throw syntax("name= only applies to target=new");
            }
            result.screen = ws.extract(existing_screen{target});
        }
        break;
    }
    case verb::place: {
        auto relation = parse_predicate(required(c, "relation"));
        if (!relation || !is_spatial(*relation)) {
            throw syntax("unknown relation '" + required(c, "relation") + "'");
        }
        result.screen = required(c, "screen");
        result.solved = ws.place(*result.screen, {required(c, "subject"), *relation, required(c, "anchor")});
        break;
    }
    case verb::export_composed: result.exported = ws.export_document(); break;
    }
    if (mutates(c.action)) {
        m_log.push_back(c);
    }
    return result;
}

auto save_session(const session& s) -> std::string {
    if (s.log().empty()) {
        throw error(error_code::precondition, "the session has no commands to save", "session");
    }
    std::string out;
    for (const auto& c : s.log()) {
        out += format_command(c) + "\n";
    }
    return out;
}

namespace {

/// Runs each line; rethrows failures with the line number and text prefixed.
void execute_lines(session& s, std::string_view text, std::optional<std::string>* exported, int* failed_line) {
    std::size_t start = 0;
    int number = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto line = text.substr(start, end - start);
        ++number;
        try {
            if (auto c = parse_command(line)) {
                auto result = s.apply(*c);
                if (result.exported && exported != nullptr) {
                    *exported = std::move(result.exported);
                }
            }
        } catch (const error& e) {
            if (failed_line != nullptr) {
                *failed_line = number;
            }
            throw error(e.code(), "line " + std::to_string(number) + " (" + std::string(line) + "): " + e.what(),
                        e.subject());
        }
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
}

} // namespace

auto replay_session(std::string_view log, const std::vector<application>& apps) -> session {
    session s;
    for (const auto& a : apps) {
        s.offer(a);
    }
    execute_lines(s, log, nullptr, nullptr);
    return s;
}

auto run_script(const std::vector<application>& apps, std::string_view script) -> script_outcome {
    script_outcome out;
    try {
        for (const auto& a : apps) {
            out.final_session.load(a);
        }
    } catch (const error& e) {
        out.ok = false;
        out.message = e.what();
        return out;
    }
    try {
        execute_lines(out.final_session, script, &out.exported, &out.line);
    } catch (const error& e) {
        out.ok = false;
        out.message = e.what();
    }
    return out;
}

} // namespace ontocompo
