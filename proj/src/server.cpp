#include "ontocompo/server.hpp"
#include "ontocompo/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace ontocompo {

using nlohmann::json;
namespace fs = std::filesystem;

struct composition_service::entry {
    std::string id;
    fs::path dir;
    mutable std::shared_mutex mutex;
    session state;
    std::size_t app_count = 0;
};

namespace {

auto status_for(error_code code) -> int {
    switch (code) {
    case error_code::syntax:
    case error_code::reference:
    case error_code::invariant: return 400;
    case error_code::unknown_id: return 404;
    case error_code::precondition:
    case error_code::conflict: return 409;
    case error_code::io: return 500;
    }
    return 500;
}

void send_error(httplib::Response& res, const error& e) {
    json body = {{"code", to_string(e.code())}, {"message", e.what()}, {"subject", e.subject()}};
    if (const auto* lc = dynamic_cast<const layout_conflict*>(&e)) {
        json conflicts = json::array();
        for (const auto& c : lc->conflicts()) {
            conflicts.push_back({{"kind", to_string(c.kind)}, {"ids", c.ids}, {"message", c.message}});
        }
        body["conflicts"] = std::move(conflicts);
    }
    res.status = status_for(e.code());
    res.set_content(body.dump(), "application/json");
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

auto read_file(const fs::path& path) -> std::string {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    const auto tmp = fs::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) {
            throw error(error_code::io, "cannot write " + tmp.string(), tmp.string());
        }
    }
    fs::rename(tmp, path);
}

auto body_object(const httplib::Request& req) -> json {
    if (req.body.empty()) {
        return json::object();
    }
    json body;
    try {
        body = json::parse(req.body);
    } catch (const json::parse_error& e) {
        throw error(error_code::syntax, std::string("malformed request body: ") + e.what(), "body");
    }
    if (!body.is_object()) {
        throw error(error_code::syntax, "request body must be an object", "body");
    }
    return body;
}

auto string_field(const json& body, const std::string& key) -> std::string {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) {
        throw error(error_code::syntax, "request body needs a string '" + key + "'", key);
    }
    return it->get<std::string>();
}

auto selection_json(const workspace& ws) -> json {
    return {{"items", ws.current_selection().items()}};
}

auto suggestions_json(const std::vector<suggestion>& suggestions) -> json {
    json out = json::array();
    for (const auto& s : suggestions) {
        out.push_back({{"question", s.question},
                       {"candidates", s.candidates},
                       {"source", to_string(s.source)},
                       {"about", s.about}});
    }
    return out;
}

auto placement_json(const placement& p) -> json {
    json out = json::object();
    for (const auto& [id, cell] : p) {
        out[id] = {{"row", cell.row}, {"col", cell.col}};
    }
    return out;
}

auto random_token() -> std::string {
    static std::mutex mutex;
    static std::mt19937_64 engine{std::random_device{}()};
    std::lock_guard lock(mutex);
    std::ostringstream out;
    out << std::hex << engine();
    return out.str();
}

} // namespace

composition_service::composition_service(fs::path data_dir) : m_root(std::move(data_dir)) {
    fs::create_directories(m_root);
    restore();
}

composition_service::~composition_service() = default;

auto composition_service::session_count() const -> std::size_t {
    std::lock_guard lock(m_registry_mutex);
    return m_sessions.size();
}

void composition_service::restore() {
    for (const auto& dir : fs::directory_iterator(m_root)) {
        if (!dir.is_directory()) {
            continue;
        }
        auto e = std::make_shared<entry>();
        e->id = dir.path().filename().string();
        e->dir = dir.path();
        try {
            std::vector<fs::path> files;
            if (fs::exists(e->dir / "apps")) {
                for (const auto& f : fs::directory_iterator(e->dir / "apps")) {
                    if (f.path().extension() == ".json") {
                        files.push_back(f.path());
                    }
                }
            }
            std::sort(files.begin(), files.end());
            std::vector<application> apps;
            for (const auto& f : files) {
                apps.push_back(parse_application(read_file(f)));
            }
            const auto log_path = e->dir / "session.log";
            e->state = replay_session(fs::exists(log_path) ? read_file(log_path) : std::string{}, apps);
            e->app_count = files.size();
        } catch (const error& err) {
            std::cerr << "skipping stored session " << e->id << ": " << err.what() << "\n";
            continue;
        }
        m_sessions.emplace(e->id, std::move(e));
    }
}

auto composition_service::create() -> std::string {
    auto e = std::make_shared<entry>();
    std::lock_guard lock(m_registry_mutex);
    do {
        e->id = random_token();
    } while (m_sessions.contains(e->id) || fs::exists(m_root / e->id));
    e->dir = m_root / e->id;
    fs::create_directories(e->dir / "apps");
    m_sessions.emplace(e->id, e);
    return e->id;
}

auto composition_service::find(const std::string& id) const -> std::shared_ptr<entry> {
    std::lock_guard lock(m_registry_mutex);
    auto it = m_sessions.find(id);
    if (it == m_sessions.end()) {
        throw error(error_code::unknown_id, "unknown workspace '" + id + "'", id);
    }
    return it->second;
}

void composition_service::persist_app(const entry& e, const std::string& document) const {
    char name[32];
    std::snprintf(name, sizeof name, "%04zu.json", e.app_count);
    fs::create_directories(e.dir / "apps");
    write_file(e.dir / "apps" / name, document);
}

void composition_service::persist_log(const entry& e) const {
    if (e.state.log().empty()) {
        return;
    }
    write_file(e.dir / "session.log", save_session(e.state));
}

void composition_service::mount(httplib::Server& server) {
    // Runs `fn` under the session's exclusive lock and persists the log afterwards.
    auto mutate = [this](const httplib::Request& req, httplib::Response& res,
                         const std::function<json(entry&, const json&)>& fn) {
        try {
            auto e = find(req.path_params.at("id"));
            auto body = body_object(req);
            std::unique_lock lock(e->mutex);
            auto out = fn(*e, body);
            persist_log(*e);
            send_json(res, out);
        } catch (const error& err) {
            send_error(res, err);
        }
    };
    auto read = [this](const httplib::Request& req, httplib::Response& res,
                       const std::function<void(const entry&)>& fn) {
        try {
            auto e = find(req.path_params.at("id"));
            std::shared_lock lock(e->mutex);
            fn(*e);
        } catch (const error& err) {
            send_error(res, err);
        }
    };
    auto run = [](entry& e, command c) { return e.state.apply(c); };

    server.Post("/workspaces", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, {{"id", create()}}, 201);
    });

    server.Post("/workspaces/:id/apps", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            auto e = find(req.path_params.at("id"));
            auto app = parse_application(req.body);
            const auto app_id = app.id;
            std::unique_lock lock(e->mutex);
            e->state.load(std::move(app));
            persist_app(*e, req.body);
            ++e->app_count;
            persist_log(*e);
            send_json(res, {{"app", app_id}}, 201);
        } catch (const error& err) {
            send_error(res, err);
        }
    });

    server.Get("/workspaces/:id/apps", [read](const httplib::Request& req, httplib::Response& res) {
        read(req, res, [&](const entry& e) {
            json sources = json::array();
            for (const auto& a : e.state.state().sources()) {
                sources.push_back(json::parse(serialize_application(a)));
            }
            send_json(res, {{"sources", sources},
                            {"composed", json::parse(serialize_application(e.state.state().composed()))}});
        });
    });

    server.Get("/workspaces/:id/store", [read](const httplib::Request& req, httplib::Response& res) {
        read(req, res, [&](const entry& e) { res.set_content(dump(e.state.state().annotations()), "text/plain"); });
    });

    server.Get("/workspaces/:id/selection", [read](const httplib::Request& req, httplib::Response& res) {
        read(req, res, [&](const entry& e) { send_json(res, selection_json(e.state.state())); });
    });

    for (auto action : {verb::select, verb::deselect}) {
        const std::string path = action == verb::select ? "/workspaces/:id/selection/select"
                                                        : "/workspaces/:id/selection/deselect";
        server.Post(path, [mutate, run, action](const httplib::Request& req, httplib::Response& res) {
            mutate(req, res, [&](entry& e, const json& body) {
                run(e, command{action, {{"component", string_field(body, "component")}}});
                return selection_json(e.state.state());
            });
        });
    }

    server.Post("/workspaces/:id/selection/extend/layout",
                [mutate, run](const httplib::Request& req, httplib::Response& res) {
                    mutate(req, res, [&](entry& e, const json& body) {
                        auto it = body.find("directions");
                        if (it == body.end() || !it->is_array()) {
                            throw error(error_code::syntax, "request body needs a 'directions' array", "directions");
                        }
                        std::string directions;
                        for (const auto& d : *it) {
                            if (!d.is_string()) {
                                throw error(error_code::syntax, "directions must be strings", "directions");
                            }
                            directions += (directions.empty() ? "" : ",") + d.get<std::string>();
                        }
                        command c{verb::extend_layout, {{"directions", directions}}};
                        if (body.contains("scope")) {
                            c.args.emplace_back("scope", string_field(body, "scope"));
                        }
                        run(e, c);
                        return selection_json(e.state.state());
                    });
                });

    for (auto [suffix, action] : {std::pair{"parent", verb::extend_parent}, std::pair{"task", verb::extend_task},
                                  std::pair{"functionality", verb::extend_functionality}}) {
        server.Post(std::string("/workspaces/:id/selection/extend/") + suffix,
                    [mutate, run, action = action](const httplib::Request& req, httplib::Response& res) {
                        mutate(req, res, [&](entry& e, const json&) {
                            run(e, command{action, {}});
                            return selection_json(e.state.state());
                        });
                    });
    }

    server.Get("/workspaces/:id/suggestions", [read](const httplib::Request& req, httplib::Response& res) {
        read(req, res, [&](const entry& e) {
            auto mode_text = req.has_param("mode") ? req.get_param_value("mode") : std::string("complete");
            auto mode = parse_help_mode(mode_text);
            if (!mode) {
                throw error(error_code::syntax, "unknown help mode '" + mode_text + "'", "mode");
            }
            send_json(res, {{"suggestions", suggestions_json(e.state.state().suggest(*mode))}});
        });
    });

    server.Post("/workspaces/:id/extract", [mutate, run](const httplib::Request& req, httplib::Response& res) {
        mutate(req, res, [&](entry& e, const json& body) {
            command c{verb::extract, {{"target", string_field(body, "target")}}};
            if (body.contains("name")) {
                c.args.emplace_back("name", string_field(body, "name"));
            }
            auto result = run(e, c);
            json out = selection_json(e.state.state());
            out["screen"] = *result.screen;
            return out;
        });
    });

    server.Post("/workspaces/:id/screens/:sid/place", [mutate, run](const httplib::Request& req,
                                                                    httplib::Response& res) {
        mutate(req, res, [&](entry& e, const json& body) {
            const auto& screen_id = req.path_params.at("sid");
            auto result = run(e, command{verb::place,
                                         {{"screen", screen_id},
                                          {"subject", string_field(body, "subject")},
                                          {"relation", string_field(body, "relation")},
                                          {"anchor", string_field(body, "anchor")}}});
            json constraints = json::array();
            const auto* s = find_screen(e.state.state().composed(), screen_id);
            for (const auto& [container, layout] : s->positioning) {
                for (const auto& c : layout.constraints) {
                    constraints.push_back({{"container", container},
                                           {"subject", c.subject},
                                           {"relation", to_string(c.relation)},
                                           {"anchor", c.anchor}});
                }
            }
            return json{{"screen", screen_id}, {"placement", placement_json(*result.solved)},
                        {"constraints", constraints}};
        });
    });

    server.Get("/workspaces/:id/export", [read](const httplib::Request& req, httplib::Response& res) {
        read(req, res, [&](const entry& e) { res.set_content(e.state.state().export_document(), "application/json"); });
    });

    server.Get("/workspaces/:id/log", [read](const httplib::Request& req, httplib::Response& res) {
        read(req, res, [&](const entry& e) {
            std::string text;
            for (const auto& c : e.state.log()) {
                text += format_command(c) + "\n";
            }
            res.set_content(text, "text/plain");
        });
    });
}

auto serve(const std::string& host, int port, const fs::path& data_dir) -> int {
    composition_service service(data_dir);
    httplib::Server server;
    service.mount(server);
    std::cerr << "ontocompo listening on " << host << ":" << port << " (" << service.session_count()
              << " stored sessions)\n";
    if (!server.listen(host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 1;
    }
    return 0;
}

} // namespace ontocompo
