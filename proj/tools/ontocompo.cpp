#include "ontocompo/error.hpp"
#include "ontocompo/server.hpp"
#include "ontocompo/session.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ontocompo;

auto read_text(const std::string& path) -> std::string {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error(error_code::io, "cannot read " + path, path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw error(error_code::io, "cannot write " + path, path);
    }
}

auto load_apps(const std::vector<std::string>& files) -> std::vector<application> {
    std::vector<application> apps;
    for (const auto& f : files) {
        try {
            apps.push_back(parse_application(read_text(f)));
        } catch (const error& e) {
            throw error(e.code(), f + ": " + e.what(), e.subject());
        }
    }
    return apps;
}

auto run_command(const std::vector<std::string>& app_files, const std::string& script_file,
                 const std::string& out_file, const std::string& session_file) -> int {
    auto outcome = run_script(load_apps(app_files), read_text(script_file));
    if (!outcome.ok) {
        std::cerr << script_file << ": " << outcome.message << "\n";
        return outcome.line > 0 ? 2 : 1;
    }
    if (outcome.exported) {
        if (out_file.empty()) {
            std::cout << *outcome.exported;
        } else {
            write_text(out_file, *outcome.exported);
        }
    }
    if (!session_file.empty()) {
        write_text(session_file, save_session(outcome.final_session));
    }
    return 0;
}

auto replay_command(const std::string& session_file, const std::vector<std::string>& app_files,
                    const std::string& out_file) -> int {
    auto s = replay_session(read_text(session_file), load_apps(app_files));
    auto document = s.state().export_document();
    if (out_file.empty()) {
        std::cout << document;
    } else {
        write_text(out_file, document);
    }
    return 0;
}

auto validate_command(const std::vector<std::string>& app_files) -> int {
    int status = 0;
    for (const auto& f : app_files) {
        try {
            auto app = parse_application(read_text(f));
            std::cout << f << ": ok (" << app.id << ")\n";
        } catch (const error& e) {
            std::cout << f << ": " << to_string(e.code()) << ": " << e.what() << "\n";
            status = 1;
        }
    }
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Compose new applications out of the user interfaces of existing ones"};
    cli.require_subcommand(1);

    int port = 8080;
    std::string host = "127.0.0.1";
    std::string data_dir = "ontocompo-data";
    auto* serve_cmd = cli.add_subcommand("serve", "Run the HTTP composition service");
    serve_cmd->add_option("--port", port, "TCP port")->capture_default_str();
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--data", data_dir, "Directory holding persisted sessions")->capture_default_str();

    std::vector<std::string> app_files;
    std::string script_file;
    std::string out_file;
    std::string session_file;
    auto* run_cmd = cli.add_subcommand("run", "Execute a composition script against application documents");
    run_cmd->add_option("--app", app_files, "Application document (repeatable)");
    run_cmd->add_option("--script", script_file, "Script file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_file, "Where the export command writes (stdout when omitted)");
    run_cmd->add_option("--session", session_file, "Also save the session log here");

    auto* replay_cmd = cli.add_subcommand("replay", "Rebuild a saved session and export its composed application");
    replay_cmd->add_option("--session", session_file, "Session log")->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--app", app_files, "Application document (repeatable)");
    replay_cmd->add_option("--out", out_file, "Output document (stdout when omitted)");

    auto* validate_cmd = cli.add_subcommand("validate", "Check application documents");
    validate_cmd->add_option("app", app_files, "Application documents")->required();

    CLI11_PARSE(cli, argc, argv);

    try {
        if (*serve_cmd) {
            return serve(host, port, data_dir);
        }
        if (*run_cmd) {
            return run_command(app_files, script_file, out_file, session_file);
        }
        if (*replay_cmd) {
            return replay_command(session_file, app_files, out_file);
        }
        if (*validate_cmd) {
            return validate_command(app_files);
        }
    } catch (const error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return 1;
    }
    return 0;
}
