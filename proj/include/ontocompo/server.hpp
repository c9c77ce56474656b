#pragma once

#include "ontocompo/session.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace httplib {
class Server;
}

namespace ontocompo {

/// HTTP front of the engine: one session per workspace id, each persisted as
/// its application documents plus its command log under the data directory.
class composition_service {
public:
    /// Restores every session found under `data_dir` by replaying its log.
    explicit composition_service(std::filesystem::path data_dir);
    ~composition_service();

    composition_service(const composition_service&) = delete;
    auto operator=(const composition_service&) -> composition_service& = delete;

    /// Registers all routes.
    void mount(httplib::Server& server);

    auto session_count() const -> std::size_t;

private:
    struct entry;

    auto create() -> std::string;
    auto find(const std::string& id) const -> std::shared_ptr<entry>;
    void persist_app(const entry& e, const std::string& document) const;
    void persist_log(const entry& e) const;
    void restore();

    std::filesystem::path m_root;
    mutable std::mutex m_registry_mutex;
    std::map<std::string, std::shared_ptr<entry>> m_sessions;
};

/// Blocking server loop. Returns nonzero when the port cannot be bound.
auto serve(const std::string& host, int port, const std::filesystem::path& data_dir) -> int;

} // namespace ontocompo
