#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontocompo {

enum class error_code {
    syntax,        // malformed document, script line or request body
    reference,     // an identifier points at nothing
    invariant,     // a structural invariant does not hold
    unknown_id,    // a lookup by id failed
    precondition,  // the operation is not applicable in the current state
    conflict,      // a layout update contradicts the existing constraints
    io,
};

auto to_string(error_code code) -> std::string_view;

/// Base error of the engine. `subject` names the offending id, key or line.
class error : public std::runtime_error {
public:
    error(error_code code, const std::string& message, std::string subject = {})
      : std::runtime_error(message), m_code(code), m_subject(std::move(subject)) {}

    auto code() const noexcept -> error_code { return m_code; }
    auto subject() const noexcept -> const std::string& { return m_subject; }

private:
    error_code m_code;
    std::string m_subject;
};

} // namespace ontocompo
