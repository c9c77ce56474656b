#include "ontocompo/vocabulary.hpp"
#include "ontocompo/error.hpp"

namespace ontocompo {

auto to_string(error_code code) -> std::string_view {
    switch (code) {
    case error_code::syntax: return "syntax";
    case error_code::reference: return "reference";
    case error_code::invariant: return "invariant";
    case error_code::unknown_id: return "unknown_id";
    case error_code::precondition: return "precondition";
    case error_code::conflict: return "conflict";
    case error_code::io: return "io";
    }
    return "unknown";
}

auto to_string(predicate p) -> std::string_view {
    switch (p) {
    case predicate::contains: return "contains";
    case predicate::on_the_left_of: return "onTheLeftOf";
    case predicate::on_the_right_of: return "onTheRightOf";
    case predicate::above: return "above";
    case predicate::below: return "below";
    case predicate::above_left: return "aboveLeft";
    case predicate::above_right: return "aboveRight";
    case predicate::below_left: return "belowLeft";
    case predicate::below_right: return "belowRight";
    case predicate::linked_to_task: return "linkedToTask";
    case predicate::linked_to_functionality: return "linkedToFunctionality";
    case predicate::task_uses_functionality: return "taskUsesFunctionality";
    case predicate::sub_task_of: return "subTaskOf";
    case predicate::belongs_to_screen: return "belongsToScreen";
    case predicate::belongs_to_app: return "belongsToApp";
    }
    return "?";
}

auto parse_predicate(std::string_view text) -> std::optional<predicate> {
    for (auto p : all_predicates) {
        if (to_string(p) == text) {
            return p;
        }
    }
    if (text == "left") return predicate::on_the_left_of;
    if (text == "right") return predicate::on_the_right_of;
    return std::nullopt;
}

} // namespace ontocompo
