#include "ontocompo/application.hpp"
#include "ontocompo/error.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ontocompo;
using namespace ontocompo::testing;

namespace {

const char* minimal_document = R"({
  "id": "Mini",
  "name": "Minimal",
  "screens": [
    {"id": "MiniScreen", "name": "Main",
     "root": {"id": "MiniRoot", "kind": "container", "children": [
       {"id": "MiniButton", "kind": "button", "label": "Go"}]}}
  ],
  "tasks": [],
  "functionalities": [],
  "links": []
})";

auto minimal_app() -> application {
    return parse_application(minimal_document);
}

auto has_violation(const std::vector<violation>& found, violation_kind kind) -> bool {
    return std::any_of(found.begin(), found.end(), [&](const violation& v) { return v.kind == kind; });
}

auto expect_error(const std::string& text, error_code code) -> std::string {
    try {
        parse_application(text);
    } catch (const error& e) {
        CHECK(e.code() == code);
        return e.what();
    }
    FAIL("document was accepted");
    return {};
}

} // namespace

TEST_CASE("minimal document parses to one screen with one button") {
    auto app = minimal_app();
    REQUIRE(app.screens.size() == 1);
    CHECK(app.screens[0].root.children.size() == 1);
    CHECK(app.screens[0].root.children[0].kind == component_kind::button);
    CHECK(validate(app).empty());
}

TEST_CASE("shipped fixtures are valid") {
    auto insurance = load_fixture("InsuranceC.json");
    CHECK(validate(insurance).empty());
    CHECK(find_component(insurance, "InsuranceCBirthDFC") != nullptr);
    const auto* info = find_component(insurance, "InsuranceCAccountInfoFC");
    REQUIRE(info != nullptr);
    CHECK(info->kind == component_kind::container);
    CHECK(validate(load_fixture("BusinessDir.json")).empty());
}

TEST_CASE("syntax errors report the byte offset") {
    auto message = expect_error(R"({"id": "X", "name": )", error_code::syntax);
    CHECK(message.find("at byte ") != std::string::npos);
}

TEST_CASE("screens are required") {
    expect_error(R"({"id": "Broken"})", error_code::syntax);
}

TEST_CASE("unknown keys are rejected with their path") {
    std::string text = minimal_document;
    text.replace(text.find("\"links\""), 7, "\"linkz\"");
    auto message = expect_error(text, error_code::syntax);
    CHECK(message.find("linkz") != std::string::npos);
}

TEST_CASE("a link to a missing task is a reference error naming it") {
    std::string text = minimal_document;
    text.replace(text.find("\"links\": []"), 11, R"("links": [{"ui": "MiniButton", "task": "T99"}])");
    try {
        parse_application(text);
        FAIL("dangling task accepted");
    } catch (const error& e) {
        CHECK(e.code() == error_code::reference);
        CHECK(std::string(e.what()).find("T99") != std::string::npos);
    }
}

TEST_CASE("overlapping absolute siblings yield one violation naming both") {
    auto app = minimal_app();
    app.screens[0].root.children.push_back({"MiniOther", component_kind::label, "", {}});
    absolute_layout abs;
    abs.positions["MiniButton"] = {0, 0, 50, 20};
    abs.positions["MiniOther"] = {40, 10, 50, 20};
    app.screens[0].layouts["MiniRoot"] = abs;
    auto found = validate(app);
    REQUIRE(found.size() == 1);
    CHECK(found[0].kind == violation_kind::overlap);
    CHECK(found[0].ids == std::vector<std::string>{"MiniButton", "MiniOther"});

    SUBCASE("touching edges do not overlap") {
        std::get<absolute_layout>(app.screens[0].layouts["MiniRoot"]).positions["MiniOther"] = {50, 0, 50, 20};
        CHECK(validate(app).empty());
    }
}

TEST_CASE("task cycles are reported once") {
    auto app = minimal_app();
    app.tasks.push_back({"T1", "one", std::string("T2"), {}});
    app.tasks.push_back({"T2", "two", std::string("T1"), {}});
    auto found = validate(app);
    CHECK(std::count_if(found.begin(), found.end(),
                        [](const violation& v) { return v.kind == violation_kind::task_cycle; }) == 1);
}

TEST_CASE("structural violations") {
    auto app = minimal_app();

    SUBCASE("duplicate ids") {
        app.screens[0].root.children.push_back({"MiniButton", component_kind::label, "", {}});
        CHECK(has_violation(validate(app), violation_kind::duplicate_id));
    }
    SUBCASE("children under a leaf") {
        app.screens[0].root.children[0].children.push_back({"Inner", component_kind::label, "", {}});
        CHECK(has_violation(validate(app), violation_kind::children_on_leaf));
    }
    SUBCASE("layout keyed by a leaf") {
        app.screens[0].layouts["MiniButton"] = relative_layout{};
        CHECK(has_violation(validate(app), violation_kind::layout_not_container));
    }
    SUBCASE("absolute layout missing a child") {
        app.screens[0].layouts["MiniRoot"] = absolute_layout{};
        CHECK(has_violation(validate(app), violation_kind::missing_placement));
    }
    SUBCASE("non-positive size") {
        absolute_layout abs;
        abs.positions["MiniButton"] = {0, 0, 0, 10};
        app.screens[0].layouts["MiniRoot"] = abs;
        CHECK(has_violation(validate(app), violation_kind::bad_geometry));
    }
    SUBCASE("overlapping table cells") {
        app.screens[0].root.children.push_back({"MiniOther", component_kind::label, "", {}});
        table_layout t;
        t.cells["MiniButton"] = {0, 0, 1, 2};
        t.cells["MiniOther"] = {0, 1, 1, 1};
        app.screens[0].layouts["MiniRoot"] = t;
        CHECK(has_violation(validate(app), violation_kind::overlap));
    }
    SUBCASE("self-anchored relative constraint") {
        app.screens[0].layouts["MiniRoot"] =
            relative_layout{{{"MiniButton", predicate::on_the_right_of, "MiniButton"}}};
        CHECK(has_violation(validate(app), violation_kind::self_anchored));
    }
    SUBCASE("non-spatial relation") {
        app.screens[0].root.children.push_back({"MiniOther", component_kind::label, "", {}});
        app.screens[0].layouts["MiniRoot"] = relative_layout{{{"MiniButton", predicate::contains, "MiniOther"}}};
        CHECK(has_violation(validate(app), violation_kind::relation_not_spatial));
    }
    SUBCASE("link to a task from a functionality slot") {
        app.tasks.push_back({"T1", "one", std::nullopt, {}});
        app.links.emplace_back(ui_functionality_link{"MiniButton", "T1"});
        CHECK(has_violation(validate(app), violation_kind::link_kind_mismatch));
    }
    SUBCASE("duplicate link") {
        app.tasks.push_back({"T1", "one", std::nullopt, {}});
        app.links.emplace_back(ui_task_link{"MiniButton", "T1"});
        app.links.emplace_back(ui_task_link{"MiniButton", "T1"});
        CHECK(has_violation(validate(app), violation_kind::duplicate_link));
    }
}

TEST_CASE("parent_of") {
    auto app = load_fixture("InsuranceC.json");
    CHECK(parent_of(app, "InsuranceCBirthDFC") == std::optional<std::string>("InsuranceCAccountInfoFC"));
    CHECK_FALSE(parent_of(app, "InsuranceCMainFC").has_value());
    CHECK_THROWS_AS(parent_of(app, "X"), error);
    try {
        parent_of(app, "X");
    } catch (const error& e) {
        CHECK(e.code() == error_code::unknown_id);
    }
}

TEST_CASE("serialization is deterministic and re-parses to an equal value") {
    auto business = load_fixture("BusinessDir.json");
    const auto once = serialize_application(business);
    CHECK(once == serialize_application(business));
    CHECK(parse_application(once) == business);
    CHECK(parse_application(serialize_application(minimal_app())) == minimal_app());
}

TEST_CASE("random applications are valid and round-trip") {
    rng gen(7);
    for (int i = 0; i < 25; ++i) {
        auto app = random_application(gen, "R" + std::to_string(i));
        auto problems = validate(app);
        CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front().message));
        CHECK(parse_application(serialize_application(app)) == app);
    }
}

TEST_CASE("layout_of defaults to an empty relative layout") {
    auto app = minimal_app();
    auto spec = layout_of(app.screens[0], "MiniRoot");
    REQUIRE(std::holds_alternative<relative_layout>(spec));
    CHECK(std::get<relative_layout>(spec).constraints.empty());
}
