#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_tree.hpp"
#include "tracecast/errors.hpp"
#include "tracecast/ui_query.hpp"

using namespace tracecast;

namespace {

UiNode leaf(std::string id, std::string cls, Rect r, std::optional<std::string> rid = {}) {
    UiNode n;
    n.id = std::move(id);
    n.class_name = std::move(cls);
    n.bounds = r;
    n.resource_id = std::move(rid);
    return n;
}

// Root with two Buttons sharing an id and a TextView.
UiTree small_tree() {
    UiTree t;
    t.screen = {0, 0, 100, 100};
    t.root = leaf("root", "FrameLayout", {0, 0, 100, 100});
    t.root.children.push_back(leaf("a", "Button", {0, 0, 50, 50}, "dup"));
    t.root.children.push_back(leaf("b", "Button", {50, 0, 100, 50}, "dup"));
    t.root.children.push_back(leaf("c", "TextView", {0, 50, 100, 100}, "label"));
    return t;
}

} // namespace

TEST_CASE("rects are half-open") {
    Rect r{10, 10, 20, 20};
    CHECK(r.contains(10, 10));
    CHECK_FALSE(r.contains(20, 10));
    CHECK_FALSE(r.contains(10, 20));
    CHECK(r.area() == 100);
    CHECK(intersect(r, {15, 15, 30, 30}) == Rect{15, 15, 20, 20});
    CHECK(intersect(r, {30, 30, 40, 40}).empty());
}

TEST_CASE("tree json round trip keeps every field") {
    auto t = small_tree();
    t.root.children[0].text = "OK";
    t.root.children[0].flags.clickable = true;
    t.root.children[0].flags.enabled = false;
    t.window_kind = WindowKind::dialog;
    nlohmann::json j = t;
    CHECK(j.at("root").at("children").at(0).at("node-id") == "a");
    CHECK(j.at("root").at("children").at(0).at("flags").at("enabled") == false);
    CHECK(j.get<UiTree>() == t);
}

TEST_CASE("validate reports duplicate node ids and inverted rects") {
    auto t = small_tree();
    CHECK_FALSE(validate(t).has_value());
    t.root.children[1].id = "a";
    CHECK(validate(t).has_value());
    t = small_tree();
    t.root.children[2].bounds = {10, 10, 5, 5};
    CHECK(validate(t).has_value());
}

TEST_CASE("xpath grammar") {
    auto steps = parse_xpath("/RelativeLayout/TableLayout[2]/android.widget.Button");
    REQUIRE(steps.size() == 3);
    CHECK(steps[1] == XPathStep{"TableLayout", 2});
    CHECK_FALSE(steps[2].index.has_value());
    CHECK(format_xpath(steps) == "/RelativeLayout/TableLayout[2]/android.widget.Button");
    for (auto bad : {"", "Button", "/", "//A", "/A[0]", "/A[", "/A[x]", "/1A", "/A[-1]"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_xpath(bad), ParseError);
    }
}

TEST_CASE("xpath evaluation uses same-class sibling indices") {
    auto t = small_tree();
    CHECK(xpath_for(t, "a") == "/FrameLayout/Button[1]");
    CHECK(xpath_for(t, "b") == "/FrameLayout/Button[2]");
    CHECK(xpath_for(t, "c") == "/FrameLayout/TextView");
    CHECK(xpath_for(t, "root") == "/FrameLayout");
    CHECK_THROWS_AS(xpath_for(t, "zz"), std::out_of_range);

    CHECK(evaluate_xpath(t, "/FrameLayout/Button[2]") == MatchResult::unique("b"));
    CHECK(evaluate_xpath(t, "/FrameLayout/Button") == MatchResult::ambiguous(2));
    CHECK(evaluate_xpath(t, "/FrameLayout/Button[3]") == MatchResult::not_found());
    CHECK(evaluate_xpath(t, "/LinearLayout/Button[1]") == MatchResult::not_found());
    CHECK(evaluate_xpath(t, "/FrameLayout[1]/TextView") == MatchResult::unique("c"));
}

TEST_CASE("selector evaluation") {
    auto t = small_tree();
    t.root.children[0].text = "5";
    CHECK(evaluate_selector(t, ResourceIdSelector{"label"}) == MatchResult::unique("c"));
    CHECK(evaluate_selector(t, ResourceIdSelector{"dup"}) == MatchResult::ambiguous(2));
    CHECK(evaluate_selector(t, ResourceIdSelector{"nope"}) == MatchResult::not_found());
    CHECK(evaluate_selector(t, PropertySelector{"Button", "5"}) == MatchResult::unique("a"));
    CHECK(evaluate_selector(t, PropertySelector{"Button", std::nullopt}) ==
          MatchResult::ambiguous(2));
}

TEST_CASE("selector json and well-formedness") {
    Selector s = PropertySelector{"Button", "5"};
    nlohmann::json j = s;
    CHECK(j == nlohmann::json{{"type", "property"}, {"class", "Button"}, {"text", "5"}});
    CHECK(j.get<Selector>() == s);
    CHECK_THROWS_AS(check_well_formed(Selector{ResourceIdSelector{""}}), ParseError);
    CHECK_THROWS_AS(check_well_formed(Selector{XPathSelector{"Button"}}), ParseError);
    CHECK_THROWS_AS((nlohmann::json{{"type", "css"}, {"value", "x"}}.get<Selector>()), ParseError);
}

TEST_CASE("resource id map on the calculator layout") {
    auto app = fixtures::app("calculator");
    auto t = sim::template_tree(app->screen("MainActivity"));
    auto map = build_resource_id_map(t);
    CHECK(map.size() == 18); // display, C, DEL, ten digits, four operators, =
    for (auto const& [id, count] : map) {
        CHECK(count == 1);
    }
    std::vector<NodeId> order;
    build_resource_id_map(t, &order);
    // Breadth-first: the root, then its children.
    REQUIRE(order.size() == node_count(t));
    CHECK(order[0] == "root");
    CHECK(order[1] == "display");
    CHECK(order[2] == "tl1");
}

TEST_CASE("calculator btn5 path") {
    auto app = fixtures::app("calculator");
    auto t = sim::template_tree(app->screen("MainActivity"));
    CHECK(xpath_for(t, "b_btn5") == "/RelativeLayout/TableLayout[2]/TableRow[2]/Button[2]");
}

TEST_CASE("hit test prefers the deepest node, then the last drawn") {
    auto t = small_tree();
    t.root.children.push_back(leaf("over", "ImageView", {40, 40, 60, 60}));
    CHECK(hit_test(t, 45, 45) == std::optional<NodeId>("over"));
    CHECK(hit_test(t, 10, 10) == std::optional<NodeId>("a"));
    CHECK(hit_test(t, 100, 10) == std::nullopt);
}

TEST_CASE("property: random trees agree with the brute-force oracles") {
    gen_tree::Generator g(20261016);
    for (int i = 0; i < 200; ++i) {
        auto t = g.tree();
        REQUIRE_FALSE(validate(t).has_value());

        auto map = build_resource_id_map(t);
        auto tally = oracles::id_tally(t);
        CHECK(std::map<std::string, int>(map.begin(), map.end()) == tally);

        for (auto const& f : oracles::flat(t)) {
            auto path = xpath_for(t, f.node->id);
            CHECK(path == oracles::xpath(t, f.node->id));
            CHECK(evaluate_xpath(t, path) == MatchResult::unique(f.node->id));
        }

        std::uniform_int_distribution<int> xs(-10, 1100), ys(-10, 1940);
        for (int k = 0; k < 50; ++k) {
            int x = xs(g.rng()), y = ys(g.rng());
            CHECK(hit_test(t, x, y) == oracles::hit(t, x, y));
        }
    }
}
