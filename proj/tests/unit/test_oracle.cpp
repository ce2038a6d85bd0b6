#include <doctest.h>

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_tree.hpp"
#include "tracecast/errors.hpp"
#include "tracecast/oracle.hpp"
#include "tracecast/render.hpp"
#include "tracecast/ui_query.hpp"

using namespace tracecast;
using namespace tracecast::oracle;
using P = PropertyKind;

namespace {

AssertionDef check_of(P p, Selector s, bool negated = false) {
    AssertionDef a;
    a.property = p;
    a.selector = std::move(s);
    a.negated = negated;
    return a;
}

UiTree calculator_tree(std::string_view device = "mdpi-480x800") {
    auto app = fixtures::app("calculator");
    return sim::render(*app, "MainActivity", app->initial_state, fixtures::device(device));
}

// Recorder that has seen the tree's window, so its id map is current.
rec::Recorder recorder_for(UiTree const& t) {
    rec::Recorder r("p", "A");
    r.on_event({sim::AccEventKind::window_state_changed, t.root.id, {}, {}, std::nullopt, 0}, t);
    return r;
}

Selector by_path(UiTree const& t, std::string const& id) { return XPathSelector{xpath_for(t, id)}; }

} // namespace

TEST_CASE("relevant properties") {
    CHECK(relevant_properties("Button") == std::vector{P::displayed, P::enabled, P::clickable});
    CHECK(relevant_properties("android.widget.Button") ==
          std::vector{P::displayed, P::enabled, P::clickable});
    CHECK(relevant_properties("TextView") == std::vector{P::text, P::displayed});
    CHECK(relevant_properties("FooBar") == std::vector{P::displayed, P::enabled});

    auto r = PropertyRegistry::builtin();
    auto all = r.assertable("Button");
    REQUIRE(all.size() >= 3);
    CHECK(std::vector(all.begin(), all.begin() + 3) == r.relevant("Button"));
    CHECK(std::find(all.begin(), all.end(), P::checked) == all.end());
    CHECK(std::find(all.begin(), all.end(), P::sibling) != all.end());
    auto box = r.assertable("CheckBox");
    CHECK(box.front() == P::checked);
    CHECK(box.size() == all_properties.size());
}

TEST_CASE("shipped registry file matches the builtin table") {
    auto loaded = PropertyRegistry::load(std::string(TRACECAST_DATA_DIR) + "/relevant_properties.json");
    CHECK(loaded.to_json() == PropertyRegistry::builtin().to_json());
    CHECK_THROWS_AS(PropertyRegistry::from_json(nlohmann::json{{"Button", {"sibling"}}}), ParseError);
    CHECK_THROWS_AS(PropertyRegistry::from_json(nlohmann::json{{"Button", {"shiny"}}}), ParseError);
    CHECK_THROWS_AS(PropertyRegistry::from_json(nlohmann::json::array()), ParseError);
}

TEST_CASE("automatic assertions capture the current values") {
    auto t = calculator_tree();
    auto r = recorder_for(t);
    auto const* display = find_node(t, "display");
    auto defs = auto_assert(r, t, display->bounds.center_x(), display->bounds.center_y(), 42);
    REQUIRE(defs.size() == 2);
    CHECK(defs[0].property == P::text);
    CHECK(defs[0].values == std::vector<Scalar>{std::string("0")});
    CHECK(defs[0].selector == Selector{ResourceIdSelector{"display"}});
    CHECK(defs[0].timestamp == 42);
    CHECK(defs[1].property == P::displayed);
    CHECK_FALSE(defs[1].negated);

    // A disabled button: "enabled" comes out negated.
    find_node(t, "b_equals")->flags.enabled = false;
    auto const* eq = find_node(t, "b_equals");
    auto eq_defs = auto_assert(r, t, eq->bounds.center_x(), eq->bounds.center_y(), 1);
    REQUIRE(eq_defs.size() == 3);
    CHECK_FALSE(eq_defs[0].negated);
    CHECK(eq_defs[1].property == P::enabled);
    CHECK(eq_defs[1].negated);
    CHECK(eq_defs[1].values.empty());
    for (auto const& d : eq_defs) {
        CHECK(check_assertion(t, d, t.screen).verdict == Verdict::pass);
    }

    CHECK(auto_assert(r, t, 5000, 5000, 1).empty());
}

TEST_CASE("manual selection and commit") {
    auto t = calculator_tree();
    auto r = recorder_for(t);
    auto const* eq = find_node(t, "b_equals");
    auto sel = manual_select(t, eq->bounds.center_x(), eq->bounds.center_y());
    REQUIRE(sel);
    CHECK(sel->node == "b_equals");
    CHECK(sel->highlight == eq->bounds);
    CHECK(sel->properties.front() == P::displayed);

    ManualChoice clickable{P::clickable, {}, {}, false, {}};
    auto a = commit_manual(r, t, "b_equals", clickable, 7000);
    CHECK(a.selector == Selector{ResourceIdSelector{"equals"}});
    CHECK_FALSE(a.negated);
    CHECK(std::get<AssertionDef>(r.trace().actions.back()) == a);

    ManualChoice not_checked{P::enabled, Scalar{false}, {}, false, {}};
    CHECK(commit_manual(r, t, "b_equals", not_checked, 1).negated);

    ManualChoice text{P::text, {}, {}, false, {}};
    CHECK(commit_manual(r, t, "display", text, 1).values == std::vector<Scalar>{std::string("0")});

    ManualChoice sibling{P::sibling, {}, {}, false, {}};
    CHECK_THROWS_AS(commit_manual(r, t, "b_btn5", sibling, 1), std::invalid_argument);
    sibling.related = ResourceIdSelector{"btn4"};
    CHECK(commit_manual(r, t, "b_btn5", sibling, 1).related == std::optional<Selector>(ResourceIdSelector{"btn4"}));
    CHECK_THROWS_AS(commit_manual(r, t, "nope", text, 1), std::invalid_argument);

    ManualChoice bad_threshold{P::enabled, {}, {}, false, 50};
    CHECK_THROWS_AS(commit_manual(r, t, "b_btn5", bad_threshold, 1), std::invalid_argument);
}

TEST_CASE("check verdicts") {
    auto t = calculator_tree();
    auto text = check_of(P::text, ResourceIdSelector{"display"});
    text.values = {std::string("0")};
    CHECK(check_assertion(t, text, t.screen).verdict == Verdict::pass);
    text.values = {std::string("ERROR")};
    auto failed = check_assertion(t, text, t.screen);
    CHECK(failed.verdict == Verdict::fail);
    CHECK(failed.message.find("\"0\"") != std::string::npos);

    CHECK(check_assertion(t, check_of(P::clickable, ResourceIdSelector{"equals"}), t.screen).verdict ==
          Verdict::pass);
    CHECK(check_assertion(t, check_of(P::clickable, ResourceIdSelector{"display"}), t.screen).verdict ==
          Verdict::fail);
    CHECK(check_assertion(t, check_of(P::clickable, ResourceIdSelector{"ghost"}), t.screen).verdict ==
          Verdict::unresolved);
    CHECK(check_assertion(t, check_of(P::clickable, PropertySelector{"Button", std::nullopt}), t.screen)
              .verdict == Verdict::unresolved);

    auto rel = check_of(P::child, ResourceIdSelector{"btn5"});
    CHECK(check_assertion(t, rel, t.screen).verdict == Verdict::unresolved);
    rel.related = XPathSelector{"/RelativeLayout/TableLayout[2]/TableRow[2]"};
    CHECK(check_assertion(t, rel, t.screen).verdict == Verdict::pass);

    // Half of the quirk device's last row is below the screen edge.
    auto q = calculator_tree("quirk-extra-bottom");
    auto shown = check_of(P::displayed, ResourceIdSelector{"btn0"});
    CHECK(check_assertion(q, shown, q.screen).verdict == Verdict::fail);
    shown.threshold = 10;
    CHECK(check_assertion(q, shown, q.screen).verdict == Verdict::pass);
}

TEST_CASE("property: negation flips every resolved verdict") {
    gen_tree::Generator g(99);
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto t = g.tree();
        auto nodes = oracles::flat(t);
        for (int k = 0; k < 20; ++k) {
            auto const& n = *nodes[rng() % nodes.size()].node;
            auto p = all_properties[rng() % all_properties.size()];
            auto a = check_of(p, by_path(t, n.id));
            if (is_relational(p)) {
                a.related = by_path(t, nodes[rng() % nodes.size()].node->id);
            } else if (p == P::text) {
                a.values = {std::string(rng() % 2 ? n.text.value_or("") : "zzz")};
            }
            auto plain = check_assertion(t, a, t.screen).verdict;
            a.negated = true;
            auto negated = check_assertion(t, a, t.screen).verdict;
            REQUIRE(plain != Verdict::unresolved);
            CHECK(negated != plain);
            CHECK(negated != Verdict::unresolved);
        }
    }
}

TEST_CASE("property: relational assertions are mutually consistent") {
    gen_tree::Generator g(1234);
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        auto t = g.tree();
        auto nodes = oracles::flat(t);
        for (int k = 0; k < 30; ++k) {
            auto const& fa = nodes[rng() % nodes.size()];
            auto const& fb = nodes[rng() % nodes.size()];
            auto a = by_path(t, fa.node->id);
            auto b = by_path(t, fb.node->id);
            auto holds = [&](P p, Selector const& x, Selector const& y) {
                auto def = check_of(p, x);
                def.related = y;
                return check_assertion(t, def, t.screen).verdict == Verdict::pass;
            };
            bool a_child_of_b = fa.parent == fb.node;
            CHECK(holds(P::child, a, b) == a_child_of_b);
            CHECK(holds(P::parent, b, a) == a_child_of_b);
            bool siblings = fa.node != fb.node && fa.parent && fa.parent == fb.parent;
            CHECK(holds(P::sibling, a, b) == siblings);
            CHECK(holds(P::sibling, b, a) == siblings);
        }
    }
}

TEST_CASE("property: threshold 100 is the same as complete display") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c(-200, 1300);
    Rect screen{0, 0, 1080, 1920};
    for (int i = 0; i < 20000; ++i) {
        int l = c(rng), t = c(rng);
        Rect r{l, t, l + int(rng() % 600), t + int(rng() % 600)};
        CHECK(displayed_at_least(r, screen, 100) == (screen.contains(r) && !r.empty()));
        int threshold = 1 + int(rng() % 100);
        CHECK(displayed_at_least(r, screen, threshold) == oracles::displayed(r, screen, threshold));
    }

    gen_tree::Generator g(8);
    for (int i = 0; i < 50; ++i) {
        auto t = g.tree();
        for (auto const& f : oracles::flat(t)) {
            auto full = check_of(P::displayed, by_path(t, f.node->id));
            auto hundred = full;
            hundred.threshold = 100;
            CHECK(check_assertion(t, full, t.screen).verdict ==
                  check_assertion(t, hundred, t.screen).verdict);
        }
    }
}
