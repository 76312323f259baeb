#include "doctest.h"
#include "generators.hpp"
#include "teamltl/errors.hpp"
#include "teamltl/hyper.hpp"
#include "teamltl/teamcheck.hpp"

using namespace teamltl;
using teamltl::testing::FormulaShape;
using teamltl::testing::Rng;
using teamltl::testing::TeamShape;

TEST_CASE("parse_hyper") {
    auto s = parse_hyper("E pi. p@pi");
    REQUIRE(s.prefix.size() == 1);
    CHECK(s.prefix[0].first == Quantifier::Exists);
    CHECK(s.body->kind == HKind::Atom);
    CHECK(render_hyper(parse_hyper("A pi. F p@pi")) == "A pi. F p@pi");
    auto two = parse_hyper("E a. A b. p@a U !q@b");
    CHECK(two.prefix.size() == 2);
    CHECK(two.body->kind == HKind::Until);
    CHECK(equal(parse_hyper(render_hyper(two)).body, two.body));
    CHECK_THROWS_AS(parse_hyper("E pi. p@rho"), SyntaxError);
    CHECK_THROWS_AS(parse_hyper("E pi. A pi. p@pi"), SyntaxError);
    CHECK_THROWS_AS(parse_hyper("p@pi"), SyntaxError);
    CHECK_THROWS_AS(parse_hyper("E pi. p"), SyntaxError);
}

TEST_CASE("existential quantification breaks downward closure") {
    TeamEncoding both = parse_team("; {}\n{p} ; {}\n");
    TeamEncoding sub = parse_team("; {}\n");
    auto s = parse_hyper("E pi. p@pi");
    CHECK(check_hyper(both, s));
    CHECK_FALSE(check_hyper(sub, s));
}

TEST_CASE("quantifiers over several traces use one shared index") {
    TeamEncoding t = parse_team("{p} ; {}\n{} {p} ; {}\n");
    CHECK_FALSE(check_hyper(t, parse_hyper("A a. A b. F (p@a & p@b)")));
    CHECK(check_hyper(t, parse_hyper("E a. E b. F (p@a & p@b)")));
    CHECK(check_hyper(t, parse_hyper("A a. E b. X (p@a | p@b)")));
    CHECK(check_hyper(TeamEncoding{}, parse_hyper("A a. p@a")));
    CHECK_FALSE(check_hyper(TeamEncoding{}, parse_hyper("E a. p@a")));
    CHECK_THROWS_AS(check_hyper(t, parse_hyper("A a. A b. p@a | p@b"), 1), BoundExceeded);
}

TEST_CASE("translations") {
    CHECK(render_hyper(ltl_to_forall_hyper(parse_formula("F p"))) == "A pi. F p@pi");
    CHECK(render_hyper(ltl_to_forall_hyper(parse_formula("p U q"))) == "A pi. p@pi U q@pi");
    CHECK(equal(forall_hyper_to_ltl(parse_hyper("A pi. F p@pi")), parse_formula("F p")));
    CHECK(equal(forall_hyper_to_ltl(parse_hyper("A pi. !(p@pi)")), parse_formula("!p")));
    CHECK(equal(forall_hyper_to_ltl(parse_hyper("A pi. !(p@pi U q@pi)")), parse_formula("!p R !q")));
    CHECK_THROWS_AS(forall_hyper_to_ltl(parse_hyper("E pi. p@pi")), NotForallFragment);
    CHECK_THROWS_AS(forall_hyper_to_ltl(parse_hyper("A a. A b. p@a")), NotForallFragment);
    CHECK_THROWS_AS(ltl_to_forall_hyper(parse_formula("dep(;p)")), UnsupportedFragment);
    CHECK_THROWS_AS(ltl_to_forall_hyper(parse_formula("~p")), UnsupportedFragment);
}

TEST_CASE("universal sentences agree with asynchronous team semantics") {
    Rng rng(61);
    FormulaShape fs;
    TeamShape ts;
    for (int n = 0; n < 300; ++n) {
        Formula f = testing::random_formula(rng, fs);
        auto team = testing::random_team(rng, ts);
        auto s = ltl_to_forall_hyper(f);
        INFO(render_formula(f), "\n", serialize_team(team));
        bool a = check_async(team, f);
        CHECK(check_hyper(team, s) == a);
        CHECK(check_hyper(team, parse_hyper(render_hyper(s))) == a);
        Formula back = forall_hyper_to_ltl(s);
        CHECK(equal(back, f));
        CHECK(check_async(team, back) == a);
    }
}
