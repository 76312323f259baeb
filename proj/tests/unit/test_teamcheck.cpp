#include "doctest.h"
#include "generators.hpp"
#include "teamltl/classical.hpp"
#include "teamltl/errors.hpp"
#include "teamltl/teamcheck.hpp"

using namespace teamltl;
using teamltl::testing::FormulaShape;
using teamltl::testing::Rng;
using teamltl::testing::TeamShape;

namespace {

TeamEncoding example_team() { return parse_team("{p} ; {}\n{} {p} ; {}\n"); }

GenRegistry constancy_registry() {
    GenRegistry reg;
    reg.add({"const", std::nullopt,
             [](const std::vector<PropSet>& ls, const std::vector<std::string>& args) {
                 return eval_dep_atom(ls, {}, args);
             },
             true});
    return reg;
}

}  // namespace

TEST_CASE("eval_dep_atom") {
    CHECK(eval_dep_atom({{"p", "q"}, {}}, {"p"}, {"q"}));
    CHECK_FALSE(eval_dep_atom({{"p"}, {"p", "q"}}, {"p"}, {"q"}));
    CHECK(eval_dep_atom({{"i1", "o1"}, {"i1", "o1"}, {"o1"}}, {"i1"}, {"o1"}));
    CHECK(eval_dep_atom({}, {}, {"p"}));
    CHECK_FALSE(eval_dep_atom({{"p"}, {}}, {}, {"p"}));
    CHECK(eval_dep_atom({{"a", "b", "c"}, {"a", "c"}, {"b"}}, {"a", "b"}, {"c"}));
}

TEST_CASE("eval_dep_atom agrees with pairwise comparison") {
    Rng rng(31);
    TeamShape ts;
    ts.props = {"a", "b", "c"};
    for (int n = 0; n < 500; ++n) {
        std::vector<PropSet> ls;
        for (std::size_t k = rng() % 5; k > 0; --k) ls.push_back(testing::random_trace(rng, ts).loop[0]);
        std::vector<std::string> det, dom;
        for (const char* p : {"a", "b", "c"}) {
            if (rng() % 3 == 0) det.push_back(p);
            else if (rng() % 2 == 0) dom.push_back(p);
        }
        if (dom.empty()) dom.push_back("c");
        bool expected = true;
        for (const auto& x : ls)
            for (const auto& y : ls) {
                bool agree = std::all_of(det.begin(), det.end(), [&](auto& p) { return x.count(p) == y.count(p); });
                bool same = std::all_of(dom.begin(), dom.end(), [&](auto& p) { return x.count(p) == y.count(p); });
                if (agree && !same) expected = false;
            }
        CHECK(eval_dep_atom(ls, det, dom) == expected);
    }
}

TEST_CASE("generalised atoms") {
    GenRegistry reg = constancy_registry();
    CHECK_THROWS_AS(reg.add({"const", 1, [](auto&, auto&) { return true; }, true}), DuplicateName);
    CHECK_THROWS_AS(register_gen_atom(reg, {"const", 1, [](auto&, auto&) { return true; }, true}), DuplicateName);
    CHECK_THROWS_AS(check_sync(example_team(), parse_formula("@foo(p)")), UnknownAtom);
    CheckOptions opts;
    opts.registry = &reg;
    CHECK_THROWS_AS(check_sync(example_team(), parse_formula("@foo(p)"), opts), UnknownAtom);

    Rng rng(32);
    TeamShape ts;
    for (int n = 0; n < 100; ++n) {
        auto team = testing::random_team(rng, ts);
        for (const char* text : {"@const(p)", "X @const(q)", "F @const(p) | G @const(q)"}) {
            std::string d = text;
            d.replace(d.find("@const("), 7, "dep(;");
            while (d.find("@const(") != std::string::npos) d.replace(d.find("@const("), 7, "dep(;");
            CHECK(check_sync(team, parse_formula(text), opts) == check_sync(team, parse_formula(d)));
            CHECK(check_async(team, parse_formula(text), opts) == check_async(team, parse_formula(d)));
        }
    }
}

TEST_CASE("example team: synchronous versus asynchronous eventuality") {
    auto t = example_team();
    CHECK_FALSE(check_sync(t, parse_formula("F p")));
    CHECK(check_sync(t, parse_formula("F p | F p")));
    CHECK(check_async(t, parse_formula("F p")));
    CHECK(check_async_general(t, parse_formula("F p")));
    CHECK(check_async(t, parse_formula("F p | F p")));
    CHECK_FALSE(check_async(t, parse_formula("dep(;p)")));
    CHECK(check_async(t, parse_formula("F dep(;p)")));
}

TEST_CASE("union closure fails synchronously") {
    TeamEncoding a({{{{"p"}}, {{}}}}), b({{{{}, {"p"}}, {{}}}});
    CHECK(check_sync(a, parse_formula("F p")));
    CHECK(check_sync(b, parse_formula("F p")));
    CHECK_FALSE(check_sync(example_team(), parse_formula("F p")));
}

TEST_CASE("empty team") {
    TeamEncoding empty;
    Rng rng(33);
    FormulaShape fs;
    fs.dep = true;
    for (int n = 0; n < 200; ++n) {
        Formula f = testing::random_formula(rng, fs);
        CHECK(check_sync(empty, f));
        CHECK(check_async(empty, f));
        CHECK(check_async_general(empty, f));
    }
    CHECK_FALSE(check_sync(empty, parse_formula("~(p & !p)")));
    CHECK_FALSE(check_async(empty, parse_formula("~(p & !p)")));
}

TEST_CASE("singletons agree with check_trace") {
    Rng rng(34);
    FormulaShape pure, negated;
    negated.tilde = true;
    negated.splits = false;
    TeamShape ts;
    for (int n = 0; n < 500; ++n) {
        // Under a split, ~ may see the empty part, so it is classical only without splits.
        Formula f = testing::random_formula(rng, n % 2 ? pure : negated);
        auto t = testing::random_trace(rng, ts);
        TeamEncoding single({t});
        bool c = check_trace(t, f);
        INFO(render_formula(f), " on ", serialize_trace(t));
        CHECK(check_sync(single, f) == c);
        CHECK(check_async_general(single, f) == c);
    }
}

TEST_CASE("general asynchronous engine agrees with flatness on pure LTL") {
    Rng rng(35);
    FormulaShape fs;
    TeamShape ts;
    for (int n = 0; n < 500; ++n) {
        Formula f = testing::random_formula(rng, fs);
        auto team = testing::random_team(rng, ts);
        INFO(render_formula(f), "\n", serialize_team(team));
        CHECK(check_async_general(team, f) == check_async(team, f));
    }
}

TEST_CASE("downward closure with dependence atoms") {
    Rng rng(36);
    FormulaShape fs;
    fs.dep = true;
    fs.max_length = 4;
    TeamShape ts;
    ts.max_traces = 3;
    for (int n = 0; n < 150; ++n) {
        Formula f = testing::random_formula(rng, fs);
        auto team = testing::random_team(rng, ts);
        for (Semantics sem : {Semantics::Sync, Semantics::Async}) {
            if (!check_team(team, f, sem)) continue;
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << team.size()); ++m) {
                INFO(render_formula(f), "\n", serialize_team(team));
                CHECK(check_team(testing::subteam(team, m), f, sem));
            }
        }
    }
}

TEST_CASE("~ under a split is not classical on singletons") {
    TeamEncoding single = parse_team("; {p}\n");
    CHECK(check_trace(*single.begin(), parse_formula("p | ~!q")));
    // Whichever part holds the trace, the other is empty and refutes ~!q.
    CHECK_FALSE(check_sync(single, parse_formula("~!q")));
    CHECK_FALSE(check_sync(single, parse_formula("p | ~!q")));
    CHECK_FALSE(check_sync(single, parse_formula("~!q | ~!q")));
}

TEST_CASE("split modes") {
    Formula f = parse_formula("~(p & !p) | ~(p & !p)");
    TeamEncoding single({{{}, {{"p"}}}});
    CHECK(default_split_mode(f) == SplitMode::AllCovers);
    CHECK(default_split_mode(parse_formula("p | q")) == SplitMode::DisjointOnly);
    CHECK(check_sync(single, f));
    CheckOptions disjoint;
    disjoint.split_mode = SplitMode::DisjointOnly;
    CHECK_FALSE(check_sync(single, f, disjoint));
    CHECK_FALSE(check_sync(TeamEncoding{}, f));
}

TEST_CASE("contradictory negation") {
    auto t = example_team();
    CHECK(check_sync(t, parse_formula("~F p")));
    CHECK_FALSE(check_async(t, parse_formula("~F p")));
    // Some non-empty subteam satisfies F p synchronously.
    CHECK(check_sync(t, parse_formula("(p | !p) | (~(p & !p) & F p)")));
}

TEST_CASE("until and release read componentwise") {
    // Each trace reaches q after its own run of p.
    TeamEncoding t = parse_team("{p} {q} ; {}\n{p} {p} {q} ; {}\n");
    CHECK(check_async_general(t, parse_formula("p U q")));
    CHECK_FALSE(check_sync(t, parse_formula("p U q")));
    CHECK(check_async_general(t, parse_formula("!q R (p | q)")));
}

TEST_CASE("budgets") {
    TeamEncoding big = parse_team("; {p} {}\n; {p} {} {}\n; {p} {} {} {} {}\n; {p} {} {} {} {} {} {}\n");
    CheckOptions small;
    small.max_lcm = 50;
    CHECK_THROWS_AS(check_sync(big, parse_formula("F p"), small), BoundExceeded);
    CheckOptions grid;
    grid.max_grid = 10;
    CHECK_THROWS_AS(check_async_general(big, parse_formula("F dep(;p)"), grid), VectorSpaceExceeded);
    CheckOptions team_cap;
    team_cap.max_team = 2;
    CHECK_THROWS_AS(check_sync(big, parse_formula("~p | p"), team_cap), BoundExceeded);
}
