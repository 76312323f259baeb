#include "doctest.h"
#include "generators.hpp"
#include "teamltl/errors.hpp"
#include "teamltl/modelcheck.hpp"
#include "teamltl/reductions.hpp"
#include "teamltl/teamcheck.hpp"

using namespace teamltl;
using teamltl::testing::Rng;

namespace {

const char* kExistsX = "prefix: E x1\nclause: x1 x1 x1\n";
const char* kForallX = "prefix: A x1\nclause: x1 x1 x1\n";

bool sync_pipeline(const QBFInstance& q) {
    auto r = reduce_qbf_sync(q);
    return check_sync(r.team, r.formula);
}

bool async_pipeline(const QBFInstance& q) {
    auto r = reduce_qbf_async_dep(q);
    return check_async(r.team, r.formula);
}

bool plsat_pipeline(const Formula& phi) {
    auto r = reduce_plneg_sat_to_tmc(phi);
    return check_sync(*traces_team_finite(r.structure), r.formula);
}

bool plval_pipeline(const Formula& phi) {
    auto r = reduce_pldep_val_to_tmc(phi);
    return check_sync(*traces_team_finite(r.structure), r.formula);
}

std::size_t universal_count(const QBFInstance& q) {
    return std::count_if(q.prefix.begin(), q.prefix.end(), [](auto& p) { return p.first == Quantifier::Forall; });
}

}  // namespace

TEST_CASE("parse_qbf") {
    auto q = parse_qbf(kExistsX);
    CHECK(q.prefix.size() == 1);
    CHECK(q.clauses.size() == 1);
    CHECK(parse_qbf(serialize_qbf(q)) == q);
    CHECK_THROWS_AS(parse_qbf("prefix: E x1\nclause: x1 x2 x1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_qbf("prefix: E x1\nclause: x1 x1\n"), SyntaxError);
    CHECK_THROWS_AS(parse_qbf("prefix: E x1 E x2\nclause: x1 x1 x1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_qbf("prefix: E x1 A x1\nclause: x1 x1 x1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_qbf("clause: x1 x1 x1\n"), SyntaxError);
    CHECK_THROWS_AS(parse_qbf("prefix: Q x1\nclause: x1 x1 x1\n"), SyntaxError);

    Rng rng(51);
    for (int n = 0; n < 100; ++n) {
        auto r = testing::random_qbf(rng, 6, 8);
        CHECK(parse_qbf(serialize_qbf(r)) == r);
    }
}

TEST_CASE("qbf_brute_force") {
    CHECK(qbf_brute_force(parse_qbf(kExistsX)));
    CHECK_FALSE(qbf_brute_force(parse_qbf(kForallX)));
    CHECK(qbf_brute_force(parse_qbf("prefix: E x1 A x2\nclause: x1 x2 x2\nclause: x1 -x2 -x2\n")));
    CHECK_FALSE(qbf_brute_force(parse_qbf("prefix: A x2 E x1\nclause: x1 x1 x1\nclause: -x1 x2 x2\n")));
    CHECK(qbf_brute_force(parse_qbf("prefix: A x2 E x1\nclause: x1 -x2 -x2\nclause: -x1 x2 x2\n")));
    QBFInstance big;
    for (int i = 0; i < 17; ++i) big.prefix.push_back({Quantifier::Exists, "v" + std::to_string(i)});
    for (int i = 0; i < 17; ++i) big.clauses.push_back({{{"v" + std::to_string(i), true}, {"v0", true}, {"v0", true}}});
    CHECK_THROWS_AS(qbf_brute_force(big), BoundExceeded);
}

TEST_CASE("synchronous QBF reduction") {
    auto e = reduce_qbf_sync(parse_qbf(kExistsX));
    CHECK(e.team.size() == 5);
    CHECK(check_sync(e.team, e.formula));
    CHECK_FALSE(sync_pipeline(parse_qbf(kForallX)));

    // T(1,1): empty, {x1, q1, dollar}, {dollar, hash}.
    UPTraceEncoding t11{{}, {{}, {"x1", "q1", "dollar"}, {"dollar", "hash"}}};
    CHECK(std::find(e.team.begin(), e.team.end(), t11) != e.team.end());

    Rng rng(52);
    for (int n = 0; n < 40; ++n) {
        auto q = testing::random_qbf(rng, 4, 4);
        auto r = reduce_qbf_sync(q);
        CHECK(r.team.size() == 3 * q.clauses.size() + 2 * q.prefix.size() + universal_count(q));
        CHECK(prfx(r.team) == 0);
        INFO(serialize_qbf(q));
        CHECK(check_sync(r.team, r.formula) == qbf_brute_force(q));
    }
}

TEST_CASE("asynchronous QBF reduction with dependence atoms") {
    CHECK(async_pipeline(parse_qbf(kExistsX)));
    CHECK_FALSE(async_pipeline(parse_qbf(kForallX)));
    CHECK_FALSE(async_pipeline(parse_qbf("prefix: E x1 A x2\nclause: x1 x1 x1\nclause: -x1 x2 x2\n")));
    CHECK(async_pipeline(parse_qbf("prefix: E x1 A x2\nclause: x1 x2 x2\nclause: x1 -x2 -x2\n")));

    auto r = reduce_qbf_async_dep(parse_qbf("prefix: E x1 A x2\nclause: x1 x2 x2\n"));
    CHECK(r.team.size() == 4);
    for (const auto& t : r.team) {
        bool of_x1 = value_at(t, 0).count("q1") > 0;
        if (!of_x1) continue;
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(value_at(t, i).count("p2"));
            CHECK(value_at(t, i).count("p2_bar"));
        }
    }

    Rng rng(53);
    for (int n = 0; n < 30; ++n) {
        auto q = testing::random_qbf(rng, 4, 4);
        auto red = reduce_qbf_async_dep(q);
        CHECK(red.team.size() == 2 * q.prefix.size());
        INFO(serialize_qbf(q));
        CHECK(check_async(red.team, red.formula) == qbf_brute_force(q));
    }
}

TEST_CASE("propositional team oracle") {
    CHECK(pl_team_brute_force(parse_formula("p1 | !p1"), PLMode::Val));
    CHECK(pl_team_brute_force(parse_formula("~(p1 & !p1)"), PLMode::Sat));
    CHECK_FALSE(pl_team_brute_force(parse_formula("dep(;p1)"), PLMode::Val));
    CHECK(pl_team_brute_force(parse_formula("dep(;p1)"), PLMode::Sat));
    CHECK_FALSE(pl_team_brute_force(parse_formula("p1 & !p1"), PLMode::Sat));
    CHECK_THROWS_AS(pl_team_brute_force(parse_formula("a & b & c & d"), PLMode::Sat), BoundExceeded);
    CHECK_THROWS_AS(pl_team_brute_force(parse_formula("F a"), PLMode::Sat), NonPropositional);
}

TEST_CASE("propositional satisfiability to model checking") {
    auto r = reduce_plneg_sat_to_tmc(parse_formula("p1"));
    CHECK(r.structure.worlds == std::vector<std::string>{"r", "a1", "b1"});
    CHECK(plsat_pipeline(parse_formula("p1")));
    CHECK_FALSE(plsat_pipeline(parse_formula("p1 & !p1")));
    CHECK(plsat_pipeline(parse_formula("~p1 & ~!p1")));
    CHECK_FALSE(plsat_pipeline(parse_formula("~(p1 | !p1)")));
    CHECK_THROWS_AS(reduce_plneg_sat_to_tmc(parse_formula("X p1")), NonPropositional);
    CHECK_THROWS_AS(reduce_plneg_sat_to_tmc(parse_formula("p & p_bar")), NameCollision);

    Rng rng(54);
    testing::FormulaShape fs;
    fs.props = {"a", "b", "c"};
    fs.temporal = false;
    fs.tilde = true;
    fs.dep = true;
    for (int n = 0; n < 300; ++n) {
        Formula f = testing::random_formula(rng, fs);
        INFO(render_formula(f));
        CHECK(plsat_pipeline(f) == pl_team_brute_force(f, PLMode::Sat));
    }
}

TEST_CASE("propositional validity with dependence atoms to model checking") {
    auto r = reduce_pldep_val_to_tmc(parse_formula("dep(;p1)"));
    CHECK(r.structure.worlds == std::vector<std::string>{"r", "a1", "b1"});
    CHECK_FALSE(plval_pipeline(parse_formula("dep(;p1)")));
    CHECK(plval_pipeline(parse_formula("p1 | !p1")));
    CHECK(plval_pipeline(parse_formula("dep(a;b) | dep(a;b)")));
    CHECK_THROWS_AS(reduce_pldep_val_to_tmc(parse_formula("~p1")), UnsupportedFragment);

    Rng rng(55);
    testing::FormulaShape fs;
    fs.props = {"a", "b", "c"};
    fs.temporal = false;
    fs.dep = true;
    for (int n = 0; n < 300; ++n) {
        Formula f = testing::random_formula(rng, fs);
        INFO(render_formula(f));
        CHECK(plval_pipeline(f) == pl_team_brute_force(f, PLMode::Val));
    }
}
