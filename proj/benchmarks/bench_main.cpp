#include <benchmark/benchmark.h>

#include <string>

#include "teamltl/classical.hpp"
#include "teamltl/modelcheck.hpp"
#include "teamltl/reductions.hpp"
#include "teamltl/teamcheck.hpp"

using namespace teamltl;

namespace {

// n traces; trace i reaches p after i steps and then loops on a cycle of length i + 1.
TeamEncoding staggered_team(int n) {
    std::string text;
    for (int i = 1; i <= n; ++i) {
        for (int k = 0; k < i; ++k) text += "{} ";
        text += "; {p}";
        for (int k = 0; k < i; ++k) text += " {}";
        text += "\n";
    }
    return parse_team(text);
}

// A chain of n worlds where only the last one is labelled p; every world may also stay put.
KripkeStructure chain(int n) {
    std::string text;
    for (int i = 0; i < n; ++i) text += "world w" + std::to_string(i) + (i + 1 == n ? " { p }\n" : " { q }\n");
    for (int i = 0; i < n; ++i) {
        text += "edge w" + std::to_string(i) + " w" + std::to_string(i) + "\n";
        if (i + 1 < n) text += "edge w" + std::to_string(i) + " w" + std::to_string(i + 1) + "\n";
    }
    return parse_kripke(text + "init w0\n");
}

QBFInstance alternating_qbf(int n) {
    std::string text = "prefix:";
    for (int i = 1; i <= n; ++i) text += (i % 2 ? " E x" : " A x") + std::to_string(i);
    text += "\n";
    for (int i = 1; i < n; ++i) text += "clause: x" + std::to_string(i) + " -x" + std::to_string(i + 1) + " x" + std::to_string(i + 1) + "\n";
    return parse_qbf(text);
}

void BM_CheckTrace(benchmark::State& state) {
    const Formula f = parse_formula("G (q U (p & X F q)) R F p");
    UPTraceEncoding t;
    for (int i = 0; i < state.range(0); ++i) t.prefix.push_back(i % 3 ? PropSet{"q"} : PropSet{});
    t.loop = {{"p"}, {"q"}};
    for (auto _ : state) benchmark::DoNotOptimize(check_trace(t, f));
}
BENCHMARK(BM_CheckTrace)->RangeMultiplier(4)->Range(4, 1024);

void BM_CheckSync(benchmark::State& state) {
    const auto team = staggered_team(static_cast<int>(state.range(0)));
    const Formula f = parse_formula("G F p & F p");
    for (auto _ : state) benchmark::DoNotOptimize(check_sync(team, f));
}
BENCHMARK(BM_CheckSync)->DenseRange(1, 7);

void BM_CheckSyncSplit(benchmark::State& state) {
    const auto team = staggered_team(static_cast<int>(state.range(0)));
    const Formula f = parse_formula("F p | (F p | F p)");
    for (auto _ : state) benchmark::DoNotOptimize(check_sync(team, f));
}
BENCHMARK(BM_CheckSyncSplit)->DenseRange(1, 6);

void BM_CheckAsyncGeneral(benchmark::State& state) {
    const auto team = staggered_team(static_cast<int>(state.range(0)));
    const Formula f = parse_formula("F dep(;p)");
    for (auto _ : state) benchmark::DoNotOptimize(check_async_general(team, f));
}
BENCHMARK(BM_CheckAsyncGeneral)->DenseRange(1, 5);

void BM_LtlToNba(benchmark::State& state) {
    std::string text = "p0";
    for (int i = 1; i < state.range(0); ++i) text = "F (p" + std::to_string(i) + " & X (" + text + "))";
    const Formula f = parse_formula(text);
    for (auto _ : state) benchmark::DoNotOptimize(ltl_to_nba(f).num_states());
}
BENCHMARK(BM_LtlToNba)->DenseRange(1, 6);

void BM_TmcSyncSplitfree(benchmark::State& state) {
    const auto k = chain(static_cast<int>(state.range(0)));
    const Formula f = parse_formula("F p & X F q & G F p");
    for (auto _ : state) benchmark::DoNotOptimize(tmc_sync_splitfree(k, f));
}
BENCHMARK(BM_TmcSyncSplitfree)->RangeMultiplier(2)->Range(2, 16);

void BM_TmcSyncOnTheFly(benchmark::State& state) {
    const auto k = chain(static_cast<int>(state.range(0)));
    const Formula f = parse_formula("F p & X F q & G F p");
    for (auto _ : state) benchmark::DoNotOptimize(tmc_sync_splitfree_onthefly(k, f));
}
BENCHMARK(BM_TmcSyncOnTheFly)->RangeMultiplier(2)->Range(2, 64);

void BM_TmcAsync(benchmark::State& state) {
    const auto k = chain(static_cast<int>(state.range(0)));
    const Formula f = parse_formula("G (q U p)");
    for (auto _ : state) benchmark::DoNotOptimize(tmc_async(k, f).holds);
}
BENCHMARK(BM_TmcAsync)->RangeMultiplier(2)->Range(2, 64);

void BM_QbfSyncReduction(benchmark::State& state) {
    const auto q = alternating_qbf(static_cast<int>(state.range(0)));
    const auto r = reduce_qbf_sync(q);
    for (auto _ : state) benchmark::DoNotOptimize(check_sync(r.team, r.formula));
}
BENCHMARK(BM_QbfSyncReduction)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
