#include "generators.hpp"

#include <algorithm>
#include <set>

namespace teamltl::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Formula random_atom(Rng& rng, const FormulaShape& shape) {
    const auto& ps = shape.props;
    if (shape.dep && uniform(rng, 0, 3) == 0) {
        std::string a = ps[uniform(rng, 0, ps.size() - 1)], b = ps[uniform(rng, 0, ps.size() - 1)];
        if (uniform(rng, 0, 1)) return dep({}, {b});
        return dep({a}, {b});
    }
    const std::string& p = ps[uniform(rng, 0, ps.size() - 1)];
    return uniform(rng, 0, 1) ? pos(p) : neg(p);
}

Formula build(Rng& rng, const FormulaShape& shape, std::size_t budget) {
    if (budget == 0) return random_atom(rng, shape);
    std::vector<Kind> ops{Kind::And};
    if (shape.splits) ops.push_back(Kind::Split);
    if (shape.tilde) ops.push_back(Kind::Tilde);
    if (shape.temporal) ops.insert(ops.end(), {Kind::Next, Kind::Eventually, Kind::Globally, Kind::Until, Kind::Release});
    Kind k = ops[uniform(rng, 0, ops.size() - 1)];
    if (is_unary(k)) {
        Formula a = build(rng, shape, budget - 1);
        switch (k) {
            case Kind::Next: return next(a);
            case Kind::Eventually: return eventually(a);
            case Kind::Globally: return globally(a);
            default: return tilde(a);
        }
    }
    std::size_t left = uniform(rng, 0, budget - 1);
    Formula a = build(rng, shape, left), b = build(rng, shape, budget - 1 - left);
    switch (k) {
        case Kind::And: return conj(a, b);
        case Kind::Split: return split(a, b);
        case Kind::Until: return until(a, b);
        default: return release(a, b);
    }
}

PropSet random_letter(Rng& rng, const std::vector<std::string>& props) {
    PropSet s;
    for (const auto& p : props)
        if (uniform(rng, 0, 1)) s.insert(p);
    return s;
}

}  // namespace

Formula random_formula(Rng& rng, const FormulaShape& shape) {
    return build(rng, shape, uniform(rng, 0, shape.max_length));
}

UPTraceEncoding random_trace(Rng& rng, const TeamShape& shape) {
    UPTraceEncoding e;
    std::size_t pre = uniform(rng, 0, shape.max_prefix), loop = uniform(rng, 1, shape.max_loop);
    for (std::size_t i = 0; i < pre; ++i) e.prefix.push_back(random_letter(rng, shape.props));
    for (std::size_t i = 0; i < loop; ++i) e.loop.push_back(random_letter(rng, shape.props));
    return e;
}

TeamEncoding random_team(Rng& rng, const TeamShape& shape) {
    std::size_t n = uniform(rng, shape.allow_empty ? 0 : 1, shape.max_traces);
    std::vector<UPTraceEncoding> ts;
    for (std::size_t i = 0; i < n; ++i) ts.push_back(random_trace(rng, shape));
    return TeamEncoding(std::move(ts));
}

namespace {

KripkeStructure labelled(Rng& rng, std::size_t n, const std::vector<std::string>& props) {
    KripkeStructure k;
    for (std::size_t w = 0; w < n; ++w) {
        k.worlds.push_back("w" + std::to_string(w));
        k.labels.push_back(random_letter(rng, props));
    }
    k.succ.assign(n, {});
    k.initial = 0;
    return k;
}

}  // namespace

KripkeStructure random_finite_kripke(Rng& rng, std::size_t max_worlds, const std::vector<std::string>& props) {
    // Worlds 0..t-1 form a DAG (edges only to larger indices or into the tail);
    // worlds t..n-1 form one simple cycle entered anywhere.
    std::size_t n = uniform(rng, 1, max_worlds);
    std::size_t cyc = uniform(rng, 1, n);
    std::size_t t = n - cyc;
    KripkeStructure k = labelled(rng, n, props);
    for (std::size_t w = t; w < n; ++w) k.succ[w] = {w + 1 < n ? w + 1 : t};
    for (std::size_t w = 0; w < t; ++w) {
        std::set<std::size_t> out;
        std::size_t deg = uniform(rng, 1, 2);
        for (std::size_t d = 0; d < deg; ++d) out.insert(uniform(rng, w + 1, n - 1));
        k.succ[w].assign(out.begin(), out.end());
    }
    return k;
}

KripkeStructure random_kripke(Rng& rng, std::size_t max_worlds, const std::vector<std::string>& props) {
    std::size_t n = uniform(rng, 1, max_worlds);
    KripkeStructure k = labelled(rng, n, props);
    for (std::size_t w = 0; w < n; ++w) {
        std::set<std::size_t> out;
        std::size_t deg = uniform(rng, 1, 2);
        for (std::size_t d = 0; d < deg; ++d) out.insert(uniform(rng, 0, n - 1));
        k.succ[w].assign(out.begin(), out.end());
    }
    return k;
}

QBFInstance random_qbf(Rng& rng, std::size_t max_vars, std::size_t max_clauses) {
    std::size_t n = uniform(rng, 1, max_vars);
    std::size_t min_m = (n + 2) / 3;
    std::size_t m = uniform(rng, std::max<std::size_t>(1, min_m), std::max(max_clauses, min_m));
    QBFInstance q;
    for (std::size_t i = 0; i < n; ++i)
        q.prefix.emplace_back(uniform(rng, 0, 1) ? Quantifier::Exists : Quantifier::Forall, "x" + std::to_string(i + 1));
    std::vector<std::size_t> slots(3 * m);
    for (auto& s : slots) s = uniform(rng, 0, n - 1);
    // Cover every variable at distinct random slots.
    std::vector<std::size_t> order(3 * m);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < n; ++i) slots[order[i]] = i;
    for (std::size_t j = 0; j < m; ++j) {
        std::array<QBFLiteral, 3> c;
        for (std::size_t k = 0; k < 3; ++k) c[k] = {"x" + std::to_string(slots[3 * j + k] + 1), uniform(rng, 0, 1) == 1};
        q.clauses.push_back(c);
    }
    return q;
}

void for_each_small_qbf(std::size_t max_vars, std::size_t max_clauses,
                        const std::function<void(const QBFInstance&)>& fn) {
    for (std::size_t n = 1; n <= max_vars; ++n) {
        std::vector<QBFLiteral> pool;
        for (std::size_t i = 1; i <= n; ++i) {
            pool.push_back({"x" + std::to_string(i), true});
            pool.push_back({"x" + std::to_string(i), false});
        }
        std::vector<std::array<QBFLiteral, 3>> clauses;
        for (std::size_t a = 0; a < pool.size(); ++a)
            for (std::size_t b = a; b < pool.size(); ++b)
                for (std::size_t c = b; c < pool.size(); ++c) clauses.push_back({pool[a], pool[b], pool[c]});
        std::function<void(std::vector<std::size_t>&, std::size_t)> lists = [&](std::vector<std::size_t>& pick,
                                                                                   std::size_t from) {
            if (!pick.empty()) {
                std::set<std::string> used;
                for (auto ci : pick)
                    for (const auto& l : clauses[ci]) used.insert(l.var);
                if (used.size() == n) {
                    for (std::size_t quant = 0; quant < (std::size_t{1} << n); ++quant) {
                        QBFInstance q;
                        for (std::size_t i = 0; i < n; ++i)
                            q.prefix.emplace_back((quant >> i) & 1 ? Quantifier::Forall : Quantifier::Exists,
                                                  "x" + std::to_string(i + 1));
                        for (auto ci : pick) q.clauses.push_back(clauses[ci]);
                        fn(q);
                    }
                }
            }
            if (pick.size() == max_clauses) return;
            for (std::size_t ci = from; ci < clauses.size(); ++ci) {
                pick.push_back(ci);
                lists(pick, ci);
                pick.pop_back();
            }
        };
        std::vector<std::size_t> pick;
        lists(pick, 0);
    }
}

void for_each_pl_formula(const std::vector<Formula>& atoms, std::size_t max_length, bool tilde, bool ac_normal,
                         const std::function<void(const Formula&)>& fn) {
    // Formulas shorter than max_length, grouped by length; the longest ones
    // are streamed without being stored.
    std::vector<std::vector<Formula>> by_length;
    std::vector<Formula> pool;  // concatenation of by_length, shortest first
    for (std::size_t len = 0; len <= max_length; ++len) {
        std::vector<Formula> fresh;
        auto emit = [&](const Formula& f) {
            fn(f);
            if (len < max_length) fresh.push_back(f);
        };
        if (len == 0) {
            for (const auto& a : atoms) emit(a);
        } else {
            if (tilde)
                for (const auto& f : by_length[len - 1]) emit(teamltl::tilde(f));
            for (Kind k : {Kind::And, Kind::Split}) {
                auto make = [k](const Formula& a, const Formula& b) { return k == Kind::And ? conj(a, b) : split(a, b); };
                if (!ac_normal) {
                    for (std::size_t i = 0; i < len; ++i)
                        for (const auto& a : by_length[i])
                            for (const auto& b : by_length[len - 1 - i]) emit(make(a, b));
                    continue;
                }
                // Each operand costs its length plus one connective; the
                // multiset costs len + 1 in total.
                std::vector<std::size_t> chosen;
                std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t budget) {
                    if (budget == 0) {
                        if (chosen.size() < 2) return;
                        Formula f = pool[chosen.back()];
                        for (std::size_t i = chosen.size() - 1; i-- > 0;) f = make(pool[chosen[i]], f);
                        emit(f);
                        return;
                    }
                    for (std::size_t j = from; j < pool.size(); ++j) {
                        std::size_t cost = formula_length(pool[j]) + 1;
                        if (cost > budget) break;
                        if (pool[j]->kind == k) continue;
                        chosen.push_back(j);
                        pick(j, budget - cost);
                        chosen.pop_back();
                    }
                };
                pick(0, len + 1);
            }
        }
        pool.insert(pool.end(), fresh.begin(), fresh.end());
        by_length.push_back(std::move(fresh));
    }
}

TeamEncoding subteam(const TeamEncoding& team, std::uint64_t mask) {
    std::vector<UPTraceEncoding> ts;
    for (std::size_t i = 0; i < team.size(); ++i)
        if ((mask >> i) & 1) ts.push_back(team.traces()[i]);
    return TeamEncoding(std::move(ts));
}

}  // namespace teamltl::testing
