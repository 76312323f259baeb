#include "teamltl/classical.hpp"

#include <unordered_map>

#include "lasso_dp.hpp"
#include "lasso_search.hpp"
#include "teamltl/errors.hpp"

namespace teamltl {

// ============================================================================
// Lasso path checking
// ============================================================================

namespace {

class TraceChecker {
public:
    explicit TraceChecker(const UPTraceEncoding& e)
        : e_(e), n_(e.prefix.size() + e.loop.size()), loop_start_(e.prefix.size()) {}

    const detail::Bits& eval(const Formula& f) {
        auto it = memo_.find(f.get());
        if (it != memo_.end()) return it->second;
        detail::Bits v(n_);
        switch (f->kind) {
            case Kind::Pos:
            case Kind::Neg:
                for (std::size_t i = 0; i < n_; ++i) {
                    bool has = value_at(e_, i).count(f->name) > 0;
                    v[i] = f->kind == Kind::Pos ? has : !has;
                }
                break;
            case Kind::And: {
                const auto& a = eval(f->lhs);
                const auto& b = eval(f->rhs);
                for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] && b[i];
                break;
            }
            case Kind::Split: {
                const auto& a = eval(f->lhs);
                const auto& b = eval(f->rhs);
                for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] || b[i];
                break;
            }
            case Kind::Tilde: {
                const auto& a = eval(f->lhs);
                for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i];
                break;
            }
            case Kind::Next: v = detail::lasso_next(eval(f->lhs), loop_start_); break;
            case Kind::Eventually: v = detail::lasso_until(detail::Bits(n_, 1), eval(f->lhs), loop_start_); break;
            case Kind::Globally: v = detail::lasso_release(detail::Bits(n_, 0), eval(f->lhs), loop_start_); break;
            case Kind::Until: v = detail::lasso_until(eval(f->lhs), eval(f->rhs), loop_start_); break;
            case Kind::Release: v = detail::lasso_release(eval(f->lhs), eval(f->rhs), loop_start_); break;
            case Kind::Dep:
            case Kind::Gen:
                throw UnsupportedFragment("single-trace checking does not interpret team atoms: " + render_formula(f));
        }
        return memo_.emplace(f.get(), std::move(v)).first->second;
    }

private:
    const UPTraceEncoding& e_;
    std::size_t n_;
    std::size_t loop_start_;
    std::unordered_map<const Node*, detail::Bits> memo_;
};

}  // namespace

bool check_trace(const UPTraceEncoding& e, const Formula& f) {
    if (e.loop.empty()) throw InvalidInput("trace encoding with empty loop");
    TraceChecker c(e);
    return c.eval(f)[0];
}

// ============================================================================
// Satisfiability
// ============================================================================

std::optional<UPTraceEncoding> classical_sat(const Formula& f) {
    auto w = nba_nonempty(ltl_to_nba(f));
    if (!w) return std::nullopt;
    return w->encoding();
}

namespace {

bool holds_on_all_singletons(const GenAtomDef& def, const std::vector<std::string>& args) {
    if (args.size() > 16) throw BoundExceeded("generalised atom with more than 16 arguments");
    for (std::size_t m = 0; m < (std::size_t{1} << args.size()); ++m) {
        PropSet letter;
        for (std::size_t i = 0; i < args.size(); ++i)
            if ((m >> i) & 1) letter.insert(args[i]);
        if (!def.predicate({letter}, args)) return false;
    }
    return true;
}

Formula trivialize(const Formula& f, const Formula& valid, const GenRegistry* reg) {
    switch (f->kind) {
        case Kind::Pos:
        case Kind::Neg: return f;
        case Kind::Dep: return valid;
        case Kind::Gen: {
            if (!reg) throw UnknownAtom("generalised atom '@" + f->name + "' is not registered");
            const auto& def = reg->at(f->name);
            if (def.downward_closed && holds_on_all_singletons(def, f->args)) return valid;
            throw UnsupportedFragment("generalised atom '@" + f->name + "' is not trivial on singletons");
        }
        case Kind::Tilde: throw UnsupportedFragment("satisfiability with '~' is not supported");
        default: {
            auto copy = std::make_shared<Node>(*f);
            copy->lhs = trivialize(f->lhs, valid, reg);
            if (f->rhs) copy->rhs = trivialize(f->rhs, valid, reg);
            return copy;
        }
    }
}

}  // namespace

std::optional<UPTraceEncoding> tsat(const Formula& f, Semantics /*semantics*/, const GenRegistry* registry) {
    // Both semantics reduce to the same singleton question.
    PropSet used = propositions(f);
    std::string fresh = "fresh";
    for (int k = 0; used.count(fresh); ++k) fresh = "fresh" + std::to_string(k);
    Formula valid = split(pos(fresh), neg(fresh));
    auto w = classical_sat(trivialize(f, valid, registry));
    if (!w) return std::nullopt;
    // The fresh proposition is irrelevant to f; drop it from the witness.
    for (auto& s : w->prefix) s.erase(fresh);
    for (auto& s : w->loop) s.erase(fresh);
    return canonicalize(std::move(*w));
}

// ============================================================================
// Classical model checking
// ============================================================================

McResult classical_mc(const KripkeStructure& k, const Formula& f) {
    validate(k);
    NBA a = ltl_to_nba(dualize(f));
    const std::size_t Q = a.num_states();
    std::vector<std::uint64_t> masks(k.size());
    for (std::size_t w = 0; w < k.size(); ++w) masks[w] = a.letter_mask(k.labels[w]);

    std::vector<std::size_t> init;
    for (auto q : a.initial) init.push_back(k.initial * Q + q);
    auto succ = [&](std::size_t id) {
        std::size_t w = id / Q, q = id % Q;
        std::vector<std::size_t> out;
        for (const auto& t : a.out[q]) {
            if (!NBA::enabled(t, masks[w])) continue;
            for (auto w2 : k.succ[w]) out.push_back(w2 * Q + t.to);
        }
        return out;
    };
    auto acc = [&](std::size_t id) { return static_cast<bool>(a.accepting[id % Q]); };
    auto lasso = detail::find_accepting_lasso(init, succ, acc);
    McResult r;
    if (!lasso) return r;
    r.holds = false;
    LassoWitness w;
    for (auto id : lasso->stem) w.stem.push_back(k.labels[id / Q]);
    for (auto id : lasso->cycle) w.cycle.push_back(k.labels[id / Q]);
    r.counterexample = std::move(w);
    return r;
}

}  // namespace teamltl
