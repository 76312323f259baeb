#include <map>
#include <set>

#include "lasso_search.hpp"
#include "teamltl/classical.hpp"
#include "teamltl/errors.hpp"

namespace teamltl {

std::uint64_t NBA::letter_mask(const PropSet& letter) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < props.size(); ++i)
        if (letter.count(props[i])) m |= std::uint64_t{1} << i;
    return m;
}

// ============================================================================
// Tableau construction
// ============================================================================

namespace {

struct Expansion {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
    std::vector<int> next;
    std::uint64_t good = 0;  // bit j: eventuality j is not pending
};

class Tableau {
public:
    explicit Tableau(const Formula& f) {
        auto info = fragment_info(f);
        if (!info.pure_ltl) throw UnsupportedFragment("automaton construction needs pure LTL: " + render_formula(f));
        root_ = intern(f);
        if (props_.size() > 64) throw BoundExceeded("more than 64 propositions in one automaton");
        if (eventualities_.size() > 64) throw BoundExceeded("more than 64 eventualities in one automaton");
    }

    NBA build() {
        NBA a;
        a.props = props_;
        const int K = static_cast<int>(eventualities_.size());
        std::map<std::pair<std::vector<int>, int>, std::size_t> index;
        std::vector<std::pair<std::vector<int>, int>> states;
        auto state_id = [&](std::vector<int> obl, int c) {
            auto key = std::make_pair(std::move(obl), c);
            auto it = index.find(key);
            if (it != index.end()) return it->second;
            std::size_t id = states.size();
            index.emplace(key, id);
            states.push_back(key);
            return id;
        };
        a.initial.push_back(state_id({root_}, 0));
        for (std::size_t s = 0; s < states.size(); ++s) {
            auto [obl, c] = states[s];
            a.out.emplace_back();
            a.accepting.push_back(c == K);
            for (const auto& e : expansions(obl)) {
                int c0 = c == K ? 0 : c;
                while (c0 < K && (e.good >> c0) & 1) ++c0;
                std::size_t to = state_id(e.next, c0);
                a.out[s].push_back({to, e.pos, e.neg});
            }
        }
        return a;
    }

private:
    int intern(const Formula& f) {
        std::string key = render_formula(f);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        if (f->lhs) intern(f->lhs);
        if (f->rhs) intern(f->rhs);
        int id = static_cast<int>(forms_.size());
        forms_.push_back(f);
        ids_.emplace(key, id);
        if (f->kind == Kind::Pos || f->kind == Kind::Neg) {
            if (!prop_ids_.count(f->name)) {
                prop_ids_[f->name] = static_cast<int>(props_.size());
                props_.push_back(f->name);
            }
        }
        if (f->kind == Kind::Until || f->kind == Kind::Eventually) {
            eventualities_.push_back(id);
        }
        return id;
    }

    int id_of(const Formula& f) { return ids_.at(render_formula(f)); }

    const std::vector<Expansion>& expansions(const std::vector<int>& obligations) {
        auto it = cache_.find(obligations);
        if (it != cache_.end()) return it->second;
        std::vector<Expansion> out;
        expand(obligations, {}, {}, 0, 0, out);
        return cache_.emplace(obligations, std::move(out)).first->second;
    }

    void expand(std::vector<int> todo, std::set<int> old, std::set<int> next, std::uint64_t pos, std::uint64_t neg,
                std::vector<Expansion>& out) {
        while (!todo.empty()) {
            int id = todo.back();
            todo.pop_back();
            if (!old.insert(id).second) continue;
            const Formula& f = forms_[static_cast<std::size_t>(id)];
            switch (f->kind) {
                case Kind::Pos:
                case Kind::Neg: {
                    std::uint64_t bit = std::uint64_t{1} << prop_ids_.at(f->name);
                    (f->kind == Kind::Pos ? pos : neg) |= bit;
                    if (pos & neg) return;
                    break;
                }
                case Kind::And:
                    todo.push_back(id_of(f->lhs));
                    todo.push_back(id_of(f->rhs));
                    break;
                case Kind::Next: next.insert(id_of(f->lhs)); break;
                case Kind::Globally:
                    todo.push_back(id_of(f->lhs));
                    next.insert(id);
                    break;
                case Kind::Split: {
                    auto t2 = todo;
                    t2.push_back(id_of(f->rhs));
                    expand(std::move(t2), old, next, pos, neg, out);
                    todo.push_back(id_of(f->lhs));
                    break;
                }
                case Kind::Eventually: {
                    auto n2 = next;
                    n2.insert(id);
                    expand(todo, old, std::move(n2), pos, neg, out);
                    todo.push_back(id_of(f->lhs));
                    break;
                }
                case Kind::Until: {
                    auto t2 = todo;
                    t2.push_back(id_of(f->lhs));
                    auto n2 = next;
                    n2.insert(id);
                    expand(std::move(t2), old, std::move(n2), pos, neg, out);
                    todo.push_back(id_of(f->rhs));
                    break;
                }
                case Kind::Release: {
                    auto t2 = todo;
                    t2.push_back(id_of(f->rhs));
                    auto n2 = next;
                    n2.insert(id);
                    expand(std::move(t2), old, std::move(n2), pos, neg, out);
                    todo.push_back(id_of(f->lhs));
                    todo.push_back(id_of(f->rhs));
                    break;
                }
                default: throw UnsupportedFragment("automaton construction needs pure LTL");
            }
        }
        Expansion e;
        e.pos = pos;
        e.neg = neg;
        e.next.assign(next.begin(), next.end());
        for (std::size_t j = 0; j < eventualities_.size(); ++j) {
            int u = eventualities_[j];
            const Formula& f = forms_[static_cast<std::size_t>(u)];
            int goal = f->kind == Kind::Until ? id_of(f->rhs) : id_of(f->lhs);
            if (!old.count(u) || old.count(goal)) e.good |= std::uint64_t{1} << j;
        }
        out.push_back(std::move(e));
    }

    std::vector<Formula> forms_;
    std::map<std::string, int> ids_;
    std::vector<std::string> props_;
    std::map<std::string, int> prop_ids_;
    std::vector<int> eventualities_;
    std::map<std::vector<int>, std::vector<Expansion>> cache_;
    int root_ = 0;
};

PropSet letter_of(const NBA& a, const NBATransition& t) {
    PropSet out;
    for (std::size_t i = 0; i < a.props.size(); ++i)
        if ((t.pos >> i) & 1) out.insert(a.props[i]);
    return out;
}

}  // namespace

NBA ltl_to_nba(const Formula& f) { return Tableau(f).build(); }

// ============================================================================
// Runs and emptiness
// ============================================================================

bool nba_accepts(const NBA& a, const UPTraceEncoding& word) {
    const std::size_t n = word.prefix.size() + word.loop.size();
    const std::size_t loop_start = word.prefix.size();
    std::vector<std::uint64_t> masks(n);
    for (std::size_t i = 0; i < n; ++i) masks[i] = a.letter_mask(value_at(word, i));
    std::vector<std::size_t> init;
    for (auto q : a.initial) init.push_back(q * n);
    auto succ = [&](std::size_t id) {
        std::size_t q = id / n, i = id % n;
        std::size_t j = i + 1 < n ? i + 1 : loop_start;
        std::vector<std::size_t> out;
        for (const auto& t : a.out[q])
            if (NBA::enabled(t, masks[i])) out.push_back(t.to * n + j);
        return out;
    };
    auto acc = [&](std::size_t id) { return static_cast<bool>(a.accepting[id / n]); };
    return detail::find_accepting_lasso(init, succ, acc).has_value();
}

std::optional<LassoWitness> nba_nonempty(const NBA& a) {
    auto succ = [&](std::size_t q) {
        std::vector<std::size_t> out;
        for (const auto& t : a.out[q]) out.push_back(t.to);
        return out;
    };
    auto acc = [&](std::size_t q) { return static_cast<bool>(a.accepting[q]); };
    auto lasso = detail::find_accepting_lasso(a.initial, succ, acc);
    if (!lasso) return std::nullopt;

    auto label = [&](std::size_t from, std::size_t to) {
        for (const auto& t : a.out[from])
            if (t.to == to) return letter_of(a, t);
        throw Error("internal: missing automaton transition");
    };
    std::vector<std::size_t> path = lasso->stem;
    path.insert(path.end(), lasso->cycle.begin(), lasso->cycle.end());
    path.push_back(lasso->cycle.front());
    LassoWitness w;
    const std::size_t stem_len = lasso->stem.size();
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        PropSet letter = label(path[k], path[k + 1]);
        (k < stem_len ? w.stem : w.cycle).push_back(std::move(letter));
    }
    return w;
}

}  // namespace teamltl
