#include "teamltl/teamcheck.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "teamltl/classical.hpp"
#include "teamltl/errors.hpp"
#include "teamset.hpp"

namespace teamltl {

// ============================================================================
// Generalised atom registry
// ============================================================================

GenRegistry& GenRegistry::add(GenAtomDef def) {
    if (!is_identifier(def.name)) throw InvalidInput("invalid generalised atom name '" + def.name + "'");
    if (!def.predicate) throw InvalidInput("generalised atom '" + def.name + "' has no predicate");
    if (defs_.count(def.name)) throw DuplicateName("generalised atom '" + def.name + "' is already registered");
    std::string name = def.name;
    defs_.emplace(std::move(name), std::move(def));
    return *this;
}

const GenAtomDef* GenRegistry::find(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second;
}

const GenAtomDef& GenRegistry::at(const std::string& name) const {
    if (auto* d = find(name)) return *d;
    throw UnknownAtom("generalised atom '@" + name + "' is not registered");
}

GenRegistry register_gen_atom(GenRegistry reg, GenAtomDef def) {
    reg.add(std::move(def));
    return reg;
}

// ============================================================================
// Atoms
// ============================================================================

bool eval_dep_atom(const std::vector<PropSet>& first_letters, const std::vector<std::string>& determinants,
                   const std::vector<std::string>& determined) {
    std::map<std::vector<bool>, std::vector<bool>> seen;
    for (const auto& letter : first_letters) {
        std::vector<bool> key, val;
        for (const auto& p : determinants) key.push_back(letter.count(p) > 0);
        for (const auto& q : determined) val.push_back(letter.count(q) > 0);
        auto [it, fresh] = seen.emplace(std::move(key), val);
        if (!fresh && it->second != val) return false;
    }
    return true;
}

SplitMode default_split_mode(const Formula& f, const GenRegistry* registry) {
    return fragment_info(f, registry).downward_closed_syntactic ? SplitMode::DisjointOnly : SplitMode::AllCovers;
}

// ============================================================================
// Evaluator
// ============================================================================

namespace {

using detail::TeamSet;

// Every distinct suffix of every member, closed under the one-step shift.
class Universe {
public:
    explicit Universe(const TeamEncoding& team) {
        for (const auto& t : team) roots_.push_back(intern(t));
        for (std::size_t id = 0; id < enc_.size(); ++id) {
            UPTraceEncoding s = suffix_encoding(enc_[id], 1);
            std::size_t nid = intern(s);
            next_[id] = nid;
        }
        rep_.resize(enc_.size());
        for (std::size_t id = 0; id < enc_.size(); ++id) {
            rep_[id] = id;
            if (pre(id) != 0) continue;
            for (std::size_t j = 0, cur = id; j < loop(id); ++j, cur = next_[cur]) rep_[id] = std::min(rep_[id], cur);
        }
    }

    std::size_t size() const { return enc_.size(); }
    std::size_t next(std::size_t id) const { return next_[id]; }
    const UPTraceEncoding& enc(std::size_t id) const { return enc_[id]; }
    const PropSet& first(std::size_t id) const { return enc_[id].prefix.empty() ? enc_[id].loop[0] : enc_[id].prefix[0]; }
    std::size_t pre(std::size_t id) const { return enc_[id].prefix.size(); }
    std::size_t loop(std::size_t id) const { return enc_[id].loop.size(); }
    // Smallest id among the rotations of a purely periodic suffix, else id.
    std::size_t rotation_rep(std::size_t id) const { return rep_[id]; }

    TeamSet root_team() const {
        TeamSet t(size());
        for (auto r : roots_) t.set(r);
        return t;
    }
    TeamSet empty_team() const { return TeamSet(size()); }
    TeamSet single(std::size_t id) const {
        TeamSet t(size());
        t.set(id);
        return t;
    }
    TeamSet shift1(const TeamSet& t) const {
        TeamSet out(size());
        t.for_each([&](std::size_t id) { out.set(next_[id]); });
        return out;
    }

    const TeamSet& holding(const std::string& p) {
        auto it = holding_.find(p);
        if (it != holding_.end()) return it->second;
        TeamSet t(size());
        for (std::size_t id = 0; id < size(); ++id)
            if (first(id).count(p)) t.set(id);
        return holding_.emplace(p, std::move(t)).first->second;
    }

private:
    std::size_t intern(const UPTraceEncoding& e) {
        auto it = index_.find(e);
        if (it != index_.end()) return it->second;
        std::size_t id = enc_.size();
        index_.emplace(e, id);
        enc_.push_back(e);
        next_.push_back(0);
        return id;
    }

    std::vector<UPTraceEncoding> enc_;
    std::vector<std::size_t> next_;
    std::map<UPTraceEncoding, std::size_t> index_;
    std::vector<std::size_t> roots_;
    std::vector<std::size_t> rep_;
    std::unordered_map<std::string, TeamSet> holding_;
};

struct Key {
    const Node* f;
    TeamSet t;
    bool operator==(const Key& o) const { return f == o.f && t == o.t; }
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        return std::hash<const void*>{}(k.f) ^ (k.t.hash() * 0x100000001b3ULL);
    }
};

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ULL;
        return h;
    }
};

class Evaluator {
public:
    Evaluator(const TeamEncoding& team, const Formula& f, Semantics sem, const CheckOptions& opts)
        : u_(team), sem_(sem), opts_(opts), root_(f) {
        FragmentInfo info = fragment_info(f, opts.registry);
        downward_closed_ = info.downward_closed_syntactic;
        mode_ = opts.split_mode.value_or(downward_closed_ ? SplitMode::DisjointOnly : SplitMode::AllCovers);
        check_arity(f);
    }

    bool run() { return sat(root_.get(), u_.root_team()); }

private:
    void check_arity(const Formula& f) {
        if (f->kind == Kind::Gen) {
            const auto& def = opts_.registry->at(f->name);
            if (def.arity && *def.arity != f->args.size())
                throw InvalidInput("generalised atom '@" + f->name + "' expects " + std::to_string(*def.arity) +
                                   " arguments");
        }
        if (f->lhs) check_arity(f->lhs);
        if (f->rhs) check_arity(f->rhs);
    }

    bool sat(const Node* f, const TeamSet& t) {
        Key key{f, sem_ == Semantics::Async && (f->kind == Kind::Eventually || f->kind == Kind::Globally)
                       ? rotation_canonical(t)
                       : t};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = compute(f, key.t);
        memo_.emplace(std::move(key), r);
        return r;
    }

    // Async F and G see every rotation of a purely periodic member, so such a
    // member can be replaced by a fixed rotation as long as no two collapse.
    TeamSet rotation_canonical(const TeamSet& t) const {
        TeamSet out = u_.empty_team();
        bool collision = false;
        t.for_each([&](std::size_t id) {
            std::size_t r = u_.rotation_rep(id);
            if (out.test(r)) collision = true;
            out.set(r);
        });
        return collision ? t : out;
    }

    std::vector<PropSet> first_letters(const TeamSet& t) const {
        std::vector<PropSet> out;
        t.for_each([&](std::size_t id) { out.push_back(u_.first(id)); });
        return out;
    }

    bool compute(const Node* f, const TeamSet& t) {
        switch (f->kind) {
            case Kind::Pos: return t.subset_of(u_.holding(f->name));
            case Kind::Neg: return t.disjoint(u_.holding(f->name));
            case Kind::Dep: return eval_dep_atom(first_letters(t), f->args, f->args2);
            case Kind::Gen: return opts_.registry->at(f->name).predicate(first_letters(t), f->args);
            case Kind::And: return sat(f->lhs.get(), t) && sat(f->rhs.get(), t);
            case Kind::Tilde: return !sat(f->lhs.get(), t);
            case Kind::Split: return eval_split(f, t);
            case Kind::Next: return sat(f->lhs.get(), u_.shift1(t));
            default: break;
        }
        return sem_ == Semantics::Sync ? temporal_sync(f, t) : temporal_async(f, t);
    }

    // ------------------------------------------------------------------------
    // Synchronous temporal operators over 0..prfx+lcm
    // ------------------------------------------------------------------------

    std::uint64_t horizon(const TeamSet& t) const {
        std::size_t p = 0;
        std::uint64_t l = 1;
        t.for_each([&](std::size_t id) {
            p = std::max(p, u_.pre(id));
            std::uint64_t n = u_.loop(id);
            std::uint64_t step = n / std::gcd(l, n);
            if (l > opts_.max_lcm / step) throw BoundExceeded("lcm of loop lengths exceeds " + std::to_string(opts_.max_lcm));
            l *= step;
        });
        return p + l;
    }

    bool temporal_sync(const Node* f, const TeamSet& t) {
        const std::uint64_t n = horizon(t);
        TeamSet cur = t;
        switch (f->kind) {
            case Kind::Eventually:
                for (std::uint64_t k = 0; k <= n; ++k, cur = u_.shift1(cur))
                    if (sat(f->lhs.get(), cur)) return true;
                return false;
            case Kind::Globally:
                for (std::uint64_t k = 0; k <= n; ++k, cur = u_.shift1(cur))
                    if (!sat(f->lhs.get(), cur)) return false;
                return true;
            case Kind::Until:
                for (std::uint64_t k = 0; k <= n; ++k, cur = u_.shift1(cur)) {
                    if (sat(f->rhs.get(), cur)) return true;
                    if (!sat(f->lhs.get(), cur)) return false;
                }
                return false;
            case Kind::Release:
                for (std::uint64_t k = 0; k <= n; ++k, cur = u_.shift1(cur)) {
                    if (!sat(f->rhs.get(), cur)) return false;
                    if (sat(f->lhs.get(), cur)) return true;
                }
                return true;
            default: throw Error("internal: not a temporal operator");
        }
    }

    // ------------------------------------------------------------------------
    // Asynchronous temporal operators over per-trace shift vectors
    // ------------------------------------------------------------------------

    struct Shifts {
        std::vector<std::size_t> members;
        std::vector<std::vector<std::size_t>> ids;  // ids[m][j]: member m shifted j steps, j in 0..pre+loop
        std::vector<int> classes;                   // pre+loop: number of distinct suffixes
    };

    Shifts shifts_of(const TeamSet& t) const {
        Shifts s;
        s.members = t.members();
        for (auto m : s.members) {
            const int n = static_cast<int>(u_.pre(m) + u_.loop(m));
            std::vector<std::size_t> row{m};
            for (int j = 0; j < n; ++j) row.push_back(u_.next(row.back()));
            s.ids.push_back(std::move(row));
            s.classes.push_back(n);
        }
        return s;
    }

    void check_grid(const Shifts& s, int extra) const {
        long double g = 1;
        for (int c : s.classes) g *= static_cast<long double>(c + extra);
        if (g > static_cast<long double>(opts_.max_grid))
            throw VectorSpaceExceeded("shift-vector grid exceeds " + std::to_string(opts_.max_grid) + " points");
    }

    TeamSet team_at(const Shifts& s, const std::vector<int>& k) const {
        TeamSet out = u_.empty_team();
        for (std::size_t m = 0; m < s.members.size(); ++m)
            if (k[m] >= 0) out.set(s.ids[m][static_cast<std::size_t>(k[m])]);
        return out;
    }

    // Whether `g` holds on the shifted team for every vector below `upper`
    // (componentwise, inclusive; -1 drops the member) when want_all, or for
    // some such vector otherwise.
    bool box(const Node* g, const Shifts& s, const std::vector<int>& upper, bool want_all,
             std::unordered_map<std::vector<int>, bool, VecHash>& memo) {
        auto it = memo.find(upper);
        if (it != memo.end()) return it->second;
        bool r = sat(g, team_at(s, upper));
        if (r == want_all) {
            for (std::size_t m = 0; m < upper.size() && r == want_all; ++m) {
                if (upper[m] <= 0) continue;
                auto lower = upper;
                --lower[m];
                r = box(g, s, lower, want_all, memo);
            }
        }
        memo.emplace(upper, r);
        return r;
    }

    // Odometer over vectors with entries in [0, limit[m]].
    static bool advance(std::vector<int>& k, const std::vector<int>& limit) {
        for (std::size_t m = 0; m < k.size(); ++m) {
            if (k[m] < limit[m]) {
                ++k[m];
                return true;
            }
            k[m] = 0;
        }
        return false;
    }

    bool temporal_async(const Node* f, const TeamSet& t) {
        Shifts s = shifts_of(t);
        const std::size_t n = s.members.size();
        std::vector<int> top(n);
        for (std::size_t m = 0; m < n; ++m) top[m] = s.classes[m] - 1;

        switch (f->kind) {
            case Kind::Eventually:
            case Kind::Globally: {
                check_grid(s, 0);
                std::unordered_map<std::vector<int>, bool, VecHash> memo;
                bool all = f->kind == Kind::Globally;
                return box(f->lhs.get(), s, top, all, memo);
            }
            case Kind::Until: {
                // Exists k: rhs at k, and lhs on every vector strictly below k
                // over the traces with k_t > 0.
                check_grid(s, 1);
                std::unordered_map<std::vector<int>, bool, VecHash> memo;
                std::vector<int> k(n, 0), limit(s.classes.begin(), s.classes.end());
                do {
                    if (!sat(f->rhs.get(), team_at(s, k))) continue;
                    std::vector<int> upper(n);
                    bool any_active = false;
                    for (std::size_t m = 0; m < n; ++m) {
                        upper[m] = k[m] - 1;
                        any_active = any_active || k[m] > 0;
                    }
                    if (!any_active || box(f->lhs.get(), s, upper, true, memo)) return true;
                } while (advance(k, limit));
                return false;
            }
            case Kind::Release: {
                // Exists release points r (entry classes[m] meaning never):
                // lhs on the released traces at r, rhs on every vector <= r.
                check_grid(s, 1);
                std::unordered_map<std::vector<int>, bool, VecHash> memo;
                std::vector<int> r(n, 0), limit(s.classes.begin(), s.classes.end());
                do {
                    std::vector<int> at(n), upper(n);
                    bool any_released = false;
                    for (std::size_t m = 0; m < n; ++m) {
                        bool never = r[m] == s.classes[m];
                        at[m] = never ? -1 : r[m];
                        upper[m] = never ? top[m] : r[m];
                        any_released = any_released || !never;
                    }
                    if (any_released && !sat(f->lhs.get(), team_at(s, at))) continue;
                    if (box(f->rhs.get(), s, upper, true, memo)) return true;
                } while (advance(r, limit));
                return false;
            }
            default: throw Error("internal: not a temporal operator");
        }
    }

    // ------------------------------------------------------------------------
    // Splitjunction
    // ------------------------------------------------------------------------

    bool eval_split(const Node* f, const TeamSet& t) {
        if (mode_ == SplitMode::AllCovers) return split_all_covers(f, t);
        if (downward_closed_) return split_partition(f, t);
        return split_disjoint_enum(f, t);
    }

    std::vector<TeamSet> member_singletons(const TeamSet& t) const {
        std::vector<TeamSet> out;
        t.for_each([&](std::size_t id) { out.push_back(u_.single(id)); });
        return out;
    }

    TeamSet from_mask(const std::vector<TeamSet>& singles, std::uint64_t mask) const {
        TeamSet out = u_.empty_team();
        for (std::size_t i = 0; i < singles.size(); ++i)
            if ((mask >> i) & 1) out |= singles[i];
        return out;
    }

    bool split_all_covers(const Node* f, const TeamSet& t) {
        auto singles = member_singletons(t);
        if (singles.size() > opts_.max_team)
            throw BoundExceeded("team of " + std::to_string(singles.size()) + " traces exceeds the split cap of " +
                                std::to_string(opts_.max_team));
        const std::uint64_t full = (std::uint64_t{1} << singles.size()) - 1;
        // T1 ranges over subsets; T2 = (T \ T1) plus any subset of T1.
        for (std::uint64_t a = full;; a = (a - 1) & full) {
            if (sat(f->lhs.get(), from_mask(singles, a))) {
                const std::uint64_t rest = full & ~a;
                for (std::uint64_t x = a;; x = (x - 1) & a) {
                    if (sat(f->rhs.get(), from_mask(singles, rest | x))) return true;
                    if (x == 0) break;
                }
            }
            if (a == 0) break;
        }
        return false;
    }

    bool split_disjoint_enum(const Node* f, const TeamSet& t) {
        auto singles = member_singletons(t);
        if (singles.size() > 24)
            throw BoundExceeded("team of " + std::to_string(singles.size()) + " traces is too large for split enumeration");
        const std::uint64_t full = (std::uint64_t{1} << singles.size()) - 1;
        for (std::uint64_t a = full;; a = (a - 1) & full) {
            if (sat(f->lhs.get(), from_mask(singles, a)) && sat(f->rhs.get(), from_mask(singles, full & ~a)))
                return true;
            if (a == 0) break;
        }
        return false;
    }

    static void flatten_split(const Node* f, std::vector<const Node*>& out) {
        if (f->kind == Kind::Split) {
            flatten_split(f->lhs.get(), out);
            flatten_split(f->rhs.get(), out);
        } else {
            out.push_back(f);
        }
    }

    // Downward-closed case: assign every member to one disjunct. A partial
    // part that already fails its disjunct can never recover.
    bool split_partition(const Node* f, const TeamSet& t) {
        std::vector<const Node*> parts;
        flatten_split(f, parts);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (!sat(parts[i], t)) continue;
            bool rest_empty_ok = true;
            for (std::size_t j = 0; j < parts.size() && rest_empty_ok; ++j)
                if (j != i) rest_empty_ok = sat(parts[j], u_.empty_team());
            if (rest_empty_ok) return true;
        }
        std::vector<TeamSet> assigned(parts.size(), u_.empty_team());
        return assign(parts, assigned, t.members());
    }

    bool assign(const std::vector<const Node*>& parts, std::vector<TeamSet> assigned, std::vector<std::size_t> open) {
        const std::size_t r = parts.size();
        std::vector<std::vector<std::size_t>> options;
        while (true) {
            options.assign(open.size(), {});
            std::vector<std::vector<std::size_t>> forced(r);
            bool any_forced = false;
            for (std::size_t k = 0; k < open.size(); ++k) {
                for (std::size_t i = 0; i < r; ++i) {
                    TeamSet grown = assigned[i];
                    grown.set(open[k]);
                    if (sat(parts[i], grown)) options[k].push_back(i);
                }
                if (options[k].empty()) return false;
                if (options[k].size() == 1) {
                    forced[options[k][0]].push_back(open[k]);
                    any_forced = true;
                }
            }
            if (!any_forced) break;
            std::vector<std::size_t> still_open;
            for (std::size_t k = 0; k < open.size(); ++k)
                if (options[k].size() > 1) still_open.push_back(open[k]);
            for (std::size_t i = 0; i < r; ++i) {
                if (forced[i].empty()) continue;
                for (auto id : forced[i]) assigned[i].set(id);
                if (!sat(parts[i], assigned[i])) return false;
            }
            open = std::move(still_open);
        }
        if (open.empty()) {
            for (std::size_t i = 0; i < r; ++i)
                if (!sat(parts[i], assigned[i])) return false;
            return true;
        }
        std::size_t pick = 0;
        for (std::size_t k = 1; k < open.size(); ++k)
            if (options[k].size() < options[pick].size()) pick = k;
        std::size_t id = open[pick];
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < open.size(); ++k)
            if (k != pick) rest.push_back(open[k]);
        for (auto i : options[pick]) {
            auto next = assigned;
            next[i].set(id);
            if (assign(parts, std::move(next), rest)) return true;
        }
        return false;
    }

    Universe u_;
    Semantics sem_;
    const CheckOptions& opts_;
    Formula root_;
    bool downward_closed_ = true;
    SplitMode mode_ = SplitMode::DisjointOnly;
    std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace

bool check_sync(const TeamEncoding& team, const Formula& f, const CheckOptions& opts) {
    lcm(team, opts.max_lcm);
    return Evaluator(team, f, Semantics::Sync, opts).run();
}

bool check_async_general(const TeamEncoding& team, const Formula& f, const CheckOptions& opts) {
    return Evaluator(team, f, Semantics::Async, opts).run();
}

bool check_async(const TeamEncoding& team, const Formula& f, const CheckOptions& opts) {
    if (fragment_info(f, opts.registry).pure_ltl) {
        for (const auto& t : team)
            if (!check_trace(t, f)) return false;
        return true;
    }
    return check_async_general(team, f, opts);
}

bool check_team(const TeamEncoding& team, const Formula& f, Semantics semantics, const CheckOptions& opts) {
    return semantics == Semantics::Sync ? check_sync(team, f, opts) : check_async(team, f, opts);
}

}  // namespace teamltl
