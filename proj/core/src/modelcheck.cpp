#include "teamltl/modelcheck.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "lasso_search.hpp"
#include "teamltl/errors.hpp"

namespace teamltl {

// ============================================================================
// Kripke structures
// ============================================================================

std::size_t KripkeStructure::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (worlds[i] == name) return i;
    throw MalformedStructure("unknown world '" + name + "'");
}

void validate(const KripkeStructure& k) {
    if (k.worlds.empty()) throw MalformedStructure("structure has no worlds");
    if (k.labels.size() != k.worlds.size() || k.succ.size() != k.worlds.size())
        throw MalformedStructure("labels or successors do not match the world list");
    if (k.initial >= k.worlds.size()) throw MalformedStructure("initial world out of range");
    for (std::size_t w = 0; w < k.size(); ++w) {
        if (k.succ[w].empty()) throw MalformedStructure("world '" + k.worlds[w] + "' has no successor");
        for (auto v : k.succ[w])
            if (v >= k.size()) throw MalformedStructure("edge target out of range");
    }
}

namespace {

std::vector<std::string> words(std::string_view line, std::size_t line_no) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
        } else if (c == '{' || c == '}') {
            out.emplace_back(1, c);
            ++i;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
            out.emplace_back(line.substr(i, j - i));
            i = j;
        } else {
            throw SyntaxError(std::string("unexpected '") + c + "'", line_no, i + 1);
        }
    }
    return out;
}

}  // namespace

KripkeStructure parse_kripke(std::string_view text) {
    KripkeStructure k;
    std::map<std::string, std::size_t> index;
    std::vector<std::pair<std::string, std::string>> edges;
    std::optional<std::string> init;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        auto w = words(line, line_no);
        if (w.empty()) continue;
        auto bad = [&](const std::string& msg) { throw SyntaxError(msg, line_no, 1); };
        if (w[0] == "world") {
            if (w.size() < 4 || w[2] != "{" || w.back() != "}") bad("expected 'world NAME { props }'");
            if (!is_identifier(w[1])) bad("invalid world name");
            if (index.count(w[1])) bad("duplicate world '" + w[1] + "'");
            PropSet label;
            for (std::size_t i = 3; i + 1 < w.size(); ++i) {
                if (!is_identifier(w[i])) bad("invalid proposition '" + w[i] + "'");
                label.insert(w[i]);
            }
            index[w[1]] = k.worlds.size();
            k.worlds.push_back(w[1]);
            k.labels.push_back(std::move(label));
        } else if (w[0] == "edge") {
            if (w.size() != 3) bad("expected 'edge FROM TO'");
            edges.emplace_back(w[1], w[2]);
        } else if (w[0] == "init") {
            if (w.size() != 2) bad("expected 'init NAME'");
            if (init) bad("duplicate init line");
            init = w[1];
        } else {
            bad("unknown directive '" + w[0] + "'");
        }
    }
    k.succ.assign(k.worlds.size(), {});
    for (const auto& [a, b] : edges) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end()) throw MalformedStructure("edge from unknown world '" + a + "'");
        if (ib == index.end()) throw MalformedStructure("edge to unknown world '" + b + "'");
        k.succ[ia->second].push_back(ib->second);
    }
    for (auto& s : k.succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    if (!init) throw MalformedStructure("missing init line");
    auto ii = index.find(*init);
    if (ii == index.end()) throw MalformedStructure("unknown initial world '" + *init + "'");
    k.initial = ii->second;
    validate(k);
    return k;
}

std::string serialize_kripke(const KripkeStructure& k) {
    std::string out;
    for (std::size_t w = 0; w < k.size(); ++w) {
        out += "world " + k.worlds[w] + " {";
        for (const auto& p : k.labels[w]) out += " " + p;
        out += " }\n";
    }
    for (std::size_t w = 0; w < k.size(); ++w)
        for (auto v : k.succ[w]) out += "edge " + k.worlds[w] + " " + k.worlds[v] + "\n";
    out += "init " + k.worlds[k.initial] + "\n";
    return out;
}

// ============================================================================
// Subset sequence and team trace
// ============================================================================

SubsetSequence subset_sequence(const KripkeStructure& k, std::size_t max_worlds) {
    validate(k);
    if (k.size() > max_worlds)
        throw BoundExceeded("structure has " + std::to_string(k.size()) + " worlds; materialization cap is " +
                            std::to_string(max_worlds));
    std::map<std::vector<std::size_t>, std::size_t> seen;
    SubsetSequence seq;
    std::vector<std::size_t> cur{k.initial};
    while (!seen.count(cur)) {
        seen[cur] = seq.sets.size();
        seq.sets.push_back(cur);
        std::set<std::size_t> nxt;
        for (auto w : cur) nxt.insert(k.succ[w].begin(), k.succ[w].end());
        cur.assign(nxt.begin(), nxt.end());
    }
    seq.characteristic.s = seen[cur];
    seq.characteristic.p = seq.sets.size() - seq.characteristic.s;
    return seq;
}

namespace {

PropSet label_props(const KripkeStructure& k) {
    PropSet ap;
    for (const auto& l : k.labels) ap.insert(l.begin(), l.end());
    return ap;
}

PropSet default_barred(const PropSet& ap) {
    PropSet out;
    for (const auto& p : ap)
        if (!ap.count(bar_name(p))) out.insert(p);
    return out;
}

PropSet subset_letter(const KripkeStructure& k, const std::vector<std::size_t>& worlds, const PropSet& ap,
                      const PropSet& barred) {
    PropSet letter;
    for (const auto& p : ap) {
        bool all = true, none = true;
        for (auto w : worlds) {
            bool has = k.labels[w].count(p) > 0;
            all = all && has;
            none = none && !has;
        }
        if (all) letter.insert(p);
        if (none && barred.count(p)) letter.insert(bar_name(p));
    }
    return letter;
}

// Fragment checks shared by both synchronous engines; returns f with !p -> p_bar.
Formula prepare_splitfree(const KripkeStructure& k, const Formula& f, PropSet& ap, PropSet& barred) {
    validate(k);
    FragmentInfo info = fragment_info(f);
    if (!info.splitjunction_free)
        throw UnsupportedOpenProblem(
            "synchronous team model checking with splitjunctions is an open problem; no algorithm is known");
    if (info.has_dep || info.has_gen_atom)
        throw UnsupportedFragment("synchronous team model checking supports no dep or generalised atoms");
    ap = label_props(k);
    PropSet fp = propositions(f);
    ap.insert(fp.begin(), fp.end());
    Formula g = bar_transform(f);
    barred.clear();
    std::function<void(const Formula&)> walk = [&](const Formula& h) {
        if (h->kind == Kind::Neg) barred.insert(h->name);
        if (h->lhs) walk(h->lhs);
        if (h->rhs) walk(h->rhs);
    };
    walk(f);
    for (const auto& p : barred)
        if (ap.count(bar_name(p)))
            throw NameCollision("proposition '" + bar_name(p) + "' is already used by the structure");
    return g;
}

}  // namespace

UPTraceEncoding team_trace(const KripkeStructure& k, std::optional<PropSet> barred, std::size_t max_worlds) {
    SubsetSequence seq = subset_sequence(k, max_worlds);
    PropSet ap = label_props(k);
    PropSet bars = barred ? *barred : default_barred(ap);
    ap.insert(bars.begin(), bars.end());
    UPTraceEncoding e;
    for (std::size_t i = 0; i < seq.sets.size(); ++i) {
        PropSet letter = subset_letter(k, seq.sets[i], ap, bars);
        (i < seq.characteristic.s ? e.prefix : e.loop).push_back(std::move(letter));
    }
    return canonicalize(std::move(e));
}

// ============================================================================
// Synchronous model checking without splitjunctions
// ============================================================================

bool tmc_sync_splitfree(const KripkeStructure& k, const Formula& f, std::size_t max_worlds) {
    PropSet ap, barred;
    Formula g = prepare_splitfree(k, f, ap, barred);
    SubsetSequence seq = subset_sequence(k, max_worlds);
    UPTraceEncoding e;
    for (std::size_t i = 0; i < seq.sets.size(); ++i) {
        PropSet letter = subset_letter(k, seq.sets[i], ap, barred);
        (i < seq.characteristic.s ? e.prefix : e.loop).push_back(std::move(letter));
    }
    return check_trace(canonicalize(std::move(e)), g);
}

bool tmc_sync_splitfree_onthefly(const KripkeStructure& k, const Formula& f) {
    if (fragment_info(f).has_contradictory_neg)
        throw UnsupportedFragment("the on-the-fly engine handles '~'-free formulas only");
    PropSet ap, barred;
    Formula g = prepare_splitfree(k, f, ap, barred);
    NBA a = ltl_to_nba(g);
    const std::size_t Q = a.num_states();

    std::map<std::vector<std::size_t>, std::size_t> subset_ids;
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::uint64_t> masks;
    std::vector<std::size_t> subset_next;
    auto subset_id = [&](std::vector<std::size_t> s) {
        auto it = subset_ids.find(s);
        if (it != subset_ids.end()) return it->second;
        std::size_t id = subsets.size();
        subset_ids.emplace(s, id);
        masks.push_back(a.letter_mask(subset_letter(k, s, ap, barred)));
        subsets.push_back(std::move(s));
        subset_next.push_back(SIZE_MAX);
        return id;
    };
    auto successor = [&](std::size_t sid) {
        if (subset_next[sid] != SIZE_MAX) return subset_next[sid];
        std::set<std::size_t> nxt;
        for (auto w : subsets[sid]) nxt.insert(k.succ[w].begin(), k.succ[w].end());
        std::size_t n = subset_id(std::vector<std::size_t>(nxt.begin(), nxt.end()));
        subset_next[sid] = n;
        return n;
    };

    std::size_t s0 = subset_id({k.initial});
    std::vector<std::size_t> init;
    for (auto q : a.initial) init.push_back(s0 * Q + q);
    auto succ = [&](std::size_t id) {
        std::size_t sid = id / Q, q = id % Q;
        std::size_t nsid = successor(sid);
        std::vector<std::size_t> out;
        for (const auto& t : a.out[q])
            if (NBA::enabled(t, masks[sid])) out.push_back(nsid * Q + t.to);
        return out;
    };
    auto acc = [&](std::size_t id) { return static_cast<bool>(a.accepting[id % Q]); };
    return detail::find_accepting_lasso(init, succ, acc).has_value();
}

// ============================================================================
// Asynchronous model checking
// ============================================================================

McResult tmc_async(const KripkeStructure& k, const Formula& f) {
    FragmentInfo info = fragment_info(f);
    if (!info.pure_ltl)
        throw UnsupportedFragment("asynchronous team model checking supports pure LTL only");
    return classical_mc(k, f);
}

// ============================================================================
// Finite trace teams
// ============================================================================

std::optional<TeamEncoding> traces_team_finite(const KripkeStructure& k, std::size_t max_traces) {
    validate(k);
    const std::size_t n = k.size();
    // Reachable worlds.
    std::vector<char> reach(n, 0);
    std::vector<std::size_t> stack{k.initial};
    reach[k.initial] = 1;
    while (!stack.empty()) {
        auto w = stack.back();
        stack.pop_back();
        for (auto v : k.succ[w])
            if (!reach[v]) {
                reach[v] = 1;
                stack.push_back(v);
            }
    }
    // A reachable branching world must not reach itself.
    for (std::size_t w = 0; w < n; ++w) {
        if (!reach[w] || k.succ[w].size() < 2) continue;
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> st(k.succ[w].begin(), k.succ[w].end());
        while (!st.empty()) {
            auto v = st.back();
            st.pop_back();
            if (v == w) return std::nullopt;
            if (seen[v]) continue;
            seen[v] = 1;
            st.insert(st.end(), k.succ[v].begin(), k.succ[v].end());
        }
    }
    std::vector<UPTraceEncoding> traces;
    std::vector<std::size_t> path;
    std::vector<int> pos_on_path(n, -1);
    std::function<void(std::size_t)> dfs = [&](std::size_t w) {
        if (pos_on_path[w] >= 0) {
            UPTraceEncoding e;
            for (std::size_t i = 0; i < path.size(); ++i)
                (static_cast<int>(i) < pos_on_path[w] ? e.prefix : e.loop).push_back(k.labels[path[i]]);
            traces.push_back(std::move(e));
            if (traces.size() > max_traces)
                throw BoundExceeded("more than " + std::to_string(max_traces) + " traces");
            return;
        }
        pos_on_path[w] = static_cast<int>(path.size());
        path.push_back(w);
        for (auto v : k.succ[w]) dfs(v);
        path.pop_back();
        pos_on_path[w] = -1;
    };
    dfs(k.initial);
    return TeamEncoding(std::move(traces));
}

}  // namespace teamltl
