#include "teamltl/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "teamltl/errors.hpp"
#include "teamltl/teamcheck.hpp"

namespace teamltl {

// ============================================================================
// QBF text
// ============================================================================

namespace {

std::vector<std::pair<std::string, std::size_t>> tokens(std::string_view line) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.emplace_back(std::string(line.substr(i, j - i)), i + 1);
        i = j;
    }
    return out;
}

}  // namespace

void validate(const QBFInstance& q) {
    std::set<std::string> quantified;
    for (const auto& [_, v] : q.prefix)
        if (!quantified.insert(v).second) throw InvalidInput("variable '" + v + "' quantified twice");
    std::set<std::string> used;
    for (const auto& c : q.clauses)
        for (const auto& l : c) {
            if (!quantified.count(l.var)) throw InvalidInput("variable '" + l.var + "' is not quantified");
            used.insert(l.var);
        }
    for (const auto& v : quantified)
        if (!used.count(v)) throw InvalidInput("quantified variable '" + v + "' does not occur in any clause");
}

QBFInstance parse_qbf(std::string_view text) {
    QBFInstance q;
    bool have_prefix = false;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        auto t = tokens(line);
        if (t.empty()) continue;
        if (t[0].first == "prefix:") {
            if (have_prefix) throw SyntaxError("duplicate prefix line", line_no, t[0].second);
            have_prefix = true;
            if (t.size() < 3 || t.size() % 2 == 0)
                throw SyntaxError("expected 'prefix: (E|A NAME)+'", line_no, t[0].second);
            for (std::size_t i = 1; i < t.size(); i += 2) {
                const auto& [qt, col] = t[i];
                if (qt != "E" && qt != "A") throw SyntaxError("expected E or A", line_no, col);
                if (!is_identifier(t[i + 1].first))
                    throw SyntaxError("invalid variable name", line_no, t[i + 1].second);
                q.prefix.emplace_back(qt == "E" ? Quantifier::Exists : Quantifier::Forall, t[i + 1].first);
            }
        } else if (t[0].first == "clause:") {
            if (!have_prefix) throw SyntaxError("clause before prefix line", line_no, t[0].second);
            if (t.size() != 4) throw SyntaxError("a clause has exactly three literals", line_no, t[0].second);
            std::array<QBFLiteral, 3> c;
            for (std::size_t k = 0; k < 3; ++k) {
                std::string lit = t[k + 1].first;
                bool positive = true;
                if (!lit.empty() && lit[0] == '-') {
                    positive = false;
                    lit.erase(0, 1);
                }
                if (!is_identifier(lit)) throw SyntaxError("invalid literal", line_no, t[k + 1].second);
                c[k] = {lit, positive};
            }
            q.clauses.push_back(c);
        } else {
            throw SyntaxError("expected 'prefix:' or 'clause:'", line_no, t[0].second);
        }
    }
    if (!have_prefix) throw SyntaxError("missing prefix line", line_no, 1);
    if (q.clauses.empty()) throw SyntaxError("no clauses", line_no, 1);
    validate(q);
    return q;
}

std::string serialize_qbf(const QBFInstance& q) {
    std::string out = "prefix:";
    for (const auto& [qt, v] : q.prefix) out += std::string(qt == Quantifier::Exists ? " E " : " A ") + v;
    out += "\n";
    for (const auto& c : q.clauses) {
        out += "clause:";
        for (const auto& l : c) out += " " + std::string(l.positive ? "" : "-") + l.var;
        out += "\n";
    }
    return out;
}

// ============================================================================
// Oracles
// ============================================================================

namespace {

// Variable name -> 0-based position in the prefix.
std::map<std::string, std::size_t> variable_index(const QBFInstance& q) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < q.prefix.size(); ++i) idx[q.prefix[i].second] = i;
    return idx;
}

}  // namespace

bool qbf_brute_force(const QBFInstance& q) {
    validate(q);
    if (q.prefix.size() > 16) throw BoundExceeded("brute force is limited to 16 variables");
    auto idx = variable_index(q);
    std::vector<std::array<std::pair<std::size_t, bool>, 3>> clauses;
    for (const auto& c : q.clauses) {
        std::array<std::pair<std::size_t, bool>, 3> r;
        for (std::size_t k = 0; k < 3; ++k) r[k] = {idx.at(c[k].var), c[k].positive};
        clauses.push_back(r);
    }
    std::vector<bool> value(q.prefix.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == q.prefix.size()) {
            return std::all_of(clauses.begin(), clauses.end(), [&](const auto& c) {
                return std::any_of(c.begin(), c.end(), [&](const auto& l) { return value[l.first] == l.second; });
            });
        }
        bool exists = q.prefix[i].first == Quantifier::Exists;
        for (bool b : {true, false}) {
            value[i] = b;
            if (rec(i + 1) == exists) return exists;
        }
        return !exists;
    };
    return rec(0);
}

// ============================================================================
// QBF to synchronous path checking
// ============================================================================

namespace {

std::string numbered(const char* base, std::size_t i) { return base + std::to_string(i); }

Formula split_all(const std::vector<Formula>& fs) {
    Formula out = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) out = split(fs[i], out);
    return out;
}

Formula conj_all(const std::vector<Formula>& fs) {
    Formula out = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) out = conj(fs[i], out);
    return out;
}

}  // namespace

TeamReduction reduce_qbf_sync(const QBFInstance& q) {
    validate(q);
    auto idx = variable_index(q);
    const std::size_t n = q.prefix.size(), m = q.clauses.size();
    const std::string dollar = "dollar", hash = "hash";
    auto x = [](std::size_t i) { return numbered("x", i + 1); };
    auto qv = [](std::size_t i) { return numbered("q", i + 1); };
    auto c = [](std::size_t j) { return numbered("c", j + 1); };

    std::vector<UPTraceEncoding> traces;
    for (std::size_t i = 0; i < n; ++i) {
        traces.push_back({{}, {{}, {x(i), qv(i), dollar}, {dollar, hash}}});
        traces.push_back({{}, {{}, {dollar}, {x(i), qv(i), dollar, hash}}});
        if (q.prefix[i].first == Quantifier::Forall)
            traces.push_back({{}, {{}, {qv(i), dollar}, {dollar}, {}, {dollar}, {qv(i), dollar, hash}}});
    }
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& lit = q.clauses[j][k];
            std::size_t i = idx.at(lit.var);
            UPTraceEncoding t;
            if (lit.positive)
                t.loop = {{}, {x(i), dollar}, {dollar, hash}};
            else
                t.loop = {{}, {dollar}, {x(i), dollar, hash}};
            for (std::size_t off = 0; off < 3; ++off)
                if (off != k) t.loop[off].insert(c(j));
            traces.push_back(std::move(t));
        }
    }

    std::vector<Formula> matrix;
    for (std::size_t i = 0; i < n; ++i) matrix.push_back(eventually(pos(x(i))));
    for (std::size_t j = 0; j < m; ++j) matrix.push_back(eventually(pos(c(j))));
    Formula f = split_all(matrix);
    for (std::size_t i = n; i-- > 0;) {
        if (q.prefix[i].first == Quantifier::Exists) {
            f = split(eventually(pos(qv(i))), f);
        } else {
            Formula body = split(pos(dollar), split(until(neg(qv(i)), pos(qv(i))),
                                                    eventually(conj(pos(hash), next(f)))));
            f = until(body, pos(hash));
        }
    }
    return {TeamEncoding(std::move(traces)), f};
}

// ============================================================================
// QBF to asynchronous path checking with dependence atoms
// ============================================================================

TeamReduction reduce_qbf_async_dep(const QBFInstance& q) {
    validate(q);
    auto idx = variable_index(q);
    const std::size_t n = q.prefix.size();
    auto p = [](std::size_t i) { return numbered("p", i + 1); };
    auto pb = [&](std::size_t i) { return bar_name(p(i)); };
    auto qv = [](std::size_t i) { return numbered("q", i + 1); };
    auto r = [](std::size_t i) { return numbered("r", i + 1); };
    auto s = [](std::size_t i) { return numbered("s", i + 1); };

    const std::string sel = "sel";

    // A trace of x_i also carries p_j, p_j_bar and s_j for every j != i, so it
    // satisfies any literal of x_j and passes the universal step of x_j. The
    // two-phase `sel` lets a clause pick one literal for the whole team.
    std::vector<UPTraceEncoding> traces;
    for (std::size_t i = 0; i < n; ++i) {
        PropSet others;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) others.insert({p(j), pb(j), s(j)});
        auto with_others = [&](PropSet l, bool selected) {
            l.insert(others.begin(), others.end());
            if (selected) l.insert(sel);
            return l;
        };
        PropSet truth{p(i), qv(i), r(i), s(i)};
        traces.push_back({{}, {with_others(truth, true), with_others(truth, false)}});
        traces.push_back({{}, {with_others({qv(i), r(i), pb(i)}, true), with_others({qv(i), s(i), pb(i)}, false)}});
    }

    // Some disjunct holds on the whole team: every trace advances to a common
    // `sel` phase, and that phase names the disjunct.
    auto one_of = [&](const Formula& a, const Formula& b) {
        return eventually(conj(dep({}, {sel}), conj(split(neg(sel), a), split(pos(sel), b))));
    };
    std::vector<Formula> clauses;
    for (const auto& cl : q.clauses) {
        std::vector<Formula> lits;
        for (const auto& l : cl) {
            std::size_t i = idx.at(l.var);
            lits.push_back(pos(l.positive ? p(i) : pb(i)));
        }
        clauses.push_back(one_of(lits[0], one_of(lits[1], lits[2])));
    }
    Formula f = conj_all(clauses);
    for (std::size_t i = n; i-- > 0;) {
        Formula constant = dep({}, {p(i)});
        if (q.prefix[i].first == Quantifier::Exists)
            f = split(conj(pos(qv(i)), constant), f);
        else
            f = globally(split(conj(constant, conj(pos(qv(i)), pos(r(i)))), conj(pos(s(i)), f)));
    }
    return {TeamEncoding(std::move(traces)), f};
}

// ============================================================================
// Propositional team logic to model checking
// ============================================================================

namespace {

std::vector<std::string> pl_variables(const Formula& phi) {
    if (fragment_info(phi).has_temporal) throw NonPropositional("formula has temporal operators: " + render_formula(phi));
    PropSet ps = propositions(phi);
    if (ps.empty()) throw InvalidInput("formula has no variables");
    for (const auto& v : ps)
        if (ps.count(bar_name(v))) throw NameCollision("variables '" + v + "' and '" + bar_name(v) + "' both occur");
    return {ps.begin(), ps.end()};
}

KripkeStructure layered_structure(const std::vector<std::string>& vars) {
    KripkeStructure k;
    const std::size_t n = vars.size();
    k.worlds.push_back("r");
    k.labels.push_back({});
    for (std::size_t i = 0; i < n; ++i) {
        k.worlds.push_back(numbered("a", i + 1));
        k.labels.push_back({vars[i]});
        k.worlds.push_back(numbered("b", i + 1));
        k.labels.push_back({bar_name(vars[i])});
    }
    auto a = [](std::size_t i) { return 1 + 2 * i; };
    auto b = [](std::size_t i) { return 2 + 2 * i; };
    k.succ.assign(k.worlds.size(), {});
    k.succ[0] = {a(0), b(0)};
    for (std::size_t i = 0; i + 1 < n; ++i) k.succ[a(i)] = k.succ[b(i)] = {a(i + 1), b(i + 1)};
    k.succ[a(n - 1)] = {a(n - 1)};
    k.succ[b(n - 1)] = {b(n - 1)};
    k.initial = 0;
    return k;
}

Formula nested_next(Formula f, std::size_t times) {
    for (std::size_t i = 0; i < times; ++i) f = next(f);
    return f;
}

// The value of the i-th variable sits at position i+1 of every trace, so
// literals become eventualities and constancy is checked at that layer.
// dep(a;b) splits the team by the values of a and asks for constant b per part.
Formula star(const Formula& f, const std::map<std::string, std::size_t>& layer, const Formula& top) {
    switch (f->kind) {
        case Kind::Pos: return eventually(pos(f->name));
        case Kind::Neg: return eventually(pos(bar_name(f->name)));
        case Kind::And: return conj(star(f->lhs, layer, top), star(f->rhs, layer, top));
        case Kind::Split: return split(star(f->lhs, layer, top), star(f->rhs, layer, top));
        case Kind::Tilde: return tilde(star(f->lhs, layer, top));
        case Kind::Dep: {
            if (f->args.size() > 8) throw BoundExceeded("dependence atom with more than 8 determinants");
            std::vector<Formula> per_target;
            for (const auto& b : f->args2) {
                Formula constant = nested_next(dep({}, {b}), layer.at(b) + 1);
                std::vector<Formula> parts;
                for (std::size_t mask = 0; mask < (std::size_t{1} << f->args.size()); ++mask) {
                    Formula part = constant;
                    for (std::size_t j = f->args.size(); j-- > 0;) {
                        const auto& a = f->args[j];
                        part = conj(eventually(pos((mask >> j) & 1 ? a : bar_name(a))), part);
                    }
                    parts.push_back(part);
                }
                per_target.push_back(split_all(parts));
            }
            return per_target.empty() ? top : conj_all(per_target);
        }
        case Kind::Gen: throw UnsupportedFragment("generalised atoms have no propositional translation");
        default: throw NonPropositional("formula has temporal operators: " + render_formula(f));
    }
}

ModelReduction pl_reduction(const Formula& phi, bool wrap) {
    auto vars = pl_variables(phi);
    std::map<std::string, std::size_t> layer;
    for (std::size_t i = 0; i < vars.size(); ++i) layer[vars[i]] = i;
    Formula top = split(pos(vars[0]), neg(vars[0]));
    Formula bottom = conj(pos(vars[0]), neg(vars[0]));
    Formula f = star(phi, layer, top);
    if (wrap) f = split(top, conj(tilde(bottom), f));
    return {layered_structure(vars), f};
}

}  // namespace

ModelReduction reduce_plneg_sat_to_tmc(const Formula& phi) { return pl_reduction(phi, true); }

ModelReduction reduce_pldep_val_to_tmc(const Formula& phi) {
    if (fragment_info(phi).has_contradictory_neg)
        throw UnsupportedFragment("validity reduction takes formulas without '~'");
    return pl_reduction(phi, false);
}

bool pl_team_brute_force(const Formula& phi, PLMode mode) {
    auto vars = pl_variables(phi);
    if (vars.size() > 3) throw BoundExceeded("propositional brute force is limited to 3 variables");
    const std::size_t assignments = std::size_t{1} << vars.size();
    std::vector<UPTraceEncoding> all;
    for (std::size_t a = 0; a < assignments; ++a) {
        PropSet letter;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if ((a >> i) & 1) letter.insert(vars[i]);
        all.push_back({{}, {letter}});
    }
    if (mode == PLMode::Val) return check_sync(TeamEncoding(all), phi);
    for (std::size_t t = 1; t < (std::size_t{1} << assignments); ++t) {
        std::vector<UPTraceEncoding> team;
        for (std::size_t a = 0; a < assignments; ++a)
            if ((t >> a) & 1) team.push_back(all[a]);
        if (check_sync(TeamEncoding(std::move(team)), phi)) return true;
    }
    return false;
}

}  // namespace teamltl
