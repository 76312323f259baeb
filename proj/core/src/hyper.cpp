#include "teamltl/hyper.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "lasso_dp.hpp"
#include "teamltl/errors.hpp"

namespace teamltl {

namespace {

HFormula make(HKind k, HFormula a = nullptr, HFormula b = nullptr) {
    return std::make_shared<const HNode>(HNode{k, {}, {}, std::move(a), std::move(b)});
}

HFormula atom(std::string p, std::string var) {
    return std::make_shared<const HNode>(HNode{HKind::Atom, std::move(p), std::move(var), nullptr, nullptr});
}

// ============================================================================
// Lexer and parser
// ============================================================================

enum class Tok { Ident, LParen, RParen, Amp, Bar, Bang, At, Dot, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, col});
            col += j - i;
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '&': k = Tok::Amp; break;
            case '|': k = Tok::Bar; break;
            case '!': k = Tok::Bang; break;
            case '@': k = Tok::At; break;
            case '.': k = Tok::Dot; break;
            default: throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back({k, std::string(1, c), line, col});
        ++col;
        ++i;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_keyword(const std::string& s) { return s == "X" || s == "F" || s == "G" || s == "U" || s == "R"; }

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    HyperSentence parse() {
        HyperSentence s;
        while (peek().kind == Tok::Ident && (peek().text == "E" || peek().text == "A") &&
               peek(1).kind == Tok::Ident && peek(2).kind == Tok::Dot) {
            Quantifier q = take().text == "E" ? Quantifier::Exists : Quantifier::Forall;
            const Token& v = take();
            if (bound_.count(v.text)) throw SyntaxError("trace variable '" + v.text + "' bound twice", v.line, v.col);
            bound_.insert(v.text);
            s.prefix.emplace_back(q, v.text);
            take();
        }
        s.body = parse_or();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return s;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().line, peek().col); }

    HFormula parse_or() {
        HFormula f = parse_and();
        while (peek().kind == Tok::Bar) {
            take();
            f = make(HKind::Or, f, parse_and());
        }
        return f;
    }

    HFormula parse_and() {
        HFormula f = parse_untilrel();
        while (peek().kind == Tok::Amp) {
            take();
            f = make(HKind::And, f, parse_untilrel());
        }
        return f;
    }

    HFormula parse_untilrel() {
        std::vector<HFormula> operands{parse_unary()};
        std::string op;
        while (peek().kind == Tok::Ident && (peek().text == "U" || peek().text == "R")) {
            if (!op.empty() && peek().text != op) fail("cannot mix U and R at one level without parentheses");
            op = take().text;
            operands.push_back(parse_unary());
        }
        HFormula f = operands.back();
        for (std::size_t k = operands.size() - 1; k-- > 0;)
            f = make(op == "U" ? HKind::Until : HKind::Release, operands[k], f);
        return f;
    }

    HFormula parse_unary() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && (t.text == "X" || t.text == "F" || t.text == "G")) {
            std::string op = take().text;
            HFormula sub = parse_unary();
            return make(op == "X" ? HKind::Next : op == "F" ? HKind::Eventually : HKind::Globally, sub);
        }
        if (t.kind == Tok::Bang) {
            take();
            return make(HKind::Not, parse_unary());
        }
        if (t.kind == Tok::LParen) {
            take();
            HFormula f = parse_or();
            if (peek().kind != Tok::RParen) fail("expected ')'");
            take();
            return f;
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            std::string p = take().text;
            if (peek().kind != Tok::At) fail("expected '@' after proposition '" + p + "'");
            take();
            if (peek().kind != Tok::Ident) fail("expected trace variable after '@'");
            const Token& v = peek();
            if (!bound_.count(v.text)) fail("unbound trace variable '" + v.text + "'");
            return atom(p, take().text);
        }
        if (t.kind == Tok::End) fail("unexpected end of input");
        fail("unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string> bound_;
};

// ============================================================================
// Renderer
// ============================================================================

int level(HKind k) {
    switch (k) {
        case HKind::Or: return 0;
        case HKind::And: return 1;
        case HKind::Until:
        case HKind::Release: return 2;
        case HKind::Atom: return 4;
        default: return 3;
    }
}

void render(const HFormula& f, std::string& out);

void render_at(const HFormula& f, int min_level, std::string& out) {
    bool paren = level(f->kind) < min_level;
    if (paren) out += '(';
    render(f, out);
    if (paren) out += ')';
}

void render(const HFormula& f, std::string& out) {
    switch (f->kind) {
        case HKind::Atom: out += f->prop + "@" + f->var; break;
        case HKind::Not:
            out += '!';
            render_at(f->lhs, 3, out);
            break;
        case HKind::Or:
            render_at(f->lhs, 0, out);
            out += " | ";
            render_at(f->rhs, 1, out);
            break;
        case HKind::And:
            render_at(f->lhs, 1, out);
            out += " & ";
            render_at(f->rhs, 2, out);
            break;
        case HKind::Until:
        case HKind::Release:
            render_at(f->lhs, 3, out);
            out += f->kind == HKind::Until ? " U " : " R ";
            if (f->rhs->kind == f->kind)
                render(f->rhs, out);
            else
                render_at(f->rhs, 3, out);
            break;
        case HKind::Next:
        case HKind::Eventually:
        case HKind::Globally:
            out += f->kind == HKind::Next ? "X " : f->kind == HKind::Eventually ? "F " : "G ";
            render_at(f->lhs, 3, out);
            break;
    }
}

}  // namespace

HyperSentence parse_hyper(std::string_view text) { return Parser(lex(text)).parse(); }

std::string render_hyper(const HyperSentence& s) {
    std::string out;
    for (const auto& [q, v] : s.prefix) out += std::string(q == Quantifier::Exists ? "E " : "A ") + v + ". ";
    render(s.body, out);
    return out;
}

bool equal(const HFormula& a, const HFormula& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->kind == b->kind && a->prop == b->prop && a->var == b->var && equal(a->lhs, b->lhs) &&
           equal(a->rhs, b->rhs);
}

// ============================================================================
// Evaluation
// ============================================================================

namespace {

// The body on one tuple of traces, read as a single lasso.
class JointChecker {
public:
    JointChecker(const std::map<std::string, const UPTraceEncoding*>& assignment, std::uint64_t max_lcm)
        : assignment_(assignment) {
        std::uint64_t period = 1;
        for (const auto& [_, t] : assignment) {
            stem_ = std::max(stem_, t->prefix.size());
            period = std::lcm(period, static_cast<std::uint64_t>(t->loop.size()));
            if (period > max_lcm) throw BoundExceeded("joint period exceeds " + std::to_string(max_lcm));
        }
        n_ = stem_ + static_cast<std::size_t>(period);
    }

    const detail::Bits& eval(const HFormula& f) {
        auto it = memo_.find(f.get());
        if (it != memo_.end()) return it->second;
        detail::Bits v(n_);
        switch (f->kind) {
            case HKind::Atom: {
                const UPTraceEncoding& t = *assignment_.at(f->var);
                for (std::size_t i = 0; i < n_; ++i) v[i] = value_at(t, i).count(f->prop) > 0;
                break;
            }
            case HKind::Not: {
                const auto& a = eval(f->lhs);
                for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i];
                break;
            }
            case HKind::Or:
            case HKind::And: {
                const auto& a = eval(f->lhs);
                const auto& b = eval(f->rhs);
                for (std::size_t i = 0; i < n_; ++i) v[i] = f->kind == HKind::Or ? (a[i] || b[i]) : (a[i] && b[i]);
                break;
            }
            case HKind::Next: v = detail::lasso_next(eval(f->lhs), stem_); break;
            case HKind::Eventually: v = detail::lasso_until(detail::Bits(n_, 1), eval(f->lhs), stem_); break;
            case HKind::Globally: v = detail::lasso_release(detail::Bits(n_, 0), eval(f->lhs), stem_); break;
            case HKind::Until: v = detail::lasso_until(eval(f->lhs), eval(f->rhs), stem_); break;
            case HKind::Release: v = detail::lasso_release(eval(f->lhs), eval(f->rhs), stem_); break;
        }
        return memo_.emplace(f.get(), std::move(v)).first->second;
    }

private:
    const std::map<std::string, const UPTraceEncoding*>& assignment_;
    std::size_t stem_ = 0;
    std::size_t n_ = 0;
    std::unordered_map<const HNode*, detail::Bits> memo_;
};

}  // namespace

bool check_hyper(const TeamEncoding& team, const HyperSentence& s, std::size_t max_quantifiers,
                 std::uint64_t max_lcm) {
    if (s.prefix.size() > max_quantifiers)
        throw BoundExceeded("quantifier prefix longer than " + std::to_string(max_quantifiers));
    std::map<std::string, const UPTraceEncoding*> assignment;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) {
        if (k == s.prefix.size()) return JointChecker(assignment, max_lcm).eval(s.body)[0] != 0;
        bool exists = s.prefix[k].first == Quantifier::Exists;
        for (const auto& t : team) {
            assignment[s.prefix[k].second] = &t;
            if (rec(k + 1) == exists) {
                assignment.erase(s.prefix[k].second);
                return exists;
            }
        }
        assignment.erase(s.prefix[k].second);
        return !exists;
    };
    return rec(0);
}

// ============================================================================
// Translations
// ============================================================================

namespace {

HFormula to_hyper(const Formula& f, const std::string& var) {
    switch (f->kind) {
        case Kind::Pos: return atom(f->name, var);
        case Kind::Neg: return make(HKind::Not, atom(f->name, var));
        case Kind::And: return make(HKind::And, to_hyper(f->lhs, var), to_hyper(f->rhs, var));
        case Kind::Split: return make(HKind::Or, to_hyper(f->lhs, var), to_hyper(f->rhs, var));
        case Kind::Next: return make(HKind::Next, to_hyper(f->lhs, var));
        case Kind::Eventually: return make(HKind::Eventually, to_hyper(f->lhs, var));
        case Kind::Globally: return make(HKind::Globally, to_hyper(f->lhs, var));
        case Kind::Until: return make(HKind::Until, to_hyper(f->lhs, var), to_hyper(f->rhs, var));
        case Kind::Release: return make(HKind::Release, to_hyper(f->lhs, var), to_hyper(f->rhs, var));
        default: throw UnsupportedFragment("only pure LTL translates to HyperLTL: " + render_formula(f));
    }
}

Formula to_ltl(const HFormula& f, bool negated) {
    switch (f->kind) {
        case HKind::Atom: return negated ? neg(f->prop) : pos(f->prop);
        case HKind::Not: return to_ltl(f->lhs, !negated);
        case HKind::Or:
        case HKind::And: {
            Formula a = to_ltl(f->lhs, negated), b = to_ltl(f->rhs, negated);
            return (f->kind == HKind::Or) != negated ? split(a, b) : conj(a, b);
        }
        case HKind::Next: return next(to_ltl(f->lhs, negated));
        case HKind::Eventually:
        case HKind::Globally: {
            Formula a = to_ltl(f->lhs, negated);
            return (f->kind == HKind::Eventually) != negated ? eventually(a) : globally(a);
        }
        case HKind::Until:
        case HKind::Release: {
            Formula a = to_ltl(f->lhs, negated), b = to_ltl(f->rhs, negated);
            return (f->kind == HKind::Until) != negated ? until(a, b) : release(a, b);
        }
    }
    throw Error("internal: unknown hyper node");
}

}  // namespace

HyperSentence ltl_to_forall_hyper(const Formula& f, const std::string& var) {
    HyperSentence s;
    s.prefix.emplace_back(Quantifier::Forall, var);
    s.body = to_hyper(f, var);
    return s;
}

Formula forall_hyper_to_ltl(const HyperSentence& s) {
    if (s.prefix.size() != 1 || s.prefix[0].first != Quantifier::Forall)
        throw NotForallFragment("only sentences 'A pi. body' have a team LTL counterpart");
    return to_ltl(s.body, false);
}

}  // namespace teamltl
