#include "teamltl/formula.hpp"

#include <cctype>
#include <functional>
#include <utility>

#include "teamltl/errors.hpp"

namespace teamltl {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(head) || s[0] == '_')) return false;
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_')) return false;
    }
    return true;
}

// ============================================================================
// Constructors
// ============================================================================

namespace {

Formula make(Kind k, Formula lhs = nullptr, Formula rhs = nullptr) {
    return std::make_shared<const Node>(Node{k, {}, {}, {}, std::move(lhs), std::move(rhs)});
}

}  // namespace

Formula pos(std::string p) { return std::make_shared<const Node>(Node{Kind::Pos, std::move(p), {}, {}, nullptr, nullptr}); }
Formula neg(std::string p) { return std::make_shared<const Node>(Node{Kind::Neg, std::move(p), {}, {}, nullptr, nullptr}); }
Formula conj(Formula a, Formula b) { return make(Kind::And, std::move(a), std::move(b)); }
Formula split(Formula a, Formula b) { return make(Kind::Split, std::move(a), std::move(b)); }
Formula next(Formula a) { return make(Kind::Next, std::move(a)); }
Formula eventually(Formula a) { return make(Kind::Eventually, std::move(a)); }
Formula globally(Formula a) { return make(Kind::Globally, std::move(a)); }
Formula until(Formula a, Formula b) { return make(Kind::Until, std::move(a), std::move(b)); }
Formula release(Formula a, Formula b) { return make(Kind::Release, std::move(a), std::move(b)); }
Formula tilde(Formula a) { return make(Kind::Tilde, std::move(a)); }

Formula dep(std::vector<std::string> determinants, std::vector<std::string> determined) {
    if (determined.empty()) throw InvalidInput("dependence atom needs at least one determined proposition");
    return std::make_shared<const Node>(
        Node{Kind::Dep, {}, std::move(determinants), std::move(determined), nullptr, nullptr});
}

Formula gen(std::string name, std::vector<std::string> args) {
    return std::make_shared<const Node>(Node{Kind::Gen, std::move(name), std::move(args), {}, nullptr, nullptr});
}

bool is_binary(Kind k) {
    return k == Kind::And || k == Kind::Split || k == Kind::Until || k == Kind::Release;
}

bool is_unary(Kind k) {
    return k == Kind::Next || k == Kind::Eventually || k == Kind::Globally || k == Kind::Tilde;
}

bool is_atomic(Kind k) { return k == Kind::Pos || k == Kind::Neg || k == Kind::Dep || k == Kind::Gen; }

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->args != b->args || a->args2 != b->args2) return false;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

// ============================================================================
// Lexer
// ============================================================================

namespace {

enum class Tok { Ident, LParen, RParen, Amp, Bar, Bang, Tilde, At, Comma, Semi, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        std::size_t l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '&': k = Tok::Amp; break;
            case '|': k = Tok::Bar; break;
            case '!': k = Tok::Bang; break;
            case '~': k = Tok::Tilde; break;
            case '@': k = Tok::At; break;
            case ',': k = Tok::Comma; break;
            case ';': k = Tok::Semi; break;
            default: throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
        }
        out.push_back({k, std::string(1, c), l, cl});
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_keyword(const std::string& s) { return s == "X" || s == "F" || s == "G" || s == "U" || s == "R"; }

// ============================================================================
// Parser
// ============================================================================

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse() {
        Formula f = parse_split();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().line, peek().col); }
    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        take();
    }

    Formula parse_split() {
        Formula f = parse_conj();
        while (peek().kind == Tok::Bar) {
            take();
            f = split(f, parse_conj());
        }
        return f;
    }

    Formula parse_conj() {
        Formula f = parse_untilrel();
        while (peek().kind == Tok::Amp) {
            take();
            f = conj(f, parse_untilrel());
        }
        return f;
    }

    bool at_binary_temporal() const {
        return peek().kind == Tok::Ident && (peek().text == "U" || peek().text == "R");
    }

    Formula parse_untilrel() {
        std::vector<Formula> operands{parse_unary()};
        std::string op;
        while (at_binary_temporal()) {
            if (!op.empty() && peek().text != op) fail("cannot mix U and R at one level without parentheses");
            op = take().text;
            operands.push_back(parse_unary());
        }
        Formula f = operands.back();
        for (std::size_t k = operands.size() - 1; k-- > 0;)
            f = op == "U" ? until(operands[k], f) : release(operands[k], f);
        return f;
    }

    Formula parse_unary() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && (t.text == "X" || t.text == "F" || t.text == "G")) {
            std::string op = take().text;
            Formula sub = parse_unary();
            if (op == "X") return next(sub);
            if (op == "F") return eventually(sub);
            return globally(sub);
        }
        if (t.kind == Tok::Tilde) {
            take();
            return tilde(parse_unary());
        }
        if (t.kind == Tok::Bang) {
            take();
            if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("'!' must be followed by a proposition");
            return neg(take().text);
        }
        return parse_atom();
    }

    std::vector<std::string> parse_identlist(Tok terminator) {
        std::vector<std::string> out;
        if (peek().kind == terminator) return out;
        while (true) {
            if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected proposition name");
            out.push_back(take().text);
            if (peek().kind != Tok::Comma) break;
            take();
        }
        return out;
    }

    Formula parse_atom() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            take();
            Formula f = parse_split();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::At) {
            take();
            if (peek().kind != Tok::Ident) fail("expected atom name after '@'");
            std::string name = take().text;
            expect(Tok::LParen, "'('");
            auto args = parse_identlist(Tok::RParen);
            expect(Tok::RParen, "')'");
            return gen(std::move(name), std::move(args));
        }
        if (t.kind == Tok::Ident) {
            if (is_keyword(t.text)) fail("unexpected operator '" + t.text + "'");
            if (t.text == "dep" && peek(1).kind == Tok::LParen) {
                take();
                take();
                auto first = parse_identlist(Tok::Semi);
                std::vector<std::string> determinants, determined;
                if (peek().kind == Tok::Semi) {
                    take();
                    determinants = std::move(first);
                    determined = parse_identlist(Tok::RParen);
                } else {
                    determined = std::move(first);  // dep(p) abbreviates dep(;p)
                }
                if (determined.empty()) fail("dependence atom needs a determined proposition");
                expect(Tok::RParen, "')'");
                return dep(std::move(determinants), std::move(determined));
            }
            return pos(take().text);
        }
        if (t.kind == Tok::End) fail("unexpected end of input");
        fail("unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).parse(); }

// ============================================================================
// Renderer
// ============================================================================

namespace {

int level(Kind k) {
    switch (k) {
        case Kind::Split: return 0;
        case Kind::And: return 1;
        case Kind::Until:
        case Kind::Release: return 2;
        case Kind::Next:
        case Kind::Eventually:
        case Kind::Globally:
        case Kind::Tilde: return 3;
        default: return 4;
    }
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i];
    }
    return out;
}

void render(const Formula& f, std::string& out);

void render_at(const Formula& f, int min_level, std::string& out) {
    if (level(f->kind) < min_level) {
        out += '(';
        render(f, out);
        out += ')';
    } else {
        render(f, out);
    }
}

void render(const Formula& f, std::string& out) {
    switch (f->kind) {
        case Kind::Pos: out += f->name; break;
        case Kind::Neg: out += '!' + f->name; break;
        case Kind::Dep: out += "dep(" + join(f->args) + ";" + join(f->args2) + ")"; break;
        case Kind::Gen: out += "@" + f->name + "(" + join(f->args) + ")"; break;
        case Kind::Split:
            render_at(f->lhs, 0, out);
            out += " | ";
            render_at(f->rhs, 1, out);
            break;
        case Kind::And:
            render_at(f->lhs, 1, out);
            out += " & ";
            render_at(f->rhs, 2, out);
            break;
        case Kind::Until:
        case Kind::Release: {
            render_at(f->lhs, 3, out);
            out += f->kind == Kind::Until ? " U " : " R ";
            if (f->rhs->kind == f->kind)
                render(f->rhs, out);
            else
                render_at(f->rhs, 3, out);
            break;
        }
        case Kind::Tilde:
            out += '~';
            render_at(f->lhs, 3, out);
            break;
        case Kind::Next:
        case Kind::Eventually:
        case Kind::Globally:
            out += f->kind == Kind::Next ? "X " : f->kind == Kind::Eventually ? "F " : "G ";
            render_at(f->lhs, 3, out);
            break;
    }
}

}  // namespace

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, out);
    return out;
}

// ============================================================================
// Structural queries and transformations
// ============================================================================

std::size_t formula_length(const Formula& f) {
    if (is_atomic(f->kind)) return 0;
    std::size_t n = 1 + formula_length(f->lhs);
    if (f->rhs) n += formula_length(f->rhs);
    return n;
}

namespace {

void collect_props(const Formula& f, PropSet& out) {
    switch (f->kind) {
        case Kind::Pos:
        case Kind::Neg: out.insert(f->name); return;
        case Kind::Dep:
            out.insert(f->args.begin(), f->args.end());
            out.insert(f->args2.begin(), f->args2.end());
            return;
        case Kind::Gen: out.insert(f->args.begin(), f->args.end()); return;
        default:
            collect_props(f->lhs, out);
            if (f->rhs) collect_props(f->rhs, out);
    }
}

void collect_info(const Formula& f, const GenRegistry* reg, FragmentInfo& info) {
    switch (f->kind) {
        case Kind::Pos:
        case Kind::Neg: return;
        case Kind::Dep:
            info.has_dep = true;
            info.pure_ltl = false;
            return;
        case Kind::Gen: {
            info.has_gen_atom = true;
            info.pure_ltl = false;
            if (!reg) throw UnknownAtom("generalised atom '@" + f->name + "' is not registered");
            if (!reg->at(f->name).downward_closed) info.downward_closed_syntactic = false;
            return;
        }
        case Kind::Tilde:
            info.has_contradictory_neg = true;
            info.pure_ltl = false;
            info.downward_closed_syntactic = false;
            break;
        case Kind::Split: info.splitjunction_free = false; break;
        case Kind::Next:
        case Kind::Eventually:
        case Kind::Globally:
        case Kind::Until:
        case Kind::Release: info.has_temporal = true; break;
        default: break;
    }
    collect_info(f->lhs, reg, info);
    if (f->rhs) collect_info(f->rhs, reg, info);
}

}  // namespace

PropSet propositions(const Formula& f) {
    PropSet out;
    collect_props(f, out);
    return out;
}

FragmentInfo fragment_info(const Formula& f, const GenRegistry* registry) {
    FragmentInfo info;
    collect_info(f, registry, info);
    return info;
}

Formula dualize(const Formula& f) {
    switch (f->kind) {
        case Kind::Pos: return neg(f->name);
        case Kind::Neg: return pos(f->name);
        case Kind::And: return split(dualize(f->lhs), dualize(f->rhs));
        case Kind::Split: return conj(dualize(f->lhs), dualize(f->rhs));
        case Kind::Next: return next(dualize(f->lhs));
        case Kind::Eventually: return globally(dualize(f->lhs));
        case Kind::Globally: return eventually(dualize(f->lhs));
        case Kind::Until: return release(dualize(f->lhs), dualize(f->rhs));
        case Kind::Release: return until(dualize(f->lhs), dualize(f->rhs));
        case Kind::Tilde:
        case Kind::Dep:
        case Kind::Gen: break;
    }
    throw UnsupportedFragment("dualize needs a pure LTL formula: " + render_formula(f));
}

namespace {

Formula bar_rec(const Formula& f) {
    switch (f->kind) {
        case Kind::Pos: return f;
        case Kind::Neg: return pos(bar_name(f->name));
        case Kind::Split:
        case Kind::Dep:
        case Kind::Gen:
            throw UnsupportedFragment("bar transform accepts no splitjunction, dep or generalised atom: " +
                                      render_formula(f));
        default: {
            auto copy = std::make_shared<Node>(*f);
            copy->lhs = bar_rec(f->lhs);
            if (f->rhs) copy->rhs = bar_rec(f->rhs);
            return copy;
        }
    }
}

void collect_negated(const Formula& f, PropSet& out) {
    if (f->kind == Kind::Neg) out.insert(f->name);
    if (f->lhs) collect_negated(f->lhs, out);
    if (f->rhs) collect_negated(f->rhs, out);
}

}  // namespace

Formula bar_transform(const Formula& f) {
    PropSet props = propositions(f);
    PropSet negated;
    collect_negated(f, negated);
    for (const auto& p : negated)
        if (props.count(bar_name(p))) throw NameCollision("proposition '" + bar_name(p) + "' already occurs");
    return bar_rec(f);
}

}  // namespace teamltl
