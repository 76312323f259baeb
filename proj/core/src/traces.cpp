#include "teamltl/traces.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "teamltl/errors.hpp"

namespace teamltl {

const PropSet& value_at(const UPTraceEncoding& e, std::size_t i) {
    if (i < e.prefix.size()) return e.prefix[i];
    return e.loop[(i - e.prefix.size()) % e.loop.size()];
}

UPTraceEncoding canonicalize(UPTraceEncoding e) {
    if (e.loop.empty()) throw InvalidInput("trace encoding with empty loop");
    const std::size_t n = e.loop.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = e.loop[i] == e.loop[i - d];
        if (periodic) {
            e.loop.resize(d);
            break;
        }
    }
    while (!e.prefix.empty() && e.prefix.back() == e.loop.back()) {
        std::rotate(e.loop.rbegin(), e.loop.rbegin() + 1, e.loop.rend());
        e.prefix.pop_back();
    }
    return e;
}

UPTraceEncoding suffix_encoding(const UPTraceEncoding& e, std::size_t i) {
    UPTraceEncoding out;
    if (i < e.prefix.size()) {
        out.prefix.assign(e.prefix.begin() + static_cast<std::ptrdiff_t>(i), e.prefix.end());
        out.loop = e.loop;
    } else {
        std::size_t r = (i - e.prefix.size()) % e.loop.size();
        out.loop = e.loop;
        std::rotate(out.loop.begin(), out.loop.begin() + static_cast<std::ptrdiff_t>(r), out.loop.end());
    }
    return canonicalize(std::move(out));
}

TeamEncoding::TeamEncoding(std::vector<UPTraceEncoding> traces) {
    for (auto& t : traces) t = canonicalize(std::move(t));
    std::sort(traces.begin(), traces.end());
    traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
    traces_ = std::move(traces);
}

std::size_t prfx(const TeamEncoding& team) {
    std::size_t m = 0;
    for (const auto& t : team) m = std::max(m, t.prefix.size());
    return m;
}

std::uint64_t lcm(const TeamEncoding& team, std::uint64_t cap) {
    std::uint64_t acc = 1;
    for (const auto& t : team) {
        std::uint64_t n = t.loop.size();
        std::uint64_t g = std::gcd(acc, n);
        std::uint64_t step = n / g;
        if (acc > cap / step) throw BoundExceeded("lcm of loop lengths exceeds " + std::to_string(cap));
        acc *= step;
    }
    if (acc > cap) throw BoundExceeded("lcm of loop lengths exceeds " + std::to_string(cap));
    return acc;
}

TeamEncoding team_suffix(const TeamEncoding& team, std::size_t i) {
    std::vector<UPTraceEncoding> out;
    out.reserve(team.size());
    for (const auto& t : team) out.push_back(suffix_encoding(t, i));
    return TeamEncoding(std::move(out));
}

// ============================================================================
// Team files
// ============================================================================

namespace {

struct LineCursor {
    std::string_view s;
    std::size_t line;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line, i + 1); }
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

PropSet parse_set(LineCursor& c) {
    PropSet out;
    ++c.i;  // '{'
    while (true) {
        while (c.i < c.s.size() && (std::isspace(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == ',')) ++c.i;
        if (c.i >= c.s.size()) c.fail("unterminated '{'");
        if (c.s[c.i] == '}') {
            ++c.i;
            return out;
        }
        std::size_t j = c.i;
        while (j < c.s.size() && (std::isalnum(static_cast<unsigned char>(c.s[j])) || c.s[j] == '_')) ++j;
        if (j == c.i || !is_identifier(c.s.substr(c.i, j - c.i))) c.fail("expected proposition name");
        out.insert(std::string(c.s.substr(c.i, j - c.i)));
        c.i = j;
    }
}

UPTraceEncoding parse_trace_line(std::string_view text, std::size_t line) {
    LineCursor c{text, line};
    UPTraceEncoding e;
    bool seen_semi = false;
    while (!c.done()) {
        char ch = c.s[c.i];
        if (ch == '{') {
            (seen_semi ? e.loop : e.prefix).push_back(parse_set(c));
        } else if (ch == ';') {
            if (seen_semi) c.fail("second ';' in trace");
            seen_semi = true;
            ++c.i;
        } else {
            c.fail(std::string("unexpected '") + ch + "'");
        }
    }
    if (!seen_semi) c.fail("missing ';' between prefix and loop");
    if (e.loop.empty()) c.fail("empty loop");
    return e;
}

std::string render_set(const PropSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& p : s) {
        if (!first) out += ',';
        out += p;
        first = false;
    }
    return out + "}";
}

}  // namespace

UPTraceEncoding parse_trace(std::string_view line) { return parse_trace_line(line, 1); }

TeamEncoding parse_team(std::string_view text) {
    std::vector<UPTraceEncoding> traces;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        bool blank = std::all_of(line.begin(), line.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
        if (!blank) traces.push_back(parse_trace_line(line, line_no));
        start = end + 1;
    }
    return TeamEncoding(std::move(traces));
}

std::string serialize_trace(const UPTraceEncoding& e) {
    std::string out;
    for (const auto& s : e.prefix) out += render_set(s) + " ";
    out += ";";
    for (const auto& s : e.loop) out += " " + render_set(s);
    return out;
}

std::string serialize_team(const TeamEncoding& team) {
    std::string out;
    for (const auto& t : team) out += serialize_trace(t) + "\n";
    return out;
}

}  // namespace teamltl
