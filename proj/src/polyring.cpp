#include "z4inv/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace z4inv {

CycPoly to_cyclotomic(const RatPoly& p) {
    CycPoly r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, Cyclotomic(c));
    return r;
}

std::optional<RatPoly> to_rational(const CycPoly& p) {
    RatPoly r(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        auto q = c.to_rational();
        if (!q) return std::nullopt;
        r.add_term(m, *q);
    }
    return r;
}

CycPoly substitute_elementary(const CycPoly& f, const ElementaryOp& op) {
    const unsigned n = f.nvars();
    if (op.i >= n || op.j >= n) throw std::invalid_argument("substitution: variable out of range");
    CycPoly out(n);
    switch (op.kind) {
        case ElementaryOp::Kind::Swap:
            for (const auto& [m, c] : f.terms()) {
                Monomial s = m;
                std::swap(s.e[op.i], s.e[op.j]);
                out.add_term(s, c);
            }
            break;
        case ElementaryOp::Kind::Scale: {
            std::vector<Cyclotomic> pw{Cyclotomic(1L)};
            for (const auto& [m, c] : f.terms()) {
                while (pw.size() <= m.e[op.i]) pw.push_back(pw.back() * op.c);
                out.add_term(m, c * pw[m.e[op.i]]);
            }
            break;
        }
        case ElementaryOp::Kind::Shear: {
            std::vector<Cyclotomic> pw{Cyclotomic(1L)};
            for (const auto& [m, c] : f.terms()) {
                const unsigned a = m.e[op.i];
                while (pw.size() <= a) pw.push_back(pw.back() * op.c);
                for (unsigned s = 0; s <= a; ++s) {
                    Monomial t = m;
                    t.e[op.i] = static_cast<std::uint16_t>(a - s);
                    t.e[op.j] = static_cast<std::uint16_t>(t.e[op.j] + s);
                    Cyclotomic coeff = c * pw[s];
                    if (s != 0 && s != a) {
                        Integer b;
                        mpz_bin_uiui(b.get_mpz_t(), a, s);
                        coeff *= Cyclotomic(Rational(b));
                    }
                    out.add_term(t, coeff);
                }
            }
            break;
        }
    }
    return out;
}

CycPoly substitute_linear(const CycPoly& f, const CycMatrix& m) {
    if (m.size() != f.nvars()) throw std::invalid_argument("substitute_linear: dimension mismatch");
    CycPoly g = f;
    for (const auto& op : elementary_factors(m)) g = substitute_elementary(g, op);
    return g;
}

CycPoly substitute_linear(const RatPoly& f, const CycMatrix& m) { return substitute_linear(to_cyclotomic(f), m); }

std::uint64_t binomial_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r >> 64) throw std::overflow_error("binomial_u64 overflow");
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

// C(n, k) for k < kMaxVars and n < kSmallBinomN; monomial ranking only needs these.
constexpr unsigned kSmallBinomN = 4096;

const std::vector<std::uint64_t>& small_binomials() {
    static const std::vector<std::uint64_t> table = [] {
        std::vector<std::uint64_t> t(kSmallBinomN * kMaxVars);
        for (unsigned n = 0; n < kSmallBinomN; ++n)
            for (unsigned k = 0; k < kMaxVars; ++k) t[n * kMaxVars + k] = binomial_u64(n, k);
        return t;
    }();
    return table;
}

}  // namespace

std::uint64_t monomial_count(unsigned nvars, unsigned degree) { return binomial_u64(degree + nvars - 1, nvars - 1); }

std::size_t monomial_rank(const Monomial& m, unsigned nvars) {
    const auto& tab = small_binomials();
    unsigned tail = m.degree();
    if (tail + nvars >= kSmallBinomN) throw std::out_of_range("monomial_rank: degree too large");
    std::size_t r = 0;
    for (unsigned i = 0; i + 1 < nvars; ++i) {
        tail -= m.e[i];
        r += tab[(tail + nvars - i - 2) * kMaxVars + (nvars - i - 1)];
    }
    return r;
}

MonomialIndex::MonomialIndex(unsigned nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
    monomials_.reserve(monomial_count(nvars, degree));
    Monomial cur;
    // Recursive descent emits exponents with t0 descending first.
    std::function<void(unsigned, unsigned)> rec = [&](unsigned var, unsigned left) {
        if (var + 1 == nvars_) {
            cur.e[var] = static_cast<std::uint16_t>(left);
            monomials_.push_back(cur);
            return;
        }
        for (unsigned x = left + 1; x-- > 0;) {
            cur.e[var] = static_cast<std::uint16_t>(x);
            rec(var + 1, left - x);
        }
        cur.e[var] = 0;
    };
    rec(0, degree);
}

std::size_t MonomialIndex::rank(const Monomial& m) const { return monomial_rank(m, nvars_); }

std::vector<std::vector<unsigned>> degree_exponents(const std::vector<unsigned>& degrees, unsigned k) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(degrees.size(), 0);
    std::function<void(size_t, unsigned)> rec = [&](size_t g, unsigned left) {
        if (g == degrees.size()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        if (degrees[g] == 0) throw std::invalid_argument("degree_exponents: zero-degree generator");
        for (unsigned e = left / degrees[g] + 1; e-- > 0;) {
            cur[g] = e;
            rec(g + 1, left - e * degrees[g]);
        }
        cur[g] = 0;
    };
    rec(0, k);
    return out;
}

namespace {

template <class C, class CoeffFmt>
std::string format_poly(const MultiPoly<C>& p, CoeffFmt fmt) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        auto [negative, text] = fmt(c);
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        std::string vars;
        for (unsigned i = 0; i < p.nvars(); ++i) {
            if (m.e[i] == 0) continue;
            if (!vars.empty()) vars += ' ';
            vars += "t" + std::to_string(i);
            if (m.e[i] > 1) vars += "^" + std::to_string(m.e[i]);
        }
        if (vars.empty())
            os << text;
        else if (text == "1")
            os << vars;
        else
            os << text << ' ' << vars;
    }
    return os.str();
}

}  // namespace

std::string to_text(const RatPoly& p) {
    return format_poly(p, [](const Rational& c) {
        Rational a = abs(c);
        return std::make_pair(c < 0, a.get_str());
    });
}

std::string to_text(const CycPoly& p) {
    return format_poly(p, [](const Cyclotomic& c) {
        if (auto q = c.to_rational()) {
            Rational a = abs(*q);
            return std::make_pair(*q < 0, a.get_str());
        }
        return std::make_pair(false, "(" + c.to_string() + ")");
    });
}

RatPoly parse_poly(const std::string& text, unsigned nvars) {
    // Normalize LaTeX spellings such as t_{0}^{8} and drop alignment marks.
    std::string s;
    for (char ch : text)
        if (ch != '_' && ch != '{' && ch != '}' && ch != '&' && ch != '\\') s += ch;
    RatPoly out(nvars);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*')) ++pos;
    };
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_poly: " + why + " at offset " + std::to_string(pos));
    };
    auto read_uint = [&]() -> std::string {
        size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(b, pos - b);
    };
    skip_ws();
    if (s.substr(pos) == "0") return out;
    bool any = false;
    while (true) {
        skip_ws();
        if (pos >= s.size()) break;
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        } else if (any) {
            fail("expected + or -");
        }
        Rational coeff = 1;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::string num = read_uint();
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                std::string den = read_uint();
                if (den.empty()) fail("bad fraction");
                num += "/" + den;
            }
            coeff = Rational(num);
            coeff.canonicalize();
        }
        Monomial m;
        bool saw_factor = false;
        while (true) {
            skip_ws();
            if (pos >= s.size() || s[pos] != 't') break;
            ++pos;
            std::string v = read_uint();
            if (v.empty()) fail("missing variable index");
            const unsigned idx = static_cast<unsigned>(std::stoul(v));
            if (idx >= nvars) fail("variable index out of range");
            unsigned e = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                std::string ex = read_uint();
                if (ex.empty()) fail("missing exponent");
                e = static_cast<unsigned>(std::stoul(ex));
            }
            m.e[idx] = static_cast<std::uint16_t>(m.e[idx] + e);
            saw_factor = true;
        }
        if (!saw_factor && coeff == 1 && !(pos > 0 && std::isdigit(static_cast<unsigned char>(s[pos - 1]))))
            fail("empty term");
        out.add_term(m, sign * coeff);
        any = true;
        skip_ws();
        if (pos < s.size() && (s[pos] == ',' || s[pos] == '.')) ++pos;  // trailing punctuation
    }
    if (!any) fail("no terms");
    return out;
}

}  // namespace z4inv
