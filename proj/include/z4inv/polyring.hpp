#pragma once

// Sparse multivariate polynomials with exact coefficients.
//
// Terms are kept in graded lexicographic order, t0 > t1 > t2 > t3, highest
// monomial first.  Zero coefficients are never stored, so structural equality
// is mathematical equality.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "z4inv/cycmatrix.hpp"
#include "z4inv/cyclotomic.hpp"

namespace z4inv {

inline constexpr unsigned kMaxVars = 4;

struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    Monomial operator+(const Monomial& o) const {
        Monomial r;
        for (unsigned i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
        return r;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Strict "comes first" relation of the canonical order.
struct GrlexFirst {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const Cyclotomic& c) { return c.is_zero(); }

template <class C>
class MultiPoly {
public:
    using Terms = std::map<Monomial, C, GrlexFirst>;

    explicit MultiPoly(unsigned nvars = kMaxVars) : nvars_(nvars) {
        if (nvars == 0 || nvars > kMaxVars) throw std::invalid_argument("MultiPoly: unsupported variable count");
    }

    static MultiPoly constant(unsigned nvars, const C& c) {
        MultiPoly p(nvars);
        p.add_term(Monomial{}, c);
        return p;
    }
    static MultiPoly variable(unsigned nvars, unsigned i) {
        MultiPoly p(nvars);
        Monomial m;
        m.e[i] = 1;
        p.add_term(m, C(1L));
        return p;
    }

    unsigned nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const C& c) {
        if (coeff_is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    C coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0L) : it->second;
    }

    /// The common degree of all terms, or nullopt when inhomogeneous; zero is homogeneous of any degree.
    std::optional<unsigned> homogeneous_degree() const {
        if (terms_.empty()) return std::nullopt;
        const unsigned d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return std::nullopt;
        return d;
    }
    bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }

    MultiPoly& operator+=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
        return r;
    }

    MultiPoly scaled(const C& s) const {
        MultiPoly r(nvars_);
        if (coeff_is_zero(s)) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
        return r;
    }

    C evaluate(const std::vector<C>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluate: wrong point dimension");
        C acc(0L);
        for (const auto& [m, c] : terms_) {
            C t = c;
            for (unsigned i = 0; i < nvars_; ++i)
                for (unsigned k = 0; k < m.e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    unsigned nvars_;
    Terms terms_;

    void check(const MultiPoly& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("MultiPoly: variable count mismatch");
    }
};

using RatPoly = MultiPoly<Rational>;
using CycPoly = MultiPoly<Cyclotomic>;

template <class C>
MultiPoly<C> pow(MultiPoly<C> base, unsigned e) {
    MultiPoly<C> r = MultiPoly<C>::constant(base.nvars(), C(1L));
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

CycPoly to_cyclotomic(const RatPoly& p);
/// nullopt when any coefficient has a surviving non-constant part.
std::optional<RatPoly> to_rational(const CycPoly& p);

/// f(M t): every t_i replaced by the i-th entry of M t.
CycPoly substitute_linear(const CycPoly& f, const CycMatrix& m);
CycPoly substitute_linear(const RatPoly& f, const CycMatrix& m);
/// Apply one elementary substitution in place of variables.
CycPoly substitute_elementary(const CycPoly& f, const ElementaryOp& op);

// --- degree-k monomial bookkeeping ----------------------------------------

std::uint64_t binomial_u64(unsigned n, unsigned k);

/// Number of degree-d monomials in m variables, C(d+m-1, m-1).
std::uint64_t monomial_count(unsigned nvars, unsigned degree);

/// The degree-d monomials in m variables in canonical order, with O(m) ranking.
class MonomialIndex {
public:
    MonomialIndex(unsigned nvars, unsigned degree);

    unsigned nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::size_t rank(const Monomial& m) const;

private:
    unsigned nvars_;
    unsigned degree_;
    std::vector<Monomial> monomials_;
};

/// Rank of m among monomials of its own degree (graded lex, descending).
std::size_t monomial_rank(const Monomial& m, unsigned nvars);

/// Exponent vectors (e_1..e_s) with sum e_i * degrees[i] == k, in
/// lexicographically descending order of the vector.
std::vector<std::vector<unsigned>> degree_exponents(const std::vector<unsigned>& degrees, unsigned k);

/// One product per exponent vector of degree_exponents; powers are memoized.
template <class P, class Mul>
std::vector<P> degree_products(const std::vector<P>& gens, const std::vector<unsigned>& degrees, unsigned k,
                               const P& one, Mul mul) {
    std::vector<P> out;
    std::map<std::pair<std::size_t, unsigned>, P> powers;
    auto power = [&](std::size_t g, unsigned e) -> const P& {
        unsigned have = 1;
        while (have < e && powers.count({g, have + 1})) ++have;
        if (!powers.count({g, 1})) powers.emplace(std::make_pair(g, 1u), gens[g]);
        for (; have < e; ++have) powers.emplace(std::make_pair(g, have + 1), mul(powers.at({g, have}), gens[g]));
        return powers.at({g, e});
    };
    for (const auto& ev : degree_exponents(degrees, k)) {
        std::optional<P> acc;
        for (std::size_t g = 0; g < ev.size(); ++g) {
            if (ev[g] == 0) continue;
            const P& pw = power(g, ev[g]);
            acc = acc ? mul(*acc, pw) : pw;
        }
        out.push_back(acc ? std::move(*acc) : one);
    }
    return out;
}

// --- text and JSON forms --------------------------------------------------

/// Text form: "t0^8 + 4 t0^3 t1^4 t2 + ..."; "0" for the zero polynomial.
std::string to_text(const RatPoly& p);
std::string to_text(const CycPoly& p);
/// Parses the text form (also accepts LaTeX-ish "t_{0}^{8}" spelling).
RatPoly parse_poly(const std::string& text, unsigned nvars);

}  // namespace z4inv
