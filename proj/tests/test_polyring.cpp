#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "z4inv/groups.hpp"
#include "z4inv/polyring.hpp"
#include "z4inv/rank.hpp"

using namespace z4inv;

namespace {

RatPoly t(unsigned i) { return RatPoly::variable(4, i); }

RatPoly random_form(unsigned degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    RatPoly p(4);
    const MonomialIndex idx(4, degree);
    for (const auto& m : idx.monomials())
        if (rng() % 3 == 0) p.add_term(m, Rational(coef(rng)));
    return p;
}

// Entries 0 or a power of zeta_8, like the group generators; random rational
// entries make the exact elimination needlessly slow.
CycMatrix random_matrix(std::mt19937_64& rng) {
    std::vector<Cyclotomic> e;
    for (int i = 0; i < 16; ++i)
        e.push_back(rng() % 3 == 0 ? Cyclotomic(0L).promoted(8) : Cyclotomic::root(8, static_cast<long>(rng() % 8)));
    return CycMatrix(4, 8, e);
}

bool invertible(const CycMatrix& m) {
    try {
        elementary_factors(m);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

}  // namespace

TEST_SUITE("polyring") {
    TEST_CASE("text round trip") {
        const RatPoly p = parse_poly("t0^8 + 14 t0^4 t2^4 + 1/2 t1^2 t3^6 - 3 t0 t1 t2 t3^5", 4);
        CHECK(p.size() == 4);
        CHECK(p.homogeneous_degree() == 8u);
        CHECK(parse_poly(to_text(p), 4) == p);
        CHECK(to_text(RatPoly(4)) == "0");
        CHECK(parse_poly("t_{0}^{2} + 2 t_{1}^{2}", 4) == t(0) * t(0) + t(1) * t(1).scaled(2));
        CHECK_THROWS(parse_poly("t0^2 + ", 4));
        CHECK_THROWS(parse_poly("3 t0^x", 4));
        CHECK(parse_poly("2*t0*t1", 4) == (t(0) * t(1)).scaled(2));
        CHECK_THROWS(parse_poly("t7", 4));
    }

    TEST_CASE("canonical order: highest grlex first") {
        const RatPoly p = t(3) * t(3) + t(0) * t(1) + t(0) * t(0);
        auto it = p.terms().begin();
        CHECK(it->first.e[0] == 2);
        ++it;
        CHECK(it->first.e[0] == 1);
    }

    TEST_CASE("arithmetic") {
        const RatPoly a = t(0) + t(1), b = t(0) - t(1);
        CHECK(a * b == t(0) * t(0) - t(1) * t(1));
        CHECK(pow(a, 3) == a * a * a);
        CHECK((a - a).is_zero());
        CHECK(a.evaluate({Rational(2), Rational(3), Rational(0), Rational(0)}) == Rational(5));
        CHECK_THROWS(RatPoly(2) + RatPoly(3));
    }

    TEST_CASE("monomial counts") {
        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned d = 0; d <= 12; ++d) {
                // brute force count
                std::uint64_t brute = 0;
                std::vector<unsigned> e(n, 0);
                std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
                    if (i + 1 == n) {
                        ++brute;
                        return;
                    }
                    for (unsigned x = 0; x <= left; ++x) rec(i + 1, left - x);
                };
                rec(0, d);
                REQUIRE(monomial_count(n, d) == brute);
                REQUIRE(MonomialIndex(n, d).size() == brute);
            }
        const MonomialIndex idx(4, 6);
        for (std::size_t i = 0; i < idx.size(); ++i) REQUIRE(idx.rank(idx.monomials()[i]) == i);
    }

    TEST_CASE("degree_products enumerates every exponent vector") {
        const std::vector<unsigned> degrees{8, 8, 16, 24};
        for (unsigned k : {8u, 16u, 24u, 32u, 48u}) {
            std::size_t brute = 0;
            for (unsigned a = 0; 8 * a <= k; ++a)
                for (unsigned b = 0; 8 * (a + b) <= k; ++b)
                    for (unsigned c = 0; 8 * (a + b) + 16 * c <= k; ++c)
                        if ((k - 8 * (a + b) - 16 * c) % 24 == 0) ++brute;
            CHECK(degree_exponents(degrees, k).size() == brute);
        }
        const std::vector<RatPoly> gens{t(0), t(1) * t(1)};
        const auto prods = degree_products(gens, {1, 2}, 4, RatPoly::constant(4, Rational(1)),
                                           [](const RatPoly& x, const RatPoly& y) { return x * y; });
        REQUIRE(prods.size() == 3);
        CHECK(prods[0] == pow(t(0), 4));
        CHECK(prods[2] == pow(t(1), 4));
    }

    TEST_CASE("substitution is compatible with matrix products") {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 12; ++i) {
            const RatPoly f = random_form(3, rng);
            const CycMatrix A = random_matrix(rng), B = random_matrix(rng);
            if (!invertible(A) || !invertible(B)) continue;
            // f(A(Bt)) computed two ways
            REQUIRE(substitute_linear(substitute_linear(f, A), B) == substitute_linear(f, A * B));
        }
        // and for the actual group generators
        const auto g = named_generators("G8");
        const RatPoly f = pow(t(0), 4) + t(1) * t(2) * t(3) * t(0);
        CHECK(substitute_linear(substitute_linear(f, g[0]), g[1]) == substitute_linear(f, g[0] * g[1]));
    }

    TEST_CASE("elementary factorization reproduces the matrix") {
        std::mt19937_64 rng(5);
        const CycMatrix m = random_matrix(rng);
        const auto ops = elementary_factors(m);
        CycPoly f = to_cyclotomic(pow(t(0) + t(1).scaled(2) + t(2) + t(3), 2));
        CycPoly g = f;
        for (const auto& op : ops) g = substitute_elementary(g, op);
        CHECK(g == substitute_linear(f, m));
        CHECK_THROWS_AS(elementary_factors(CycMatrix(2, 8)), std::domain_error);
    }

    TEST_CASE("dense substitution agrees with sparse") {
        std::mt19937_64 rng(8);
        const PrimeField F(pick_primes(1, 1).front());
        for (int i = 0; i < 6; ++i) {
            const RatPoly f = random_form(5, rng);
            const CycMatrix m = random_matrix(rng);
            if (!invertible(m)) continue;
            REQUIRE(substitute_linear(to_dense(f, 5, F), m, F) == to_dense(substitute_linear(f, m), 5, F));
        }
    }
}

TEST_SUITE("rank") {
    TEST_CASE("span dimension examples") {
        const RatPoly a = t(0) * t(0), b = t(1) * t(1), c = t(0) * t(1);
        const RatPoly s = pow(t(0) + t(1), 2);
        CHECK(span_dimension({a, b, s}).dimension == 3);
        CHECK(span_dimension({a, b, c, s}).dimension == 3);
        CHECK(span_dimension({a, a.scaled(Rational(3, 7))}).dimension == 1);
        CHECK(span_dimension({RatPoly(4)}).dimension == 0);
        CHECK(in_span(s, {a, b, c}));
        CHECK(!in_span(s, {a, b}));
        const auto r = span_dimension({a, b, s});
        CHECK(r.certificate.method == "fraction-free+primes");
        CHECK(r.certificate.exact_rank == 3u);
    }

    TEST_CASE("bareiss rank") {
        CHECK(bareiss_rank({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}) == 2);
        CHECK(bareiss_rank({{0, 0}, {0, 0}}) == 0);
        CHECK(bareiss_rank({{2, 1}, {1, 2}}) == 2);
    }

    TEST_CASE("modular rank never exceeds the rational rank") {
        std::mt19937_64 rng(31);
        const PrimeField F(pick_primes(1, 2).front());
        for (int trial = 0; trial < 40; ++trial) {
            // rows built as combinations of a few base forms, some near p
            std::vector<RatPoly> base;
            for (int i = 0; i < 3; ++i) base.push_back(random_form(3, rng));
            std::vector<RatPoly> rows;
            std::uniform_int_distribution<int> c(-4, 4);
            for (int i = 0; i < 6; ++i) {
                RatPoly r(4);
                for (const auto& b : base) r += b.scaled(Rational(c(rng)));
                rows.push_back(r);
            }
            std::vector<DenseForm> dense;
            std::vector<std::vector<Integer>> ints;
            for (const auto& r : rows) {
                dense.push_back(to_dense(r, 3, F));
                std::vector<Integer> v;
                const MonomialIndex idx(4, 3);
                for (const auto& m : idx.monomials()) v.push_back(r.coefficient(m).get_num());
                ints.push_back(v);
            }
            const auto exact = bareiss_rank(ints);
            REQUIRE(rank_mod_p(dense, F) <= exact);
            REQUIRE(exact <= 3);
        }
        // a matrix singular only mod p
        const Integer p(static_cast<unsigned long>(F.prime()));
        std::vector<Integer> row1{p, 0}, row2{0, 1};
        CHECK(bareiss_rank({row1, row2}) == 2);
        RatPoly f(4);
        f.add_term(Monomial{{1, 0, 0, 0}}, Rational(p));
        CHECK(rank_mod_p({to_dense(f, 1, F)}, F) == 0);
    }
}
