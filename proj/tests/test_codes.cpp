#include <doctest.h>

#include <set>

#include <map>
#include <random>

#include "z4inv/codes.hpp"

using namespace z4inv;

namespace {

// Every codeword by brute force over all Z4 combinations of the original rows,
// deduplicated.  Only for tiny codes.
RatPoly brute_cwe(const Z4Mat& m) {
    std::set<Z4Row> words;
    const std::size_t r = m.rows.size();
    std::vector<unsigned> c(r, 0);
    for (;;) {
        Z4Row w(m.length, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < m.length; ++j) w[j] = static_cast<std::uint8_t>((w[j] + c[i] * m.rows[i][j]) % 4);
        words.insert(w);
        std::size_t i = 0;
        while (i < r && ++c[i] == 4) c[i++] = 0;
        if (i == r) break;
    }
    RatPoly p(4);
    for (const auto& w : words) {
        Monomial mono;
        for (auto x : w) ++mono.e[x];
        p.add_term(mono, Rational(1));
    }
    return p;
}

Rational at_ones(const RatPoly& p) { return p.evaluate(std::vector<Rational>(4, Rational(1))); }

}  // namespace

TEST_SUITE("codes") {
    TEST_CASE("parse_genmat formats") {
        const Z4Mat a = parse_genmat("1 0 2 3\n0 1 1 1\n");
        CHECK(a.length == 4);
        CHECK(a.rows.size() == 2);
        CHECK(a.rows[0] == Z4Row{1, 0, 2, 3});
        CHECK(parse_genmat("1023\n0111\n") == a);
        CHECK(parse_genmat("# comment\n1 & 0 & 2 & 3 \\\\\n\n0 & 1 & 1 & 1\n") == a);
        CHECK(parse_genmat(format_genmat(a)) == a);
        CHECK(parse_genmat(format_genmat(a, true)) == a);
        CHECK_THROWS(parse_genmat("1 0 2\n0 1\n"));
        CHECK_THROWS(parse_genmat("1 0 4\n"));
        CHECK_THROWS(parse_genmat("1 x 2\n"));
        CHECK_THROWS(parse_genmat(""));
    }

    TEST_CASE("standard form sizes") {
        const Z4Code o8 = standard_form(builtin_matrix("o8"));
        CHECK(o8.k1() == 4);
        CHECK(o8.k2() == 0);
        CHECK(o8.size() == 256);
        const Z4Code k8 = standard_form(builtin_matrix("k8"));
        CHECK(k8.log2_size() == 8);
        // redundant rows do not change the code
        Z4Mat m = builtin_matrix("o8");
        Z4Row sum(8, 0);
        for (const auto& r : m.rows)
            for (std::size_t j = 0; j < 8; ++j) sum[j] = static_cast<std::uint8_t>((sum[j] + 2 * r[j]) % 4);
        m.rows.push_back(sum);
        const Z4Code o8r = standard_form(m);
        CHECK(o8r.log2_size() == 8);
        CHECK(complete_weight_enumerator(o8r) == complete_weight_enumerator(o8));
    }

    TEST_CASE("self-duality and Type II") {
        for (const char* n : {"o8", "k8", "k16", "q24a", "q24b", "g24"}) {
            CAPTURE(n);
            const Z4Code c = standard_form(builtin_matrix(n));
            CHECK(is_self_orthogonal(c));
            CHECK(is_self_dual(c));
            CHECK(is_type_ii(c));
        }
        const Z4Code z = standard_form(builtin_matrix("zero8"));
        CHECK(is_self_orthogonal(z));
        CHECK(!is_self_dual(z));
        const Z4Code q = standard_form(builtin_matrix("q24a"));
        CHECK(q.k1() == 6);
        CHECK(q.k2() == 12);
        CHECK(q.size() == Integer(1) << 24);
        // self-dual but not Type II: Z4 with generator (2) ... use a length-1 code
        const Z4Code two = standard_form(parse_genmat("2\n"));
        CHECK(is_self_dual(two));
        CHECK(!is_type_ii(two));
    }

    TEST_CASE("norms of random codewords of q24a") {
        const Z4Code c = standard_form(builtin_matrix("q24a"));
        std::mt19937_64 rng(77);
        for (int i = 0; i < 100000; ++i) {
            const Z4Row w = random_codeword(c, rng);
            REQUIRE(norm8(w) == 0);
            if (i % 1000 == 0)
                for (const auto& g : c.original.rows) REQUIRE(inner(w, g) == 0);
        }
    }

    TEST_CASE("CWE against brute force") {
        for (const char* text : {"1 1 1 1\n0 2 0 2\n", "1 2 3 0 1\n", "2 2 0 0\n0 0 2 2\n1 3 1 3\n", "1 0 0\n0 1 0\n0 0 1\n"}) {
            const Z4Mat m = parse_genmat(text);
            CHECK(complete_weight_enumerator(standard_form(m)) == brute_cwe(m));
        }
        CHECK(complete_weight_enumerator(standard_form(builtin_matrix("o8"))) == brute_cwe(builtin_matrix("o8")));
    }

    TEST_CASE("CWE golden fixtures") {
        CHECK(complete_weight_enumerator(standard_form(builtin_matrix("o8"))) == builtin_fixture("o8"));
        CHECK(complete_weight_enumerator(standard_form(builtin_matrix("k8"))) == builtin_fixture("k8"));
        CHECK(to_text(complete_weight_enumerator(standard_form(builtin_matrix("zero8")))) == "t0^8");
        CHECK(at_ones(builtin_fixture("p8a")) == 256);
        CHECK(at_ones(builtin_fixture("p8b")) == 256);
        CHECK(at_ones(builtin_fixture("p16a")) == 65536);
    }

    TEST_CASE("direct sums multiply enumerators") {
        const Z4Mat o8 = builtin_matrix("o8"), k8 = builtin_matrix("k8"), z8 = builtin_matrix("zero8");
        auto cwe = [](const Z4Mat& m) { return complete_weight_enumerator(standard_form(m)); };
        CHECK(cwe(direct_sum(o8, k8)) == cwe(o8) * cwe(k8));
        CHECK(cwe(direct_sum(k8, o8)) == cwe(o8) * cwe(k8));
        CHECK(cwe(direct_sum(z8, o8)) == cwe(z8) * cwe(o8));
        const Z4Mat small = parse_genmat("1 1 1 1\n0 2 0 2\n");
        CHECK(cwe(direct_sum(small, direct_sum(small, small))) == pow(cwe(small), 3));
        const Z4Code s = standard_form(direct_sum(o8, k8));
        CHECK(is_type_ii(s));
        CHECK(s.length == 16);
    }

    TEST_CASE("parallel enumeration equals serial") {
        const Z4Code c = standard_form(builtin_matrix("k16"));
        CweOptions serial, parallel;
        parallel.workers = 4;
        const RatPoly a = complete_weight_enumerator(c, serial);
        CHECK(a == complete_weight_enumerator(c, parallel));
        CHECK(at_ones(a) == Rational(Integer(1) << 16));
        parallel.workers = 7;
        const Z4Code q = standard_form(builtin_matrix("q24a"));
        CHECK(complete_weight_enumerator(q, serial) == complete_weight_enumerator(q, parallel));
    }

    TEST_CASE("enumeration budget") {
        CweOptions o;
        o.budget = 1000;
        try {
            complete_weight_enumerator(standard_form(builtin_matrix("q24a")), o);
            FAIL("expected BudgetExceeded");
        } catch (const BudgetExceeded& e) {
            CHECK(e.log2_required() == 24);
        }
    }

    TEST_CASE("bundled data") {
        CHECK(builtin_codes().size() >= 8);
        CHECK(builtin_fixtures().size() == 5);
        CHECK(length16_candidates() == std::vector<std::string>{"k16"});
        CHECK(builtin_matrix("q32").length == 32);
        CHECK_THROWS(builtin_matrix("nope"));
    }
}
