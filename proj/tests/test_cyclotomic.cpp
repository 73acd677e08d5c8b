#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "z4inv/cyclotomic.hpp"
#include "z4inv/modp.hpp"

using namespace z4inv;

TEST_SUITE("cyclotomic") {
    TEST_CASE("cyclotomic polynomials") {
        CHECK(cyclotomic_polynomial(8) == std::vector<Integer>{1, 0, 0, 0, 1});
        CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});
        CHECK(cyclotomic_polynomial(20) == std::vector<Integer>{1, 0, -1, 0, 1, 0, -1, 0, 1});
        CHECK(cyclotomic_modulus(5).degree == 4);
    }

    TEST_CASE("roots of unity") {
        const auto z = Cyclotomic::root(8, 1);
        CHECK(pow(z, 8).is_one());
        CHECK(pow(z, 4) == Cyclotomic(-1L));
        CHECK(Cyclotomic::root(8, -1) * z == Cyclotomic(1L));
        CHECK(Cyclotomic::root(8, 11) == Cyclotomic::root(8, 3));
    }

    TEST_CASE("square roots used by the named groups") {
        const auto z12 = [](long p) { return Cyclotomic::root(12, p); };
        const Cyclotomic s3 = z12(1) + z12(11);
        CHECK((s3 * s3).to_rational() == Rational(3));
        CHECK((z12(3) * z12(3)).to_rational() == Rational(-1));
        const auto z5 = [](long p) { return Cyclotomic::root(20, 4 * p); };
        const Cyclotomic s5 = Cyclotomic(1L) + Cyclotomic(2L) * (z5(1) + z5(4));
        CHECK((s5 * s5).to_rational() == Rational(5));
        // 1 + z5 + ... + z5^4 = 0
        CHECK((Cyclotomic(1L) + z5(1) + z5(2) + z5(3) + z5(4)).is_zero());
    }

    TEST_CASE("rational promotion") {
        const Cyclotomic half(Rational(1, 2));
        CHECK(half.order() == 1);
        const auto z = Cyclotomic::root(8, 2);
        CHECK((half * z + half * z).promoted(8) == z);
        CHECK(!z.to_rational());
        CHECK((z * z).to_rational() == Rational(-1));
    }

    TEST_CASE("field axioms on random elements") {
        std::mt19937_64 rng(12345);
        const unsigned orders[] = {8, 12, 20};
        for (int i = 0; i < 1000; ++i) {
            const unsigned n = orders[i % 3];
            const auto a = testing::random_element(n, rng);
            const auto b = testing::random_element(n, rng);
            const auto c = testing::random_element(n, rng);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE((a - a).is_zero());
            REQUIRE(a + (-a) == Cyclotomic(0L).promoted(n));
            const auto u = testing::random_nonzero(n, rng);
            REQUIRE((u * u.inverse()).is_one());
            REQUIRE(u.inverse().inverse() == u);
            REQUIRE((a / u) * u == a);
        }
    }

    TEST_CASE("inverse of zero throws") {
        CHECK_THROWS(Cyclotomic(0L).inverse());
    }

    TEST_CASE("reduction mod p is a ring homomorphism") {
        std::mt19937_64 rng(99);
        for (u64 p : pick_primes(2, 3)) {
            CHECK(p % kRootModulus == 1);
            CHECK(p >= (u64(1) << 61));
            CHECK(p < (u64(1) << 62));
            CHECK(is_prime_u64(p));
            PrimeField F(p);
            for (int i = 0; i < 200; ++i) {
                const unsigned n = i % 2 ? 8 : 20;
                auto a = testing::random_element(n, rng), b = testing::random_element(n, rng);
                REQUIRE(F.from_cyclotomic(a * b) == F.mul(F.from_cyclotomic(a), F.from_cyclotomic(b)));
                REQUIRE(F.from_cyclotomic(a + b) == F.add(F.from_cyclotomic(a), F.from_cyclotomic(b)));
            }
            CHECK(F.pow(F.root_of_unity(8), 4) == F.from_i64(-1));
        }
    }

    TEST_CASE("prime picks are deterministic and distinct") {
        const auto a = pick_primes(3, 7), b = pick_primes(3, 7);
        CHECK(a == b);
        CHECK(a[0] != a[1]);
        CHECK(a[1] != a[2]);
    }
}
