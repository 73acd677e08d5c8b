#include "z4inv/modp.hpp"

#include <random>
#include <stdexcept>

namespace z4inv {

namespace {

u64 mulmod_plain(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_plain(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_plain(r, a, m);
        a = mulmod_plain(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> f;
    for (unsigned q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            f.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) f.push_back(n);
    return f;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all 64-bit n.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod_plain(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_plain(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> pick_primes(unsigned count, u64 seed) {
    std::mt19937_64 rng(seed);
    const u64 lo = 1ULL << 61;
    const u64 span = (1ULL << 62) - lo;
    std::vector<u64> out;
    while (out.size() < count) {
        u64 c = lo + rng() % span;
        c = c - (c % kRootModulus) + 1;
        if (c < lo) c += kRootModulus;
        while (!is_prime_u64(c)) c += kRootModulus;
        if (c >= (1ULL << 62)) continue;
        bool dup = false;
        for (u64 q : out) dup |= q == c;
        if (!dup) out.push_back(c);
    }
    return out;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p < 3 || p >= (1ULL << 62) || (p & 1) == 0) throw std::invalid_argument("PrimeField: need odd p < 2^62");
    // Newton iteration for p^{-1} mod 2^64.
    u64 inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    pinv_neg_ = ~inv + 1;
    one_ = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    r2_ = mulmod_plain(one_, one_, p);
    roots_.assign(kRootModulus + 1, 0);
    if ((p - 1) % kRootModulus == 0)
        for (unsigned n = 1; n <= kRootModulus; ++n)
            if (kRootModulus % n == 0) roots_[n] = find_root(n);
}

u64 PrimeField::from_i64(long long v) const {
    if (v >= 0) return from_u64(static_cast<u64>(v));
    return neg(from_u64(static_cast<u64>(-(v + 1)) + 1));
}

u64 PrimeField::pow(u64 a, u64 e) const {
    u64 r = one_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 PrimeField::inv(u64 a) const {
    if (a == 0) throw std::domain_error("modular inverse of zero");
    return pow(a, p_ - 2);
}

u64 PrimeField::from_integer(const Integer& z) const {
    // mpz_fdiv_ui takes an unsigned long, which is 64-bit on the supported targets.
    static_assert(sizeof(unsigned long) == 8);
    u64 r = mpz_fdiv_ui(z.get_mpz_t(), p_);
    return from_u64(r);
}

u64 PrimeField::from_rational(const Rational& q) const {
    u64 den = from_integer(q.get_den());
    if (den == 0) throw std::domain_error("prime divides a denominator");
    return mul(from_integer(q.get_num()), inv(den));
}

u64 PrimeField::root_of_unity(unsigned n) const {
    if (n < roots_.size() && roots_[n] != 0) return roots_[n];
    return find_root(n);
}

u64 PrimeField::find_root(unsigned n) const {
    if ((p_ - 1) % n != 0) throw std::invalid_argument("no primitive root of unity of this order mod p");
    const auto factors = prime_factors(n);
    // Deterministic search so every caller sees the same embedding.
    for (u64 g = 2;; ++g) {
        u64 w = pow(from_u64(g), (p_ - 1) / n);
        bool primitive = true;
        for (unsigned q : factors)
            if (pow(w, n / q) == one_) primitive = false;
        if (primitive) return w;
    }
}

u64 PrimeField::from_cyclotomic(const Cyclotomic& x) const {
    const auto& c = x.coeffs();
    if (x.order() == 1) return from_rational(c[0]);
    const u64 w = root_of_unity(x.order());
    u64 acc = 0, wp = one_;
    for (const auto& ci : c) {
        if (ci != 0) acc = add(acc, mul(from_rational(ci), wp));
        wp = mul(wp, w);
    }
    return acc;
}

}  // namespace z4inv
