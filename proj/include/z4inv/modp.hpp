#pragma once

// Prime fields F_p for 2^61 <= p < 2^62 in Montgomery form, and the ring
// homomorphism Q(zeta_n) -> F_p that sends zeta_n to a fixed primitive n-th
// root of unity (requires n | p - 1).

#include <cstdint>
#include <vector>

#include "z4inv/cyclotomic.hpp"

namespace z4inv {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Every prime drawn by the library is congruent to 1 modulo this, so the
/// 8th, 12th, 20th (and 3rd, 5th) roots of unity all exist.
inline constexpr u64 kRootModulus = 120;

bool is_prime_u64(u64 n);

/// Deterministic sequence of distinct primes p = 1 (mod kRootModulus) in [2^61, 2^62).
std::vector<u64> pick_primes(unsigned count, u64 seed);

class PrimeField {
public:
    explicit PrimeField(u64 p);

    u64 prime() const { return p_; }

    // Values below are Montgomery representatives unless the name says otherwise.
    u64 from_u64(u64 v) const { return mul(v % p_, r2_); }
    u64 from_i64(long long v) const;
    u64 to_u64(u64 a) const { return redc(a); }
    u64 zero() const { return 0; }
    u64 one() const { return one_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a ? p_ - a : 0; }
    u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;  // throws on zero

    u64 from_integer(const Integer& z) const;
    u64 from_rational(const Rational& q) const;  // throws if p divides the denominator

    /// Primitive n-th root of unity (Montgomery form); n must divide p - 1.
    u64 root_of_unity(unsigned n) const;
    /// Image of x under zeta_n -> root_of_unity(n), n = x.order().
    u64 from_cyclotomic(const Cyclotomic& x) const;

private:
    u64 find_root(unsigned n) const;

    u64 p_;
    u64 pinv_neg_;  // -p^{-1} mod 2^64
    u64 r2_;        // 2^128 mod p
    u64 one_;       // 2^64 mod p
    std::vector<u64> roots_;  // roots_[n] for n | kRootModulus, else 0

    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * pinv_neg_;
        u128 s = t + static_cast<u128>(m) * p_;
        u64 r = static_cast<u64>(s >> 64);
        return r >= p_ ? r - p_ : r;
    }
};

}  // namespace z4inv
