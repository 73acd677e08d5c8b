#pragma once

// Exact arithmetic in the cyclotomic fields Q(zeta_n).
//
// An element is stored as a rational coefficient vector over the power basis
// 1, z, ..., z^(d-1), d = deg Phi_n, always fully reduced modulo Phi_n, so
// coefficient equality is field equality.  Order 1 is the rational field
// (Phi_1 = x - 1) and promotes into any other order on contact.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace z4inv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Phi_n together with the tables used to reduce products.
struct CyclotomicModulus {
    unsigned order = 1;
    unsigned degree = 1;
    std::vector<Integer> phi;                     // monic, low to high
    std::vector<std::vector<Integer>> power_mod;  // x^j mod Phi_n, j < max(n, 2*degree)
};

/// Cached per order; the returned reference stays valid for the process lifetime.
const CyclotomicModulus& cyclotomic_modulus(unsigned n);

/// Integer coefficients of Phi_n, low to high.
std::vector<Integer> cyclotomic_polynomial(unsigned n);

class Cyclotomic {
public:
    Cyclotomic();  // rational zero
    Cyclotomic(long v);
    Cyclotomic(const Rational& r);
    Cyclotomic(unsigned order, std::vector<Rational> coeffs);  // reduces modulo Phi_n

    /// zeta_n^power in canonical form.
    static Cyclotomic root(unsigned n, long power);

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    /// The rational value when every non-constant coefficient vanishes.
    std::optional<Rational> to_rational() const;

    /// Same value viewed in Q(zeta_n); requires order() == 1 or order() == n.
    Cyclotomic promoted(unsigned n) const;

    Cyclotomic inverse() const;

    Cyclotomic& operator+=(const Cyclotomic& rhs);
    Cyclotomic& operator-=(const Cyclotomic& rhs);
    Cyclotomic& operator*=(const Cyclotomic& rhs);
    Cyclotomic& operator/=(const Cyclotomic& rhs) { return *this *= rhs.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    Cyclotomic operator-() const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    /// "c0 + c1*z + c2*z^2" with p/q coefficients; zero terms omitted.
    std::string to_string() const;
    /// Canonical serialization used for hashing matrices.
    std::string key() const;

private:
    unsigned order_ = 1;
    std::vector<Rational> coeffs_;

    void reduce_from(std::vector<Rational>& wide);
    static unsigned common_order(const Cyclotomic& a, const Cyclotomic& b);
};

Cyclotomic pow(Cyclotomic base, unsigned long e);

}  // namespace z4inv
