#pragma once

// Finite matrix groups over cyclotomic fields: closure, the first-row
// stabilizer K with representatives of K\G, and dimension series.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "z4inv/cycmatrix.hpp"

namespace z4inv {

class ClosureCapExceeded : public std::runtime_error {
public:
    explicit ClosureCapExceeded(std::size_t cap)
        : std::runtime_error("group closure exceeded cap of " + std::to_string(cap) + " elements"), cap_(cap) {}
    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

struct FiniteMatrixGroup {
    std::vector<CycMatrix> generators;
    std::vector<CycMatrix> elements;  // elements[0] is the identity

    std::size_t order() const { return elements.size(); }
    unsigned dimension() const { return generators.empty() ? 0 : generators.front().size(); }
    unsigned field_order() const { return generators.empty() ? 1 : generators.front().order(); }
};

inline constexpr std::size_t kDefaultClosureCap = 10000;

/// Breadth-first closure under right multiplication by the generators.
FiniteMatrixGroup closure(const std::vector<CycMatrix>& generators, std::size_t cap = kDefaultClosureCap);

struct CosetSystem {
    std::vector<CycMatrix> stabilizer;  // K: first row equal to (1, 0, ..., 0)
    std::vector<CycMatrix> reps;        // one element per right coset K sigma
    std::size_t group_order = 0;

    std::size_t kappa() const { return reps.size(); }
    unsigned dimension() const { return reps.empty() ? 0 : reps.front().size(); }
    unsigned field_order() const { return reps.empty() ? 1 : reps.front().order(); }
};

/// Representatives are the first element (in closure order) with each first row.
CosetSystem coset_system(const FiniteMatrixGroup& group);

/// Truncated power series with rational coefficients; index = degree.
struct PowerSeries {
    std::vector<Rational> coeffs;  // size = truncation + 1

    unsigned truncation() const { return static_cast<unsigned>(coeffs.size()) - 1; }
    const Rational& operator[](std::size_t k) const { return coeffs.at(k); }
    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

/// Integer polynomial in t as a product of factors raised to multiplicities.
struct FactoredPoly {
    struct Factor {
        std::vector<long> coeffs;  // low to high
        unsigned multiplicity = 1;
    };
    std::vector<Factor> factors;

    std::vector<Rational> expanded() const;
};

struct RationalFormula {
    FactoredPoly numerator;
    FactoredPoly denominator;
};

/// numerator / denominator expanded to the truncation; the denominator must not vanish at t = 0.
PowerSeries expand_formula(const RationalFormula& f, unsigned truncation);

/// (1/|G|) sum over sigma of 1/det(I - t sigma), truncated.  Throws if an
/// averaged coefficient is not rational.
PowerSeries molien_series(const FiniteMatrixGroup& group, unsigned truncation);

/// det(I - t sigma) as coefficients in t (constant term first).
std::vector<Cyclotomic> reversed_char_poly(const CycMatrix& sigma);

}  // namespace z4inv
