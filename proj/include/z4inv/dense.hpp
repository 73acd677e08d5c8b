#pragma once

// Dense homogeneous forms over F_p.  Coefficient i belongs to the i-th
// monomial of MonomialIndex(nvars, degree); values are Montgomery residues.

#include <map>
#include <memory>
#include <vector>

#include "z4inv/modp.hpp"
#include "z4inv/polyring.hpp"

namespace z4inv {

/// Per-(nvars, degree) tables shared by all forms of that shape.
class DenseShape {
public:
    static std::shared_ptr<const DenseShape> get(unsigned nvars, unsigned degree);

    unsigned nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }
    std::size_t size() const { return index_.size(); }
    const MonomialIndex& index() const { return index_; }
    /// tails[i * (nvars-1) + v] = degree - (e_0 + ... + e_v) for monomial i.
    const std::vector<std::uint16_t>& tails() const { return tails_; }

    DenseShape(unsigned nvars, unsigned degree);

private:
    unsigned nvars_;
    unsigned degree_;
    MonomialIndex index_;
    std::vector<std::uint16_t> tails_;
};

struct DenseForm {
    std::shared_ptr<const DenseShape> shape;
    std::vector<u64> coeffs;

    unsigned nvars() const { return shape->nvars(); }
    unsigned degree() const { return shape->degree(); }
    bool is_zero() const;
    friend bool operator==(const DenseForm& a, const DenseForm& b) {
        return a.nvars() == b.nvars() && a.degree() == b.degree() && a.coeffs == b.coeffs;
    }
};

DenseForm dense_zero(unsigned nvars, unsigned degree);
/// Requires f homogeneous of the stated degree (the zero polynomial is accepted).
DenseForm to_dense(const RatPoly& f, unsigned degree, const PrimeField& F);
DenseForm to_dense(const CycPoly& f, unsigned degree, const PrimeField& F);

DenseForm multiply(const DenseForm& a, const DenseForm& b, const PrimeField& F);

/// op.c is mapped into F_p through F.from_cyclotomic.
DenseForm substitute_elementary(const DenseForm& f, const ElementaryOp& op, const PrimeField& F);
DenseForm substitute_linear(const DenseForm& f, const CycMatrix& m, const PrimeField& F);

/// Products of generator forms indexed by exponent vectors, memoized for a
/// sweep over increasing degrees.  A product is built from its parent with
/// one fewer factor of the lowest-degree generator it contains.
class DenseProductCache {
public:
    /// Generators must be sorted by nondecreasing degree.
    DenseProductCache(const PrimeField& F, std::vector<DenseForm> generators);

    const DenseForm& product(const std::vector<unsigned>& exponents);
    const std::vector<DenseForm>& generators() const { return gens_; }
    std::vector<unsigned> degrees() const;

private:
    const PrimeField* F_;
    std::vector<DenseForm> gens_;
    std::map<std::vector<unsigned>, DenseForm> cache_;
};

/// Value at a point (coordinates in Montgomery form).
u64 evaluate(const DenseForm& f, const std::vector<u64>& point, const PrimeField& F);

}  // namespace z4inv
