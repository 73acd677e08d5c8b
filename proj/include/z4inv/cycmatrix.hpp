#pragma once

#include <string>
#include <vector>

#include "z4inv/cyclotomic.hpp"

namespace z4inv {

/// Square matrix over Q(zeta_n); every entry is kept at the common order n.
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(unsigned size, unsigned order);  // zero matrix
    CycMatrix(unsigned size, unsigned order, std::vector<Cyclotomic> entries);

    static CycMatrix identity(unsigned size, unsigned order);
    static CycMatrix diagonal(unsigned order, const std::vector<Cyclotomic>& diag);

    unsigned size() const { return size_; }
    unsigned order() const { return order_; }

    const Cyclotomic& operator()(unsigned r, unsigned c) const { return entries_[r * size_ + c]; }
    void set(unsigned r, unsigned c, const Cyclotomic& v);

    std::vector<Cyclotomic> row(unsigned r) const;

    CycMatrix operator*(const CycMatrix& rhs) const;
    CycMatrix scaled(const Cyclotomic& s) const;
    friend bool operator==(const CycMatrix& a, const CycMatrix& b) { return a.entries_ == b.entries_; }

    /// Row-major concatenation of entry keys; equal matrices have equal keys.
    std::string key() const;
    std::string to_string() const;

private:
    unsigned size_ = 0;
    unsigned order_ = 1;
    std::vector<Cyclotomic> entries_;
};

/// One factor of an elementary factorization, read as a substitution of variables.
struct ElementaryOp {
    enum class Kind { Swap, Scale, Shear };
    Kind kind;
    unsigned i = 0;
    unsigned j = 0;
    Cyclotomic c;  // Scale: t_i -> c t_i;  Shear: t_i -> t_i + c t_j
};

/// Factors M = E_1 E_2 ... E_r into elementary matrices (Gauss-Jordan).
/// Then f(M t) is obtained by substituting E_1, then E_2, ... in order.
/// Throws std::domain_error for singular M.
std::vector<ElementaryOp> elementary_factors(const CycMatrix& m);

}  // namespace z4inv
