#include "z4inv/cycmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace z4inv {

CycMatrix::CycMatrix(unsigned size, unsigned order)
    : size_(size), order_(order), entries_(size * size, Cyclotomic(0L).promoted(order)) {}

CycMatrix::CycMatrix(unsigned size, unsigned order, std::vector<Cyclotomic> entries)
    : size_(size), order_(order), entries_(std::move(entries)) {
    if (entries_.size() != size_ * size_) throw std::invalid_argument("CycMatrix: wrong entry count");
    for (auto& e : entries_) e = e.promoted(order_);
}

CycMatrix CycMatrix::identity(unsigned size, unsigned order) {
    CycMatrix m(size, order);
    for (unsigned i = 0; i < size; ++i) m.set(i, i, Cyclotomic(1L));
    return m;
}

CycMatrix CycMatrix::diagonal(unsigned order, const std::vector<Cyclotomic>& diag) {
    const auto n = static_cast<unsigned>(diag.size());
    CycMatrix m(n, order);
    for (unsigned i = 0; i < n; ++i) m.set(i, i, diag[i]);
    return m;
}

void CycMatrix::set(unsigned r, unsigned c, const Cyclotomic& v) { entries_[r * size_ + c] = v.promoted(order_); }

std::vector<Cyclotomic> CycMatrix::row(unsigned r) const {
    return {entries_.begin() + r * size_, entries_.begin() + (r + 1) * size_};
}

CycMatrix CycMatrix::operator*(const CycMatrix& rhs) const {
    if (size_ != rhs.size_) throw std::invalid_argument("CycMatrix: size mismatch");
    if (order_ != rhs.order_) throw std::invalid_argument("CycMatrix: order mismatch");
    CycMatrix out(size_, order_);
    for (unsigned r = 0; r < size_; ++r)
        for (unsigned c = 0; c < size_; ++c) {
            Cyclotomic acc = Cyclotomic(0L).promoted(order_);
            for (unsigned k = 0; k < size_; ++k) {
                const auto& a = (*this)(r, k);
                const auto& b = rhs(k, c);
                if (!a.is_zero() && !b.is_zero()) acc += a * b;
            }
            out.entries_[r * size_ + c] = std::move(acc);
        }
    return out;
}

CycMatrix CycMatrix::scaled(const Cyclotomic& s) const {
    CycMatrix out = *this;
    for (auto& e : out.entries_) e = (e * s).promoted(order_);
    return out;
}

std::string CycMatrix::key() const {
    std::string k;
    for (const auto& e : entries_) {
        k += e.key();
        k += ';';
    }
    return k;
}

std::string CycMatrix::to_string() const {
    std::ostringstream os;
    for (unsigned r = 0; r < size_; ++r) {
        os << "[";
        for (unsigned c = 0; c < size_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
        os << "]\n";
    }
    return os.str();
}

std::vector<ElementaryOp> elementary_factors(const CycMatrix& m) {
    const unsigned n = m.size();
    std::vector<std::vector<Cyclotomic>> a(n);
    for (unsigned r = 0; r < n; ++r) a[r] = m.row(r);
    // Record the inverse of every row operation; M = R_1^{-1} ... R_s^{-1}.
    std::vector<ElementaryOp> ops;
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("elementary_factors: singular matrix");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            ops.push_back({ElementaryOp::Kind::Swap, col, piv, Cyclotomic(1L)});
        }
        const Cyclotomic p = a[col][col];
        if (!p.is_one()) {
            const Cyclotomic pinv = p.inverse();
            for (auto& x : a[col]) x *= pinv;
            ops.push_back({ElementaryOp::Kind::Scale, col, col, p});
        }
        for (unsigned r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Cyclotomic c = a[r][col];
            for (unsigned k = 0; k < n; ++k) a[r][k] -= c * a[col][k];
            // row_r -= c row_col; its inverse adds c row_col back.
            ops.push_back({ElementaryOp::Kind::Shear, r, col, c});
        }
    }
    return ops;
}

}  // namespace z4inv
