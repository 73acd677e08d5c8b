#include "z4inv/dense.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace z4inv {

DenseShape::DenseShape(unsigned nvars, unsigned degree) : nvars_(nvars), degree_(degree), index_(nvars, degree) {
    const unsigned w = nvars_ - 1;
    tails_.resize(index_.size() * w);
    for (size_t i = 0; i < index_.size(); ++i) {
        unsigned tail = degree_;
        for (unsigned v = 0; v < w; ++v) {
            tail -= index_.monomials()[i].e[v];
            tails_[i * w + v] = static_cast<std::uint16_t>(tail);
        }
    }
}

std::shared_ptr<const DenseShape> DenseShape::get(unsigned nvars, unsigned degree) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const DenseShape>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{nvars, degree}];
    if (!slot) slot = std::make_shared<const DenseShape>(nvars, degree);
    return slot;
}

bool DenseForm::is_zero() const {
    for (u64 c : coeffs)
        if (c) return false;
    return true;
}

DenseForm dense_zero(unsigned nvars, unsigned degree) {
    auto shape = DenseShape::get(nvars, degree);
    DenseForm f{shape, std::vector<u64>(shape->size(), 0)};
    return f;
}

namespace {

template <class Poly, class Map>
DenseForm to_dense_impl(const Poly& f, unsigned degree, Map map) {
    DenseForm out = dense_zero(f.nvars(), degree);
    for (const auto& [m, c] : f.terms()) {
        if (m.degree() != degree) throw std::invalid_argument("to_dense: polynomial is not homogeneous of the degree");
        out.coeffs[monomial_rank(m, f.nvars())] = map(c);
    }
    return out;
}

}  // namespace

DenseForm to_dense(const RatPoly& f, unsigned degree, const PrimeField& F) {
    return to_dense_impl(f, degree, [&](const Rational& c) { return F.from_rational(c); });
}

DenseForm to_dense(const CycPoly& f, unsigned degree, const PrimeField& F) {
    return to_dense_impl(f, degree, [&](const Cyclotomic& c) { return F.from_cyclotomic(c); });
}

DenseForm multiply(const DenseForm& a, const DenseForm& b, const PrimeField& F) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("multiply: variable count mismatch");
    const unsigned m = a.nvars();
    const unsigned D = a.degree() + b.degree();
    DenseForm out = dense_zero(m, D);
    // rank(x) = sum_v C(tail_v + m - v - 2, m - v - 1); tails of a sum add up.
    const unsigned w = m - 1;
    std::vector<std::vector<std::uint64_t>> tab(w);
    for (unsigned v = 0; v < w; ++v) {
        tab[v].resize(D + 1);
        for (unsigned t = 0; t <= D; ++t) tab[v][t] = binomial_u64(t + m - v - 2, m - v - 1);
    }
    // Compress b to its nonzero support.
    std::vector<u64> bval;
    std::vector<std::uint16_t> btail;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
        if (!b.coeffs[j]) continue;
        bval.push_back(b.coeffs[j]);
        for (unsigned v = 0; v < w; ++v) btail.push_back(b.shape->tails()[j * w + v]);
    }
    const auto& atails = a.shape->tails();
    u64* dst = out.coeffs.data();
    const size_t nb = bval.size();
    if (m == 4) {
        const auto* t0 = tab[0].data();
        const auto* t1 = tab[1].data();
        for (size_t i = 0; i < a.coeffs.size(); ++i) {
            const u64 av = a.coeffs[i];
            if (!av) continue;
            const unsigned a0 = atails[i * 3], a1 = atails[i * 3 + 1], a2 = atails[i * 3 + 2];
            const std::uint16_t* bt = btail.data();
            for (size_t j = 0; j < nb; ++j, bt += 3) {
                const size_t idx = t0[a0 + bt[0]] + t1[a1 + bt[1]] + (a2 + bt[2]);
                dst[idx] = F.add(dst[idx], F.mul(av, bval[j]));
            }
        }
    } else {
        for (size_t i = 0; i < a.coeffs.size(); ++i) {
            const u64 av = a.coeffs[i];
            if (!av) continue;
            for (size_t j = 0; j < nb; ++j) {
                size_t idx = 0;
                for (unsigned v = 0; v < w; ++v) idx += tab[v][atails[i * w + v] + btail[j * w + v]];
                dst[idx] = F.add(dst[idx], F.mul(av, bval[j]));
            }
        }
    }
    return out;
}

DenseForm substitute_elementary(const DenseForm& f, const ElementaryOp& op, const PrimeField& F) {
    const unsigned n = f.nvars();
    if (op.i >= n || op.j >= n) throw std::invalid_argument("substitution: variable out of range");
    const auto& mons = f.shape->index().monomials();
    DenseForm out = dense_zero(n, f.degree());
    const unsigned d = f.degree();
    const u64 c = F.from_cyclotomic(op.c);
    std::vector<u64> cp(d + 1);
    cp[0] = F.one();
    for (unsigned s = 1; s <= d; ++s) cp[s] = F.mul(cp[s - 1], c);
    switch (op.kind) {
        case ElementaryOp::Kind::Swap:
            for (size_t k = 0; k < mons.size(); ++k) {
                if (!f.coeffs[k]) continue;
                Monomial s = mons[k];
                std::swap(s.e[op.i], s.e[op.j]);
                out.coeffs[monomial_rank(s, n)] = f.coeffs[k];
            }
            break;
        case ElementaryOp::Kind::Scale:
            for (size_t k = 0; k < mons.size(); ++k)
                if (f.coeffs[k]) out.coeffs[k] = F.mul(f.coeffs[k], cp[mons[k].e[op.i]]);
            break;
        case ElementaryOp::Kind::Shear: {
            // binomials mod p, row by row
            std::vector<std::vector<u64>> binom(d + 1);
            for (unsigned a = 0; a <= d; ++a) {
                binom[a].assign(a + 1, F.one());
                for (unsigned s = 1; s < a; ++s) binom[a][s] = F.add(binom[a - 1][s - 1], binom[a - 1][s]);
            }
            for (unsigned a = 0; a <= d; ++a)
                for (unsigned s = 0; s <= a; ++s) binom[a][s] = F.mul(binom[a][s], cp[s]);
            for (size_t k = 0; k < mons.size(); ++k) {
                const u64 v = f.coeffs[k];
                if (!v) continue;
                Monomial t = mons[k];
                const unsigned a = t.e[op.i];
                const unsigned bj = t.e[op.j];
                for (unsigned s = 0; s <= a; ++s) {
                    t.e[op.i] = static_cast<std::uint16_t>(a - s);
                    t.e[op.j] = static_cast<std::uint16_t>(bj + s);
                    const size_t idx = monomial_rank(t, n);
                    out.coeffs[idx] = F.add(out.coeffs[idx], F.mul(v, binom[a][s]));
                }
            }
            break;
        }
    }
    return out;
}

DenseForm substitute_linear(const DenseForm& f, const CycMatrix& m, const PrimeField& F) {
    if (m.size() != f.nvars()) throw std::invalid_argument("substitute_linear: dimension mismatch");
    DenseForm g = f;
    for (const auto& op : elementary_factors(m)) g = substitute_elementary(g, op, F);
    return g;
}

u64 evaluate(const DenseForm& f, const std::vector<u64>& point, const PrimeField& F) {
    const unsigned n = f.nvars();
    if (point.size() != n) throw std::invalid_argument("evaluate: wrong point dimension");
    const unsigned d = f.degree();
    std::vector<std::vector<u64>> pw(n, std::vector<u64>(d + 1));
    for (unsigned v = 0; v < n; ++v) {
        pw[v][0] = F.one();
        for (unsigned e = 1; e <= d; ++e) pw[v][e] = F.mul(pw[v][e - 1], point[v]);
    }
    const auto& mons = f.shape->index().monomials();
    u64 acc = 0;
    for (size_t k = 0; k < mons.size(); ++k) {
        if (!f.coeffs[k]) continue;
        u64 t = f.coeffs[k];
        for (unsigned v = 0; v < n; ++v) t = F.mul(t, pw[v][mons[k].e[v]]);
        acc = F.add(acc, t);
    }
    return acc;
}

DenseProductCache::DenseProductCache(const PrimeField& F, std::vector<DenseForm> generators)
    : F_(&F), gens_(std::move(generators)) {
    for (size_t g = 1; g < gens_.size(); ++g)
        if (gens_[g].degree() < gens_[g - 1].degree())
            throw std::invalid_argument("DenseProductCache: generators must be sorted by degree");
}

std::vector<unsigned> DenseProductCache::degrees() const {
    std::vector<unsigned> d;
    for (const auto& g : gens_) d.push_back(g.degree());
    return d;
}

const DenseForm& DenseProductCache::product(const std::vector<unsigned>& e) {
    if (e.size() != gens_.size()) throw std::invalid_argument("DenseProductCache: wrong exponent length");
    size_t first = 0, total = 0;
    while (first < e.size() && !e[first]) ++first;
    for (unsigned x : e) total += x;
    if (first == e.size()) throw std::invalid_argument("DenseProductCache: empty product");
    if (total == 1) return gens_[first];
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
    std::vector<unsigned> parent = e;
    --parent[first];
    DenseForm v = multiply(product(parent), gens_[first], *F_);
    return cache_.emplace(e, std::move(v)).first->second;
}

}  // namespace z4inv
