#pragma once

#include <random>
#include <vector>

#include "z4inv/cyclotomic.hpp"
#include "z4inv/dense.hpp"
#include "z4inv/matgroup.hpp"
#include "z4inv/rank.hpp"

namespace testing {

using namespace z4inv;

inline Cyclotomic random_element(unsigned order, std::mt19937_64& rng) {
    const unsigned d = cyclotomic_modulus(order).degree;
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    std::vector<Rational> c;
    for (unsigned i = 0; i < d; ++i) c.emplace_back(num(rng), den(rng));
    for (auto& q : c) q.canonicalize();
    return Cyclotomic(order, c);
}

inline Cyclotomic random_nonzero(unsigned order, std::mt19937_64& rng) {
    for (;;) {
        Cyclotomic x = random_element(order, rng);
        if (!x.is_zero()) return x;
    }
}

/// dim of degree-k invariants as the common fixed space of the generators:
/// nvars-many monomials minus the rank of m -> (g m - m) stacked over g.
/// Independent of any series computation.
inline std::size_t fixed_space_dim(const std::vector<CycMatrix>& gens, unsigned k) {
    const PrimeField F(pick_primes(1, 77).front());
    const unsigned n = gens.front().size();
    const auto shape = DenseShape::get(n, k);
    const std::size_t N = shape->size();
    EchelonBasis basis(F, N * gens.size());
    for (std::size_t i = 0; i < N; ++i) {
        DenseForm m = dense_zero(n, k);
        m.coeffs[i] = F.one();
        std::vector<u64> row;
        for (const auto& g : gens) {
            const DenseForm gm = substitute_linear(m, g, F);
            for (std::size_t j = 0; j < N; ++j) row.push_back(F.sub(gm.coeffs[j], m.coeffs[j]));
        }
        basis.add(std::move(row));
    }
    return N - basis.rank();
}

}  // namespace testing
