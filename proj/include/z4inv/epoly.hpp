#pragma once

// E-polynomials phi_k = (|K|/|G|) sum over K\G of (sigma_0 . t)^k and the
// rings they generate.

#include <optional>
#include <string>
#include <vector>

#include "z4inv/dense.hpp"
#include "z4inv/groups.hpp"
#include "z4inv/rank.hpp"

namespace z4inv {

struct EPolynomial {
    std::string group;
    unsigned weight = 0;
    RatPoly value;
};

/// Exact phi_k from the coset representatives.  Throws std::logic_error if a
/// coefficient fails to be rational.
RatPoly e_polynomial(const CosetSystem& cosets, unsigned k);
EPolynomial e_polynomial(const NamedGroup& group, unsigned k);

/// The same invariant as a plain average over every element of the group.
RatPoly e_polynomial_full_group(const FiniteMatrixGroup& group, unsigned k);

/// phi_k reduced modulo p.
DenseForm e_polynomial_mod(const CosetSystem& cosets, unsigned k, const PrimeField& F);

struct EpolyOptions {
    unsigned primes = 3;
    std::uint64_t seed = 0x5eed2024ULL;
    unsigned workers = 1;  // primes are processed concurrently up to this many
};

struct EDimRow {
    unsigned k = 0;
    std::optional<Rational> molien;       // dim of the invariant ring at k, when known
    std::size_t dim = 0;                  // dim of the E-ring at k (all phi_w, w <= k)
    bool phi_zero = false;                // phi_k vanishes
    bool new_generator = false;           // phi_k not in the span of products of earlier generators
    std::vector<std::size_t> modular_ranks;
};

struct GeneratorReport {
    std::string group;
    unsigned step = 0;
    unsigned bound = 0;
    std::vector<EDimRow> rows;       // one per weight step, 2 step, ..., bound
    std::vector<unsigned> generators;  // accepted weights, ascending
    SpanCertificate certificate;       // primes used; method "primes"
};

/// One sweep over k = step, 2 step, ..., bound computing the E-ring dims and
/// the minimal generators together.  Every prime must give identical rows.
GeneratorReport e_ring_sweep(const CosetSystem& cosets, unsigned step, unsigned bound,
                             const std::optional<PowerSeries>& molien = std::nullopt,
                             const EpolyOptions& opts = {});

/// Dims of the ring generated by phi_w (w in weights) at each degree.
std::vector<EDimRow> epoly_ring_dims(const CosetSystem& cosets, const std::vector<unsigned>& weights,
                                     const std::vector<unsigned>& degrees, const EpolyOptions& opts = {});

/// Ascending scan: phi_k is kept iff nonzero and outside the degree-k span of
/// products of the weights kept so far.
std::vector<unsigned> minimal_generators(const CosetSystem& cosets, unsigned step, unsigned bound,
                                         const EpolyOptions& opts = {});

/// f(g t) == f mod p for every generator g.
bool invariant_mod_p(const DenseForm& f, const std::vector<CycMatrix>& generators, const PrimeField& F);

}  // namespace z4inv
