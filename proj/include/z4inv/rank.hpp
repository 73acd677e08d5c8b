#pragma once

// Exact ranks of coefficient matrices of homogeneous polynomials.
//
// Ranks mod p are lower bounds for the rank over Q.  A value is certified
// either by fraction-free (Bareiss) elimination over the integers, or by
// agreement of several independent primes; disagreement is a hard error.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "z4inv/dense.hpp"
#include "z4inv/polyring.hpp"

namespace z4inv {

/// Incremental row echelon form over F_p.
class EchelonBasis {
public:
    EchelonBasis(const PrimeField& F, std::size_t columns) : F_(&F), columns_(columns) {}

    /// Reduces row against the basis; keeps it and returns true iff independent.
    bool add(std::vector<u64> row);
    /// True iff row lies in the span (basis unchanged).
    bool contains(std::vector<u64> row) const;
    std::size_t rank() const { return rows_.size(); }

private:
    void reduce(std::vector<u64>& row) const;

    const PrimeField* F_;
    std::size_t columns_;
    std::vector<std::vector<u64>> rows_;  // pivot entry normalized to one
    std::vector<std::size_t> pivots_;
};

std::size_t rank_mod_p(const std::vector<DenseForm>& rows, const PrimeField& F);

/// Rank over Q of an integer matrix by fraction-free elimination.
std::size_t bareiss_rank(std::vector<std::vector<Integer>> rows);

struct RankPolicy {
    unsigned primes = 2;          // primes used alongside exact elimination
    unsigned primes_only = 3;     // primes used when exact elimination is skipped
    std::size_t exact_max_cells = 200000;  // rows * nonzero columns for Bareiss
    std::uint64_t seed = 0x5eed2024ULL;
};

struct SpanCertificate {
    std::string method;  // "fraction-free+primes" or "primes"
    std::vector<u64> primes;
    std::vector<std::size_t> modular_ranks;
    std::optional<std::size_t> exact_rank;

    std::string describe() const;
};

struct SpanResult {
    std::size_t dimension = 0;
    SpanCertificate certificate;
};

/// Dimension of the Q-span of homogeneous rational polynomials of a common degree.
SpanResult span_dimension(const std::vector<RatPoly>& polys, const RankPolicy& policy = {});

/// Whether f lies in the span of basis (certified exactly as span_dimension).
bool in_span(const RatPoly& f, const std::vector<RatPoly>& basis, const RankPolicy& policy = {});

/// Multi-prime rank for rows generated per prime by a callback. Every prime
/// must give the same rank (std::runtime_error otherwise).
SpanResult modular_span_dimension(const std::function<std::vector<DenseForm>(const PrimeField&)>& rows,
                                  unsigned primes, std::uint64_t seed);

}  // namespace z4inv
