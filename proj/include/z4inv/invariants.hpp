#pragma once

// Graded dimension checks for subrings of the invariant ring of G8: the ring
// W generated by weight enumerators, the number of new enumerators each length demands, and
// the ring generated by E-polynomials together with weight enumerators.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "z4inv/epoly.hpp"
#include "z4inv/groups.hpp"
#include "z4inv/rank.hpp"

namespace z4inv {

struct NamedPoly {
    std::string name;
    RatPoly poly;
    unsigned degree = 0;
};

/// Exact check f(g t) == f for every generator g.
bool verify_invariance(const RatPoly& f, const std::vector<CycMatrix>& generators);
bool verify_invariance(const RatPoly& f, const FiniteMatrixGroup& group);

struct SpanOptions {
    unsigned primes = 3;
    std::uint64_t seed = 0x5eed2024ULL;
};

struct GradedSpanReport {
    unsigned k = 0;
    std::optional<Rational> expected;  // Molien coefficient
    std::size_t achieved = 0;
    std::size_t products = 0;  // degree-k products offered
    std::map<unsigned, std::size_t> generators_by_degree;
    SpanCertificate certificate;

    bool matches() const { return expected && *expected == Rational(static_cast<long>(achieved)); }
};

/// Per degree: rank of all degree-k products of the generators.  Generators
/// are taken as verified invariants: the scan stops once the rank reaches the
/// Molien coefficient, which bounds it.
std::vector<GradedSpanReport> ring_dims(const std::vector<NamedPoly>& generators, const std::vector<unsigned>& degrees,
                                        const std::optional<PowerSeries>& molien, const SpanOptions& opts = {});

struct BudgetRow {
    unsigned k = 0;
    Rational expected;
    std::size_t from_lower = 0;  // dim spanned by products of accepted lower-degree generators
    long demand = 0;             // expected - from_lower
    unsigned budget = 0;
    std::vector<std::string> accepted;  // candidates of degree k that raised the dim
    std::size_t achieved = 0;
    bool within_budget() const { return demand <= static_cast<long>(budget); }
};

/// Most enumerators per length needed to generate the ring, from the generator degrees of the Molien series (lengths 8..40).
unsigned enumerator_limit(unsigned length);

/// Walks k = 8, 16, ..., 40.  At each k the pool's degree-k members are offered
/// in order and kept when they raise the dim.
std::vector<BudgetRow> enumerator_budget(const std::vector<NamedPoly>& pool, const PowerSeries& molien,
                                           const std::vector<unsigned>& degrees, const SpanOptions& opts = {});

struct SubstituteChoice {
    std::optional<std::string> chosen;
    std::vector<std::pair<std::string, std::size_t>> tried;  // candidate, dim reached at 16
};

/// Tries the length-16 candidates in order until the degree-16 dim of the
/// ring generated by base + candidate reaches the Molien coefficient.
SubstituteChoice choose_length16_substitute(const std::vector<NamedPoly>& base,
                                            const std::vector<NamedPoly>& candidates, const PowerSeries& molien,
                                            const SpanOptions& opts = {});

struct DependencyCheck {
    unsigned k = 0;
    bool in_span = false;
    std::size_t span_dim = 0;
};

struct CombinedReport {
    std::vector<GradedSpanReport> dims;
    std::vector<DependencyCheck> dependencies;
    std::vector<std::string> minimal_subset;  // CWE names kept by greedy pruning (empty if not requested)
};

/// Ring generated by phi_w (w in epoly_weights, G8) and the CWEs.  For each k
/// in dependency_degrees, decides whether phi_k lies in the span of the
/// degree-k products.  With prune = true, CWEs are dropped one at a time
/// (in order) while every requested degree still reaches the Molien value.
CombinedReport combined_ring_check(const std::vector<unsigned>& epoly_weights, const std::vector<NamedPoly>& cwes,
                                   const std::vector<unsigned>& degrees,
                                   const std::vector<unsigned>& dependency_degrees, bool prune,
                                   const SpanOptions& opts = {});

}  // namespace z4inv
