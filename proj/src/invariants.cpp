#include "z4inv/invariants.hpp"

#include <algorithm>
#include <stdexcept>

namespace z4inv {

bool verify_invariance(const RatPoly& f, const std::vector<CycMatrix>& generators) {
    const CycPoly c = to_cyclotomic(f);
    for (const auto& g : generators) {
        if (g.size() != f.nvars()) throw std::invalid_argument("verify_invariance: dimension mismatch");
        CycPoly h = substitute_linear(c, g);
        if (!(h == c)) return false;
    }
    return true;
}

bool verify_invariance(const RatPoly& f, const FiniteMatrixGroup& group) {
    return verify_invariance(f, group.generators);
}

namespace {

std::size_t as_size(const Rational& q) {
    if (q.get_den() != 1 || q < 0) throw std::logic_error("Molien coefficient is not a nonnegative integer");
    return q.get_num().get_ui();
}

// Generators reduced mod p and sorted by degree; names follow the same order.
struct ModRing {
    const PrimeField* F;
    std::vector<std::string> names;
    std::vector<unsigned> degrees;
    DenseProductCache cache;

    static ModRing make(const PrimeField& F, std::vector<std::pair<std::string, DenseForm>> gens) {
        std::stable_sort(gens.begin(), gens.end(),
                         [](const auto& a, const auto& b) { return a.second.degree() < b.second.degree(); });
        std::vector<std::string> names;
        std::vector<unsigned> degrees;
        std::vector<DenseForm> forms;
        for (auto& [n, f] : gens) {
            names.push_back(n);
            degrees.push_back(f.degree());
            forms.push_back(std::move(f));
        }
        return ModRing{&F, std::move(names), std::move(degrees), DenseProductCache(F, std::move(forms))};
    }

    std::size_t index(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw std::invalid_argument("unknown generator " + name);
    }

    // Echelon basis of the degree-k products of the generators flagged in use.
    EchelonBasis span(unsigned k, const std::vector<bool>& use, std::size_t cap, unsigned nvars,
                      std::size_t* offered = nullptr) {
        const auto shape = DenseShape::get(nvars, k);
        EchelonBasis basis(*F, shape->size());
        cap = std::min(cap, shape->size());
        std::vector<unsigned> sub_degrees;
        std::vector<std::size_t> sub_index;
        for (std::size_t g = 0; g < degrees.size(); ++g)
            if (use[g]) {
                sub_degrees.push_back(degrees[g]);
                sub_index.push_back(g);
            }
        std::size_t count = 0;
        for (const auto& e : degree_exponents(sub_degrees, k)) {
            ++count;
            if (basis.rank() >= cap) continue;
            std::vector<unsigned> full(degrees.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) full[sub_index[i]] = e[i];
            basis.add(cache.product(full).coeffs);
        }
        if (offered) *offered = count;
        return basis;
    }
};

std::vector<std::pair<std::string, DenseForm>> reduce_all(const std::vector<NamedPoly>& gens, const PrimeField& F) {
    std::vector<std::pair<std::string, DenseForm>> out;
    for (const auto& g : gens) {
        if (g.poly.nvars() != 4) throw std::invalid_argument("generator " + g.name + " is not in 4 variables");
        out.emplace_back(g.name, to_dense(g.poly, g.degree, F));
    }
    return out;
}

// Runs fn once per prime; all results must compare equal.
template <class Fn>
auto across_primes(const SpanOptions& opts, const std::string& what, Fn fn) {
    const auto primes = pick_primes(opts.primes, opts.seed);
    using R = decltype(fn(std::declval<const PrimeField&>()));
    std::vector<R> results;
    for (u64 p : primes) {
        PrimeField F(p);
        results.push_back(fn(F));
    }
    for (const auto& r : results)
        if (!(r == results.front())) throw std::runtime_error(what + ": results differ between primes");
    return std::make_pair(results.front(), primes);
}

std::size_t expected_cap(const std::optional<PowerSeries>& molien, unsigned k) {
    if (!molien || k > molien->truncation()) return SIZE_MAX;
    return as_size((*molien)[k]);
}

SpanCertificate certify(const std::vector<u64>& primes, std::size_t rank, std::size_t offered,
                        std::optional<Rational> expected) {
    SpanCertificate c;
    c.primes = primes;
    c.modular_ranks.assign(primes.size(), rank);
    if (expected && *expected == Rational(static_cast<long>(rank))) {
        c.method = "saturated";  // lower bound meets the Molien upper bound
        c.exact_rank = rank;
    } else if (rank == offered) {
        c.method = "full-row-rank";
        c.exact_rank = rank;
    } else {
        c.method = "primes";
    }
    return c;
}

}  // namespace

std::vector<GradedSpanReport> ring_dims(const std::vector<NamedPoly>& generators, const std::vector<unsigned>& degrees,
                                        const std::optional<PowerSeries>& molien, const SpanOptions& opts) {
    struct Cell {
        std::size_t rank, offered;
        bool operator==(const Cell&) const = default;
    };
    auto [cells, primes] = across_primes(opts, "ring_dims", [&](const PrimeField& F) {
        auto ring = ModRing::make(F, reduce_all(generators, F));
        std::vector<bool> use(ring.degrees.size(), true);
        std::vector<Cell> out;
        for (unsigned k : degrees) {
            Cell c{};
            c.rank = ring.span(k, use, expected_cap(molien, k), 4, &c.offered).rank();
            out.push_back(c);
        }
        return out;
    });
    std::vector<GradedSpanReport> rows;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        GradedSpanReport r;
        r.k = degrees[i];
        if (molien && r.k <= molien->truncation()) r.expected = (*molien)[r.k];
        r.achieved = cells[i].rank;
        r.products = cells[i].offered;
        for (const auto& g : generators)
            if (g.degree <= r.k) ++r.generators_by_degree[g.degree];
        r.certificate = certify(primes, r.achieved, r.products, r.expected);
        rows.push_back(std::move(r));
    }
    return rows;
}

unsigned enumerator_limit(unsigned length) {
    switch (length) {
        case 8: return 4;
        case 16: return 2;
        case 24: return 3;
        case 32: return 1;
        case 40: return 1;
        default: return 0;
    }
}

std::vector<BudgetRow> enumerator_budget(const std::vector<NamedPoly>& pool, const PowerSeries& molien,
                                           const std::vector<unsigned>& degrees, const SpanOptions& opts) {
    struct Step {
        std::size_t from_lower, achieved;
        std::vector<std::string> accepted;
        bool operator==(const Step&) const = default;
    };
    auto [steps, primes] = across_primes(opts, "enumerator_budget", [&](const PrimeField& F) {
        auto ring = ModRing::make(F, reduce_all(pool, F));
        std::vector<bool> accepted(ring.degrees.size(), false);
        std::vector<Step> out;
        for (unsigned k : degrees) {
            const std::size_t cap = expected_cap(molien, k);
            auto basis = ring.span(k, accepted, cap, 4);
            Step s{basis.rank(), 0, {}};
            for (std::size_t g = 0; g < ring.degrees.size(); ++g) {
                if (ring.degrees[g] != k || basis.rank() >= cap) continue;
                if (basis.add(ring.cache.generators()[g].coeffs)) {
                    accepted[g] = true;
                    s.accepted.push_back(ring.names[g]);
                }
            }
            s.achieved = basis.rank();
            out.push_back(std::move(s));
        }
        return out;
    });
    (void)primes;
    std::vector<BudgetRow> rows;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        BudgetRow r;
        r.k = degrees[i];
        r.expected = molien[r.k];
        r.from_lower = steps[i].from_lower;
        r.demand = static_cast<long>(as_size(r.expected)) - static_cast<long>(r.from_lower);
        r.budget = enumerator_limit(r.k);
        r.accepted = steps[i].accepted;
        r.achieved = steps[i].achieved;
        rows.push_back(std::move(r));
    }
    return rows;
}

SubstituteChoice choose_length16_substitute(const std::vector<NamedPoly>& base,
                                            const std::vector<NamedPoly>& candidates, const PowerSeries& molien,
                                            const SpanOptions& opts) {
    SubstituteChoice choice;
    for (const auto& c : candidates) {
        auto gens = base;
        gens.push_back(c);
        const auto rows = ring_dims(gens, {16}, molien, opts);
        choice.tried.emplace_back(c.name, rows.front().achieved);
        if (rows.front().matches()) {
            choice.chosen = c.name;
            break;
        }
    }
    return choice;
}

CombinedReport combined_ring_check(const std::vector<unsigned>& epoly_weights, const std::vector<NamedPoly>& cwes,
                                   const std::vector<unsigned>& degrees,
                                   const std::vector<unsigned>& dependency_degrees, bool prune,
                                   const SpanOptions& opts) {
    const NamedGroup& g8 = named_group("G8");
    unsigned top = 0;
    for (unsigned k : degrees) top = std::max(top, k);
    for (unsigned k : dependency_degrees) top = std::max(top, k);
    const PowerSeries molien = molien_series(g8.group, top);

    struct Outcome {
        std::vector<std::size_t> ranks, offered;
        std::vector<std::pair<bool, std::size_t>> deps;
        std::vector<std::string> kept;
        bool operator==(const Outcome&) const = default;
    };
    auto [out, primes] = across_primes(opts, "combined_ring_check", [&](const PrimeField& F) {
        std::vector<std::pair<std::string, DenseForm>> gens;
        for (unsigned w : epoly_weights) gens.emplace_back("phi" + std::to_string(w), e_polynomial_mod(g8.cosets, w, F));
        for (auto& c : reduce_all(cwes, F)) gens.push_back(std::move(c));
        auto ring = ModRing::make(F, std::move(gens));
        std::vector<bool> use(ring.degrees.size(), true);
        Outcome o;
        auto dims_hold = [&](const std::vector<bool>& u) {
            for (unsigned k : degrees)
                if (ring.span(k, u, expected_cap(molien, k), 4).rank() != expected_cap(molien, k)) return false;
            return true;
        };
        if (prune && dims_hold(use)) {
            for (const auto& c : cwes) {
                auto trial = use;
                trial[ring.index(c.name)] = false;
                if (dims_hold(trial)) use = trial;
            }
            for (const auto& c : cwes)
                if (use[ring.index(c.name)]) o.kept.push_back(c.name);
        }
        // Reported dims always use the full generator set.
        std::vector<bool> all(ring.degrees.size(), true);
        for (unsigned k : degrees) {
            std::size_t offered = 0;
            o.ranks.push_back(ring.span(k, all, expected_cap(molien, k), 4, &offered).rank());
            o.offered.push_back(offered);
        }
        for (unsigned k : dependency_degrees) {
            // Stopping at the Molien value is safe: phi_k is invariant, so a
            // saturated span must absorb it.
            auto basis = ring.span(k, all, expected_cap(molien, k), 4);
            const DenseForm phi = e_polynomial_mod(g8.cosets, k, F);
            const std::size_t before = basis.rank();
            o.deps.emplace_back(!basis.add(phi.coeffs), before);
        }
        return o;
    });
    CombinedReport rep;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        GradedSpanReport r;
        r.k = degrees[i];
        r.expected = molien[r.k];
        r.achieved = out.ranks[i];
        r.products = out.offered[i];
        for (unsigned w : epoly_weights)
            if (w <= r.k) ++r.generators_by_degree[w];
        for (const auto& c : cwes)
            if (c.degree <= r.k) ++r.generators_by_degree[c.degree];
        r.certificate = certify(primes, r.achieved, r.products, r.expected);
        rep.dims.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < dependency_degrees.size(); ++i)
        rep.dependencies.push_back({dependency_degrees[i], out.deps[i].first, out.deps[i].second});
    rep.minimal_subset = out.kept;
    return rep;
}

}  // namespace z4inv
