#include "z4inv/epoly.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace z4inv {

namespace {

// sum over the given linear forms of prod_i a_i^{e_i}, one entry per degree-k monomial.
std::vector<Cyclotomic> power_sums(const std::vector<std::vector<Cyclotomic>>& forms, unsigned nvars, unsigned k) {
    const auto shape = DenseShape::get(nvars, k);
    const auto& mons = shape->index().monomials();
    std::vector<Cyclotomic> acc(mons.size(), Cyclotomic(0L));
    for (const auto& a : forms) {
        std::vector<std::vector<Cyclotomic>> pw(nvars);
        for (unsigned i = 0; i < nvars; ++i) {
            pw[i].push_back(Cyclotomic(1L));
            if (a[i].is_zero()) continue;
            for (unsigned j = 1; j <= k; ++j) pw[i].push_back(pw[i].back() * a[i]);
        }
        for (std::size_t idx = 0; idx < mons.size(); ++idx) {
            const auto& e = mons[idx].e;
            bool vanishes = false;
            for (unsigned i = 0; i < nvars; ++i) vanishes |= e[i] >= pw[i].size();
            if (vanishes) continue;
            Cyclotomic term = pw[0][e[0]];
            for (unsigned i = 1; i < nvars; ++i)
                if (e[i]) term *= pw[i][e[i]];
            acc[idx] += term;
        }
    }
    return acc;
}

RatPoly finish(const std::vector<Cyclotomic>& sums, unsigned nvars, unsigned k, const Rational& scale) {
    const auto shape = DenseShape::get(nvars, k);
    const auto& mons = shape->index().monomials();
    std::vector<Integer> fact(k + 1, 1);
    for (unsigned j = 1; j <= k; ++j) fact[j] = fact[j - 1] * j;
    RatPoly out(nvars);
    for (std::size_t idx = 0; idx < mons.size(); ++idx) {
        if (sums[idx].is_zero()) continue;
        auto q = sums[idx].to_rational();
        if (!q) throw std::logic_error("E-polynomial coefficient is not rational at degree " + std::to_string(k));
        Integer multinom = fact[k];
        for (unsigned i = 0; i < nvars; ++i) multinom /= fact[mons[idx].e[i]];
        out.add_term(mons[idx], *q * Rational(multinom) * scale);
    }
    return out;
}

std::vector<std::vector<Cyclotomic>> first_rows(const std::vector<CycMatrix>& mats) {
    std::vector<std::vector<Cyclotomic>> rows;
    for (const auto& m : mats) rows.push_back(m.row(0));
    return rows;
}

}  // namespace

RatPoly e_polynomial(const CosetSystem& cosets, unsigned k) {
    const unsigned m = cosets.dimension();
    if (m == 0) throw std::invalid_argument("e_polynomial: empty coset system");
    Rational scale(static_cast<long>(cosets.stabilizer.size()), static_cast<long>(cosets.group_order));
    scale.canonicalize();  // the two-argument constructor leaves |K|/|G| unreduced
    return finish(power_sums(first_rows(cosets.reps), m, k), m, k, scale);
}

EPolynomial e_polynomial(const NamedGroup& group, unsigned k) {
    return EPolynomial{group.name, k, e_polynomial(group.cosets, k)};
}

RatPoly e_polynomial_full_group(const FiniteMatrixGroup& group, unsigned k) {
    const unsigned m = group.dimension();
    const Rational scale(1, static_cast<long>(group.order()));
    return finish(power_sums(first_rows(group.elements), m, k), m, k, scale);
}

DenseForm e_polynomial_mod(const CosetSystem& cosets, unsigned k, const PrimeField& F) {
    const unsigned m = cosets.dimension();
    DenseForm out = dense_zero(m, k);
    const auto& mons = out.shape->index().monomials();
    std::vector<u64> fact(k + 1), inv_fact(k + 1);
    fact[0] = F.one();
    for (unsigned j = 1; j <= k; ++j) fact[j] = F.mul(fact[j - 1], F.from_u64(j));
    inv_fact[k] = F.inv(fact[k]);
    for (unsigned j = k; j > 0; --j) inv_fact[j - 1] = F.mul(inv_fact[j], F.from_u64(j));

    std::vector<std::vector<u64>> pw(m, std::vector<u64>(k + 1));
    for (const auto& rep : cosets.reps) {
        for (unsigned i = 0; i < m; ++i) {
            const u64 a = F.from_cyclotomic(rep(0, i));
            pw[i][0] = F.one();
            for (unsigned j = 1; j <= k; ++j) pw[i][j] = F.mul(pw[i][j - 1], a);
        }
        for (std::size_t idx = 0; idx < mons.size(); ++idx) {
            const auto& e = mons[idx].e;
            u64 term = pw[0][e[0]];
            for (unsigned i = 1; i < m && term; ++i) term = F.mul(term, pw[i][e[i]]);
            out.coeffs[idx] = F.add(out.coeffs[idx], term);
        }
    }
    const u64 scale = F.mul(F.from_u64(cosets.stabilizer.size()), F.inv(F.from_u64(cosets.group_order)));
    for (std::size_t idx = 0; idx < mons.size(); ++idx) {
        if (!out.coeffs[idx]) continue;
        u64 c = F.mul(out.coeffs[idx], F.mul(scale, fact[k]));
        for (unsigned i = 0; i < m; ++i) c = F.mul(c, inv_fact[mons[idx].e[i]]);
        out.coeffs[idx] = c;
    }
    return out;
}

bool invariant_mod_p(const DenseForm& f, const std::vector<CycMatrix>& generators, const PrimeField& F) {
    for (const auto& g : generators)
        if (!(substitute_linear(f, g, F) == f)) return false;
    return true;
}

namespace {

struct PrimeSweep {
    std::vector<EDimRow> rows;
    std::vector<unsigned> generators;
};

PrimeSweep sweep_prime(const CosetSystem& cosets, unsigned step, unsigned bound, const PrimeField& F) {
    PrimeSweep out;
    std::vector<DenseForm> gens;
    std::vector<unsigned> weights;
    std::vector<bool> zero;
    for (unsigned w = step; w <= bound; w += step) {
        DenseForm phi = e_polynomial_mod(cosets, w, F);
        zero.push_back(phi.is_zero());
        if (zero.back()) continue;
        weights.push_back(w);
        gens.push_back(std::move(phi));
    }
    DenseProductCache cache(F, gens);
    std::set<std::size_t> accepted;  // indices into gens
    std::size_t zi = 0;
    for (unsigned k = step; k <= bound; k += step, ++zi) {
        EDimRow row;
        row.k = k;
        row.phi_zero = zero[zi];
        const auto shape = DenseShape::get(cosets.dimension(), k);
        EchelonBasis basis(F, shape->size());
        std::optional<std::size_t> self;
        for (std::size_t g = 0; g < weights.size(); ++g)
            if (weights[g] == k) self = g;
        std::vector<std::vector<unsigned>> rest;
        for (auto& e : degree_exponents(weights, k)) {
            bool only_accepted = true;
            for (std::size_t g = 0; g < e.size(); ++g)
                if (e[g] && !accepted.count(g)) only_accepted = false;
            if (only_accepted)
                basis.add(cache.product(e).coeffs);
            else
                rest.push_back(std::move(e));
        }
        if (self && basis.add(gens[*self].coeffs)) {
            row.new_generator = true;
            accepted.insert(*self);
            out.generators.push_back(k);
        }
        for (const auto& e : rest) {
            if (basis.rank() == shape->size()) break;
            bool is_self = self && e[*self] == 1;
            if (is_self) {
                std::size_t total = 0;
                for (unsigned x : e) total += x;
                if (total == 1) continue;  // phi_k itself, already offered
            }
            basis.add(cache.product(e).coeffs);
        }
        row.dim = basis.rank();
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string sweep_key(const CosetSystem& cosets, unsigned step, unsigned bound, const EpolyOptions& opts) {
    std::string key = std::to_string(step) + "/" + std::to_string(bound) + "/" + std::to_string(opts.primes) + "/" +
                      std::to_string(opts.seed) + "/";
    for (const auto& r : cosets.reps)
        for (unsigned c = 0; c < r.size(); ++c) key += r(0, c).key() + ",";
    return key;
}

template <class Fn>
auto per_prime(const std::vector<u64>& primes, unsigned workers, Fn fn) {
    using R = decltype(fn(std::declval<const PrimeField&>()));
    std::vector<R> results(primes.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i) results[i] = fn(PrimeField(primes[i]));
        return results;
    }
    for (std::size_t start = 0; start < primes.size(); start += workers) {
        std::vector<std::future<R>> jobs;
        for (std::size_t i = start; i < primes.size() && i < start + workers; ++i)
            jobs.push_back(std::async(std::launch::async, [&, i] { return fn(PrimeField(primes[i])); }));
        for (std::size_t i = 0; i < jobs.size(); ++i) results[start + i] = jobs[i].get();
    }
    return results;
}

}  // namespace

GeneratorReport e_ring_sweep(const CosetSystem& cosets, unsigned step, unsigned bound,
                             const std::optional<PowerSeries>& molien, const EpolyOptions& opts) {
    if (step == 0) throw std::invalid_argument("e_ring_sweep: step must be positive");
    if (opts.primes == 0) throw std::invalid_argument("e_ring_sweep: need at least one prime");
    static std::mutex mu;
    static std::map<std::string, GeneratorReport> memo;
    const std::string key = sweep_key(cosets, step, bound, opts);
    GeneratorReport rep;
    bool cached = false;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(key); it != memo.end()) {
            rep = it->second;
            cached = true;
        }
    }
    if (!cached) {
        rep.step = step;
        rep.bound = bound;
        rep.certificate.method = "primes";
        rep.certificate.primes = pick_primes(opts.primes, opts.seed);
        auto sweeps = per_prime(rep.certificate.primes, opts.workers,
                                [&](const PrimeField& F) { return sweep_prime(cosets, step, bound, F); });
        rep.rows = sweeps.front().rows;
        rep.generators = sweeps.front().generators;
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            for (const auto& s : sweeps) {
                const auto& r = s.rows[i];
                if (r.dim != rep.rows[i].dim || r.phi_zero != rep.rows[i].phi_zero ||
                    r.new_generator != rep.rows[i].new_generator)
                    throw std::runtime_error("E-ring sweep disagrees between primes at weight " +
                                             std::to_string(r.k));
                rep.rows[i].modular_ranks.push_back(r.dim);
            }
        }
        for (const auto& s : sweeps) rep.certificate.modular_ranks.push_back(s.rows.empty() ? 0 : s.rows.back().dim);
        std::lock_guard lock(mu);
        memo.emplace(key, rep);
    }
    if (molien)
        for (auto& r : rep.rows)
            if (r.k <= molien->truncation()) r.molien = (*molien)[r.k];
    return rep;
}

std::vector<EDimRow> epoly_ring_dims(const CosetSystem& cosets, const std::vector<unsigned>& weights,
                                     const std::vector<unsigned>& degrees, const EpolyOptions& opts) {
    std::vector<unsigned> ws(weights.begin(), weights.end());
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    const auto primes = pick_primes(opts.primes, opts.seed);
    auto per = per_prime(primes, opts.workers, [&](const PrimeField& F) {
        std::vector<DenseForm> gens;
        std::vector<unsigned> gw;
        for (unsigned w : ws) {
            auto phi = e_polynomial_mod(cosets, w, F);
            if (phi.is_zero()) continue;
            gens.push_back(std::move(phi));
            gw.push_back(w);
        }
        DenseProductCache cache(F, gens);
        std::vector<std::size_t> dims;
        for (unsigned k : degrees) {
            const auto shape = DenseShape::get(cosets.dimension(), k);
            EchelonBasis basis(F, shape->size());
            for (const auto& e : degree_exponents(gw, k)) {
                if (basis.rank() == shape->size()) break;
                basis.add(cache.product(e).coeffs);
            }
            dims.push_back(basis.rank());
        }
        return dims;
    });
    std::vector<EDimRow> rows;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        EDimRow r;
        r.k = degrees[i];
        r.dim = per.front()[i];
        for (const auto& d : per) {
            if (d[i] != r.dim) throw std::runtime_error("E-ring dims disagree between primes at degree " +
                                                        std::to_string(r.k));
            r.modular_ranks.push_back(d[i]);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<unsigned> minimal_generators(const CosetSystem& cosets, unsigned step, unsigned bound,
                                         const EpolyOptions& opts) {
    return e_ring_sweep(cosets, step, bound, std::nullopt, opts).generators;
}

}  // namespace z4inv
