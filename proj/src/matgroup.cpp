#include "z4inv/matgroup.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace z4inv {

FiniteMatrixGroup closure(const std::vector<CycMatrix>& generators, std::size_t cap) {
    if (generators.empty()) throw std::invalid_argument("closure: no generators");
    const unsigned m = generators.front().size();
    const unsigned n = generators.front().order();
    for (const auto& g : generators)
        if (g.size() != m || g.order() != n) throw std::invalid_argument("closure: generators differ in size or field");
    FiniteMatrixGroup group;
    group.generators = generators;
    std::unordered_map<std::string, std::size_t> seen;
    auto id = CycMatrix::identity(m, n);
    seen.emplace(id.key(), 0);
    group.elements.push_back(std::move(id));
    for (std::size_t next = 0; next < group.elements.size(); ++next) {
        for (const auto& g : generators) {
            CycMatrix x = group.elements[next] * g;
            auto key = x.key();
            if (seen.count(key)) continue;
            if (group.elements.size() >= cap) throw ClosureCapExceeded(cap);
            seen.emplace(std::move(key), group.elements.size());
            group.elements.push_back(std::move(x));
        }
    }
    return group;
}

CosetSystem coset_system(const FiniteMatrixGroup& group) {
    CosetSystem cs;
    cs.group_order = group.order();
    if (group.elements.empty()) return cs;
    const unsigned m = group.dimension();
    const unsigned n = group.field_order();
    auto row_key = [&](const CycMatrix& x) {
        std::string k;
        for (unsigned c = 0; c < m; ++c) k += x(0, c).key() + ";";
        return k;
    };
    std::string unit_row;
    {
        auto id = CycMatrix::identity(m, n);
        unit_row = row_key(id);
    }
    std::unordered_map<std::string, std::size_t> first_rows;
    for (const auto& x : group.elements) {
        const auto k = row_key(x);
        if (k == unit_row) cs.stabilizer.push_back(x);
        if (first_rows.emplace(k, cs.reps.size()).second) cs.reps.push_back(x);
    }
    if (cs.stabilizer.size() * cs.reps.size() != cs.group_order)
        throw std::logic_error("coset_system: |K| * kappa != |G|");
    // K is closed: the first row of a*b is (first row of a) * b.
    for (const auto& a : cs.stabilizer)
        for (const auto& b : cs.stabilizer)
            if (row_key(a * b) != unit_row) throw std::logic_error("coset_system: K is not a subgroup");
    return cs;
}

std::vector<Rational> FactoredPoly::expanded() const {
    std::vector<Rational> acc{Rational(1)};
    for (const auto& f : factors) {
        for (unsigned r = 0; r < f.multiplicity; ++r) {
            std::vector<Rational> next(acc.size() + f.coeffs.size() - 1, Rational(0));
            for (std::size_t i = 0; i < acc.size(); ++i)
                for (std::size_t j = 0; j < f.coeffs.size(); ++j) next[i + j] += acc[i] * f.coeffs[j];
            acc = std::move(next);
        }
    }
    return acc;
}

PowerSeries expand_formula(const RationalFormula& f, unsigned truncation) {
    const auto num = f.numerator.expanded();
    const auto den = f.denominator.expanded();
    if (den.empty() || den[0] == 0) throw std::invalid_argument("expand_formula: denominator vanishes at t = 0");
    PowerSeries s;
    s.coeffs.assign(truncation + 1, Rational(0));
    const Rational inv0 = Rational(1) / den[0];
    for (unsigned k = 0; k <= truncation; ++k) {
        Rational v = k < num.size() ? num[k] : Rational(0);
        for (std::size_t j = 1; j < den.size() && j <= k; ++j) v -= den[j] * s.coeffs[k - j];
        s.coeffs[k] = v * inv0;
    }
    return s;
}

namespace {

using CPoly = std::vector<Cyclotomic>;

CPoly poly_mul(const CPoly& a, const CPoly& b) {
    CPoly r(a.size() + b.size() - 1, Cyclotomic(0L));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

void poly_acc(CPoly& acc, const CPoly& x, bool negate) {
    if (acc.size() < x.size()) acc.resize(x.size(), Cyclotomic(0L));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (negate)
            acc[i] -= x[i];
        else
            acc[i] += x[i];
    }
}

CPoly det(const std::vector<std::vector<CPoly>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    CPoly acc{Cyclotomic(0L)};
    for (std::size_t c = 0; c < n; ++c) {
        bool zero = true;
        for (const auto& x : a[0][c]) zero &= x.is_zero();
        if (zero) continue;
        std::vector<std::vector<CPoly>> minor(n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) minor[r - 1].push_back(a[r][k]);
        poly_acc(acc, poly_mul(a[0][c], det(minor)), c % 2 == 1);
    }
    return acc;
}

}  // namespace

std::vector<Cyclotomic> reversed_char_poly(const CycMatrix& sigma) {
    const unsigned m = sigma.size();
    std::vector<std::vector<CPoly>> a(m, std::vector<CPoly>(m));
    for (unsigned r = 0; r < m; ++r)
        for (unsigned c = 0; c < m; ++c) a[r][c] = {Cyclotomic(r == c ? 1L : 0L), -sigma(r, c)};
    CPoly d = det(a);
    d.resize(m + 1, Cyclotomic(0L));
    for (auto& x : d) x = x.promoted(sigma.order());
    return d;
}

PowerSeries molien_series(const FiniteMatrixGroup& group, unsigned truncation) {
    // Elements with the same det(I - t sigma) contribute identical series.
    std::map<std::string, std::pair<CPoly, std::size_t>> classes;
    for (const auto& x : group.elements) {
        auto d = reversed_char_poly(x);
        std::string key;
        for (const auto& c : d) key += c.key() + "|";
        auto [it, fresh] = classes.try_emplace(key, std::move(d), 0);
        ++it->second.second;
    }
    std::vector<Cyclotomic> sum(truncation + 1, Cyclotomic(0L));
    for (const auto& [key, entry] : classes) {
        const auto& [d, count] = entry;
        if (!d[0].is_one()) throw std::logic_error("molien_series: det(I - t sigma) has constant term != 1");
        std::vector<Cyclotomic> inv(truncation + 1, Cyclotomic(0L));
        inv[0] = Cyclotomic(1L);
        for (unsigned k = 1; k <= truncation; ++k) {
            Cyclotomic v(0L);
            for (std::size_t j = 1; j < d.size() && j <= k; ++j)
                if (!d[j].is_zero()) v -= d[j] * inv[k - j];
            inv[k] = std::move(v);
        }
        const Cyclotomic w{Rational(static_cast<long>(count))};
        for (unsigned k = 0; k <= truncation; ++k) sum[k] += w * inv[k];
    }
    PowerSeries s;
    const Rational scale = Rational(1) / Rational(static_cast<long>(group.order()));
    for (unsigned k = 0; k <= truncation; ++k) {
        auto q = sum[k].to_rational();
        if (!q) throw std::logic_error("molien_series: averaged coefficient at degree " + std::to_string(k) +
                                       " is not rational");
        s.coeffs.push_back(*q * scale);
    }
    return s;
}

}  // namespace z4inv
