#include "z4inv/rank.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace z4inv {

void EchelonBasis::reduce(std::vector<u64>& row) const {
    const PrimeField& F = *F_;
    for (std::size_t b = 0; b < rows_.size(); ++b) {
        const std::size_t p = pivots_[b];
        const u64 f = row[p];
        if (!f) continue;
        const u64 nf = F.neg(f);
        const auto& br = rows_[b];
        for (std::size_t c = p; c < columns_; ++c)
            if (br[c]) row[c] = F.add(row[c], F.mul(nf, br[c]));
    }
}

bool EchelonBasis::add(std::vector<u64> row) {
    if (row.size() != columns_) throw std::invalid_argument("EchelonBasis: wrong row length");
    reduce(row);
    std::size_t p = 0;
    while (p < columns_ && !row[p]) ++p;
    if (p == columns_) return false;
    const u64 inv = F_->inv(row[p]);
    for (std::size_t c = p; c < columns_; ++c)
        if (row[c]) row[c] = F_->mul(row[c], inv);
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
}

bool EchelonBasis::contains(std::vector<u64> row) const {
    if (row.size() != columns_) throw std::invalid_argument("EchelonBasis: wrong row length");
    reduce(row);
    for (u64 v : row)
        if (v) return false;
    return true;
}

std::size_t rank_mod_p(const std::vector<DenseForm>& rows, const PrimeField& F) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().coeffs.size();
    EchelonBasis basis(F, cols);
    for (const auto& r : rows) {
        if (r.coeffs.size() != cols) throw std::invalid_argument("rank_mod_p: mixed degrees");
        basis.add(r.coeffs);
        if (basis.rank() == cols) break;
    }
    return basis.rank();
}

std::size_t bareiss_rank(std::vector<std::vector<Integer>> a) {
    if (a.empty()) return 0;
    const std::size_t n = a.size(), m = a.front().size();
    std::size_t k = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < m && k < n; ++col) {
        std::size_t piv = k;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[k]);
        const Integer pk = a[k][col];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Integer ic = a[i][col];
            for (std::size_t j = col + 1; j < m; ++j) {
                Integer v = pk * a[i][j] - ic * a[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = std::move(v);
            }
            a[i][col] = 0;
        }
        prev = pk;
        ++k;
    }
    return k;
}

std::string SpanCertificate::describe() const {
    std::ostringstream os;
    os << method;
    if (exact_rank) os << " exact=" << *exact_rank;
    os << " primes=" << primes.size() << " ranks=[";
    for (std::size_t i = 0; i < modular_ranks.size(); ++i) os << (i ? "," : "") << modular_ranks[i];
    os << "]";
    return os.str();
}

namespace {

unsigned common_degree(const std::vector<RatPoly>& polys) {
    std::optional<unsigned> deg;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        auto d = p.homogeneous_degree();
        if (!d) throw std::invalid_argument("span_dimension: inhomogeneous input");
        if (deg && *deg != *d) throw std::invalid_argument("span_dimension: mixed degrees");
        deg = d;
    }
    return deg.value_or(0);
}

std::vector<Integer> integer_row(const RatPoly& p, const std::map<Monomial, std::size_t, GrlexFirst>& cols) {
    Integer lcm = 1, g = 0;
    for (const auto& [m, c] : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> row(cols.size(), 0);
    for (const auto& [m, c] : p.terms()) {
        Integer v = c.get_num() * (lcm / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        row[cols.at(m)] = std::move(v);
    }
    if (g > 1)
        for (auto& v : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return row;
}

}  // namespace

SpanResult modular_span_dimension(const std::function<std::vector<DenseForm>(const PrimeField&)>& rows,
                                  unsigned primes, std::uint64_t seed) {
    SpanResult out;
    out.certificate.method = "primes";
    out.certificate.primes = pick_primes(primes, seed);
    for (u64 p : out.certificate.primes) {
        PrimeField F(p);
        out.certificate.modular_ranks.push_back(rank_mod_p(rows(F), F));
    }
    for (std::size_t r : out.certificate.modular_ranks)
        if (r != out.certificate.modular_ranks.front())
            throw std::runtime_error("modular ranks disagree: " + out.certificate.describe());
    out.dimension = out.certificate.modular_ranks.empty() ? 0 : out.certificate.modular_ranks.front();
    return out;
}

SpanResult span_dimension(const std::vector<RatPoly>& polys, const RankPolicy& policy) {
    SpanResult out;
    if (polys.empty()) {
        out.certificate.method = "empty";
        out.certificate.exact_rank = 0;
        return out;
    }
    const unsigned deg = common_degree(polys);
    const unsigned nvars = polys.front().nvars();
    std::map<Monomial, std::size_t, GrlexFirst> cols;
    for (const auto& p : polys) {
        if (p.nvars() != nvars) throw std::invalid_argument("span_dimension: variable count mismatch");
        for (const auto& [m, c] : p.terms()) cols.emplace(m, 0);
    }
    std::size_t idx = 0;
    for (auto& [m, i] : cols) i = idx++;

    const bool exact = polys.size() * cols.size() <= policy.exact_max_cells;
    const unsigned nprimes = exact ? policy.primes : policy.primes_only;
    auto modular = modular_span_dimension(
        [&](const PrimeField& F) {
            std::vector<DenseForm> rows;
            for (const auto& p : polys) rows.push_back(to_dense(p, deg, F));
            return rows;
        },
        nprimes, policy.seed);
    out.certificate = modular.certificate;
    if (exact) {
        std::vector<std::vector<Integer>> rows;
        for (const auto& p : polys) rows.push_back(integer_row(p, cols));
        const std::size_t r = bareiss_rank(std::move(rows));
        for (std::size_t mr : out.certificate.modular_ranks)
            if (mr > r) throw std::logic_error("modular rank exceeds exact rank");
        out.certificate.method = "fraction-free+primes";
        out.certificate.exact_rank = r;
        out.dimension = r;
    } else {
        out.dimension = modular.dimension;
    }
    return out;
}

bool in_span(const RatPoly& f, const std::vector<RatPoly>& basis, const RankPolicy& policy) {
    if (f.is_zero()) return true;
    if (basis.empty()) return false;
    std::vector<RatPoly> all = basis;
    all.push_back(f);
    return span_dimension(all, policy).dimension == span_dimension(basis, policy).dimension;
}

}  // namespace z4inv
