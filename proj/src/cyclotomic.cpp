#include "z4inv/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace z4inv {

namespace {

// Exact division of integer polynomials by a monic divisor.
std::vector<Integer> divide_monic(std::vector<Integer> num, const std::vector<Integer>& den) {
    const size_t dn = den.size() - 1;
    if (num.size() <= dn) return {0};
    std::vector<Integer> q(num.size() - dn);
    for (size_t i = num.size(); i-- > dn;) {
        const Integer c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (size_t j = 0; j < dn; ++j)
        if (num[j] != 0) throw std::logic_error("cyclotomic: inexact division");
    return q;
}

// Univariate rational polynomial helpers for the extended Euclidean algorithm.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    const Rational lead = b.back();
    while (a.size() >= b.size()) {
        const size_t shift = a.size() - b.size();
        const Rational c = a.back() / lead;
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        a.pop_back();
        trim(a);
    }
    r = std::move(a);
}

std::unique_ptr<CyclotomicModulus> build_modulus(unsigned n) {
    auto m = std::make_unique<CyclotomicModulus>();
    m->order = n;
    m->phi = cyclotomic_polynomial(n);
    m->degree = static_cast<unsigned>(m->phi.size() - 1);
    const unsigned d = m->degree;
    const size_t count = std::max<size_t>(n, 2 * d);
    m->power_mod.resize(count);
    std::vector<Integer> cur(d, 0);
    cur[0] = 1;
    for (size_t j = 0; j < count; ++j) {
        m->power_mod[j] = cur;
        // multiply by x and reduce
        Integer top = cur[d - 1];
        for (size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (size_t i = 0; i < d; ++i) cur[i] -= top * m->phi[i];
    }
    return m;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
    std::vector<Integer> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
    return p;
}

const CyclotomicModulus& cyclotomic_modulus(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<CyclotomicModulus>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = build_modulus(n);
    return *slot;
}

Cyclotomic::Cyclotomic() : coeffs_(1, Rational(0)) {}
Cyclotomic::Cyclotomic(long v) : coeffs_(1, Rational(v)) {}
Cyclotomic::Cyclotomic(const Rational& r) : coeffs_(1, r) {}

Cyclotomic::Cyclotomic(unsigned order, std::vector<Rational> coeffs) : order_(order) {
    if (order == 0) throw std::invalid_argument("cyclotomic order must be positive");
    reduce_from(coeffs);
}

void Cyclotomic::reduce_from(std::vector<Rational>& wide) {
    const auto& m = cyclotomic_modulus(order_);
    const unsigned d = m.degree;
    coeffs_.assign(d, Rational(0));
    for (size_t j = 0; j < wide.size(); ++j) {
        if (wide[j] == 0) continue;
        if (j < d) {
            coeffs_[j] += wide[j];
        } else if (j < m.power_mod.size()) {
            const auto& red = m.power_mod[j];
            for (unsigned i = 0; i < d; ++i)
                if (red[i] != 0) coeffs_[i] += wide[j] * red[i];
        } else {
            // z^j = z^(j mod n)
            const auto& red = m.power_mod[j % order_];
            for (unsigned i = 0; i < d; ++i)
                if (red[i] != 0) coeffs_[i] += wide[j] * red[i];
        }
    }
}

Cyclotomic Cyclotomic::root(unsigned n, long power) {
    if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
    long e = power % static_cast<long>(n);
    if (e < 0) e += n;
    std::vector<Rational> c(static_cast<size_t>(e) + 1, Rational(0));
    c[static_cast<size_t>(e)] = 1;
    return Cyclotomic(n, std::move(c));
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_one() const {
    if (coeffs_[0] != 1) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

std::optional<Rational> Cyclotomic::to_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return std::nullopt;
    return coeffs_[0];
}

Cyclotomic Cyclotomic::promoted(unsigned n) const {
    if (order_ == n) return *this;
    if (order_ != 1) throw std::invalid_argument("cannot promote Q(zeta_" + std::to_string(order_) +
                                                 ") into Q(zeta_" + std::to_string(n) + ")");
    Cyclotomic r;
    r.order_ = n;
    r.coeffs_.assign(cyclotomic_modulus(n).degree, Rational(0));
    r.coeffs_[0] = coeffs_[0];
    return r;
}

unsigned Cyclotomic::common_order(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.order_;
    if (a.order_ == 1) return b.order_;
    if (b.order_ == 1) return a.order_;
    throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.order_) + " vs " +
                                std::to_string(b.order_));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
    const unsigned n = common_order(*this, rhs);
    if (order_ != n) *this = promoted(n);
    if (rhs.order_ == n) {
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    } else {
        coeffs_[0] += rhs.coeffs_[0];
    }
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) {
    const unsigned n = common_order(*this, rhs);
    if (order_ != n) *this = promoted(n);
    if (rhs.order_ == n) {
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    } else {
        coeffs_[0] -= rhs.coeffs_[0];
    }
    return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    const unsigned n = Cyclotomic::common_order(a, b);
    if (a.order_ == 1 || b.order_ == 1) {
        const Cyclotomic& scalar = a.order_ == 1 ? a : b;
        Cyclotomic r = a.order_ == 1 ? b : a;
        if (r.order_ != n) r = r.promoted(n);
        for (auto& c : r.coeffs_) c *= scalar.coeffs_[0];
        return r;
    }
    std::vector<Rational> wide(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            if (b.coeffs_[j] != 0) wide[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    Cyclotomic r;
    r.order_ = n;
    r.reduce_from(wide);
    return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) { return *this = *this * rhs; }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    if (a.order_ != 1 && b.order_ != 1) return false;
    const Cyclotomic& wide = a.order_ == 1 ? b : a;
    const Cyclotomic& narrow = a.order_ == 1 ? a : b;
    auto r = wide.to_rational();
    return r && *r == narrow.coeffs_[0];
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("cyclotomic division by zero");
    if (order_ == 1) return Cyclotomic(Rational(1) / coeffs_[0]);
    // Extended Euclid: find s with s*a + t*Phi = 1.
    const auto& m = cyclotomic_modulus(order_);
    QPoly r0, r1 = coeffs_;
    for (const auto& c : m.phi) r0.emplace_back(c);
    trim(r1);
    QPoly s0, s1{Rational(1)};
    while (!(r1.size() == 1)) {
        QPoly q, r;
        divmod(r0, r1, q, r);
        QPoly s = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        if (r1.empty()) throw std::logic_error("cyclotomic inverse: non-unit (Phi reducible?)");
    }
    const Rational scale = Rational(1) / r1[0];
    for (auto& c : s1) c *= scale;
    return Cyclotomic(order_, std::move(s1));
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        Rational c = coeffs_[i];
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        os << c.get_str();
        if (i == 1) os << "*z";
        if (i > 1) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string Cyclotomic::key() const {
    std::string k;
    for (const auto& c : coeffs_) {
        k += c.get_str();
        k += ',';
    }
    return k;
}

Cyclotomic pow(Cyclotomic base, unsigned long e) {
    Cyclotomic r(1L);
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

}  // namespace z4inv
