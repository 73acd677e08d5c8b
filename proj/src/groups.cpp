#include "z4inv/groups.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace z4inv {

namespace {

using Factor = FactoredPoly::Factor;

// 1 - t^d
Factor one_minus(unsigned d, unsigned mult = 1) {
    std::vector<long> c(d + 1, 0);
    c[0] = 1;
    c[d] = -1;
    return {c, mult};
}

Factor one_plus(unsigned d, unsigned mult = 1) {
    std::vector<long> c(d + 1, 0);
    c[0] = 1;
    c[d] = 1;
    return {c, mult};
}

CycMatrix make(unsigned size, unsigned order, const std::vector<Cyclotomic>& entries) {
    std::vector<Cyclotomic> e;
    for (const auto& x : entries) e.push_back(x.promoted(order));
    return CycMatrix(size, order, std::move(e));
}

std::vector<CycMatrix> gens_G() {
    const auto eta = [](long p) { return Cyclotomic::root(8, p); };
    const Cyclotomic one(1L), i = eta(2), mi = -eta(2), m1(-1L);
    CycMatrix h = make(4, 8, {one, one, one, one, one, i, m1, mi, one, m1, one, m1, one, mi, m1, i});
    h = h.scaled(eta(1) * Cyclotomic(Rational(1, 2)));
    CycMatrix d = CycMatrix::diagonal(8, {one, eta(1), m1, eta(1)});
    return {h, d};
}

std::vector<CycMatrix> gens_G8() {
    auto g = gens_G();
    const auto eta = Cyclotomic::root(8, 1);
    g.push_back(CycMatrix::diagonal(8, {eta, eta, eta, eta}));
    return g;
}

std::vector<CycMatrix> gens_appB_G() {
    const auto z = [](long p) { return Cyclotomic::root(12, p); };
    const Cyclotomic i = z(3), sqrt3 = z(1) + z(11), zeta3 = z(4);
    const Cyclotomic s = (i * sqrt3).inverse();
    CycMatrix a = make(2, 12, {Cyclotomic(1L), Cyclotomic(2L), Cyclotomic(1L), Cyclotomic(-1L)}).scaled(s);
    CycMatrix d = CycMatrix::diagonal(12, {Cyclotomic(1L).promoted(12), zeta3});
    return {a, d};
}

Cyclotomic zeta5(long p) { return Cyclotomic::root(20, 4 * p); }

std::vector<CycMatrix> gens_appB_H() {
    const Cyclotomic one(1L), two(2L), zero(0L);
    const Cyclotomic a = zeta5(1) + zeta5(4), b = zeta5(2) + zeta5(3);
    CycMatrix m = make(3, 20, {one, two, two, one, a, b, one, b, a});
    CycMatrix d = CycMatrix::diagonal(20, {one.promoted(20), zeta5(2), zeta5(3)});
    CycMatrix p = make(3, 20, {-one, zero, zero, zero, zero, -one, zero, -one, zero});
    return {m, d, p};
}

// sqrt(5) = 1 + 2 (zeta5 + zeta5^4)
Cyclotomic sqrt5() { return Cyclotomic(1L).promoted(20) + Cyclotomic(2L) * (zeta5(1) + zeta5(4)); }

unsigned scalar_count(const FiniteMatrixGroup& g) {
    unsigned count = 0;
    const unsigned m = g.dimension();
    for (const auto& x : g.elements) {
        bool scalar = true;
        for (unsigned r = 0; r < m && scalar; ++r)
            for (unsigned c = 0; c < m && scalar; ++c) {
                if (r != c && !x(r, c).is_zero()) scalar = false;
                if (r == c && !(x(r, c) == x(0, 0))) scalar = false;
            }
        count += scalar;
    }
    return count;
}

RationalFormula formula_for(const std::string& name) {
    RationalFormula f;
    if (name == "G") {
        f.numerator.factors = {one_plus(2), one_plus(4), {{1, 0, -1, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 2, 0,
                                                          -1, 0, 0, 0, 0, 0, 1},
                                                         1}};
        f.denominator.factors = {one_minus(8, 3), one_minus(24)};
    } else if (name == "G8") {
        f.numerator.factors = {one_plus(8), one_plus(16, 2)};
        f.denominator.factors = {one_minus(8, 3), one_minus(24)};
    } else if (name == "appB-G") {
        f.denominator.factors = {one_minus(4), one_minus(6)};
    } else if (name == "appB-H") {
        f.denominator.factors = {one_minus(2), one_minus(6), one_minus(10)};
    }
    return f;
}

}  // namespace

std::vector<std::string> named_group_names() { return {"G", "G8", "appB-G", "appB-H"}; }

bool is_named_group(const std::string& name) {
    for (const auto& n : named_group_names())
        if (n == name) return true;
    return false;
}

std::vector<CycMatrix> named_generators(const std::string& name) {
    if (name == "G") return gens_G();
    if (name == "G8") return gens_G8();
    if (name == "appB-G") return gens_appB_G();
    if (name == "appB-H") return gens_appB_H();
    throw std::invalid_argument("unknown group: " + name);
}

NamedGroup assemble_group(const std::string& name, std::string variant, FiniteMatrixGroup group) {
    NamedGroup g;
    g.name = name;
    g.variant = std::move(variant);
    g.group = std::move(group);
    g.cosets = coset_system(g.group);
    g.search_bound = static_cast<unsigned>(g.cosets.kappa());
    if (is_named_group(name)) {
        g.molien_formula = formula_for(name);
        g.step = name == "G" ? 4 : name == "G8" ? 8 : 2;
    } else {
        g.step = scalar_count(g.group);
    }
    return g;
}

NamedGroup make_group(const std::string& name, const std::vector<CycMatrix>& generators, std::size_t cap) {
    return assemble_group(name, "as printed", closure(generators, cap));
}

namespace {

std::mutex registry_mu;
std::map<std::string, NamedGroup>& registry() {
    static std::map<std::string, NamedGroup> r;
    return r;
}

}  // namespace

void preload_named_group(NamedGroup g) {
    if (!is_named_group(g.name)) throw std::invalid_argument("preload_named_group: unknown group " + g.name);
    std::lock_guard<std::mutex> lock(registry_mu);
    registry().emplace(g.name, std::move(g));
}

const NamedGroup& named_group(const std::string& name) {
    std::lock_guard<std::mutex> lock(registry_mu);
    auto& cache = registry();
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    auto gens = named_generators(name);
    NamedGroup g;
    // Finite versions of these groups are far below this; an unnormalized
    // generator of infinite order runs into it quickly.
    constexpr std::size_t cap = 4096;
    try {
        g = make_group(name, gens, cap);
    } catch (const ClosureCapExceeded&) {
        if (name != "appB-H") throw;
        gens[0] = gens[0].scaled(sqrt5().inverse());
        g = make_group(name, gens, cap);
        g.variant = "first generator scaled by 1/sqrt(5) (printed form exceeded closure cap " +
                    std::to_string(cap) + ")";
    }
    return cache.emplace(name, std::move(g)).first->second;
}

}  // namespace z4inv
