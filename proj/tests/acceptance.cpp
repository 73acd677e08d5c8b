// Acceptance runner: one PASS/FAIL line per criterion.  All comparisons are
// exact (tolerance 0); the only numeric tolerances are the wall-clock limits
// below.
//
// Some printed values disagree with what the computation gives.  Those cells
// are pinned in kKnownMismatches together with the computed value; a criterion
// failing only on pinned cells still prints FAIL but does not make the run
// exit nonzero.  Any other mismatch, or a pinned cell whose computed value
// drifts, does.

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "z4inv/codes.hpp"
#include "z4inv/epoly.hpp"
#include "z4inv/groups.hpp"
#include "z4inv/invariants.hpp"
#include "z4inv/report.hpp"

using namespace z4inv;

namespace {

constexpr long kTolerance = 0;             // every compared value is an exact integer or rational
constexpr double kCwe24LimitSeconds = 120;  // per length-24 enumeration

const std::set<std::string> kKnownMismatches = {
    "G series vs printed closed form: first difference at k=12 (series 3, closed form 2), 40 of 97 degrees differ",
    "table 2 R k=16: expected 16 computed 11",
    "table 2 E k=32: expected 4 computed 7",
    "table 2 E k=40: expected 7 computed 11",
};

struct Outcome {
    std::vector<std::string> mismatches;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) mismatches.push_back(what);
    }
    template <class A, class B>
    void equal(const A& computed, const B& expected, const std::string& label) {
        if (!(computed == expected)) {
            std::ostringstream os;
            os << label << ": expected " << expected << " computed " << computed;
            mismatches.push_back(os.str());
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    std::function<void(Outcome&)> run;
};

std::string join(const std::vector<unsigned>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct Golden {
    json tables = golden_tables();
    std::vector<unsigned> ks(int t) const { return tables.at(std::to_string(t)).at("k").get<std::vector<unsigned>>(); }
    std::vector<long> row(int t, const std::string& r) const {
        return tables.at(std::to_string(t)).at("rows").at(r).get<std::vector<long>>();
    }
    // compares a computed k -> value map with one golden row
    void check(Outcome& o, int t, const std::string& r, const std::map<unsigned, long>& computed,
               unsigned max_k = 1000, unsigned min_k = 0) const {
        const auto k = ks(t);
        const auto v = row(t, r);
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] > max_k || k[i] < min_k) continue;
            auto it = computed.find(k[i]);
            const std::string label = "table " + std::to_string(t) + " " + r + " k=" + std::to_string(k[i]);
            if (it == computed.end())
                o.mismatches.push_back(label + ": not computed");
            else
                o.equal(it->second, v[i], label);
        }
    }
};

long to_long(const Rational& q) { return q.get_den() == 1 ? q.get_num().get_si() : -1; }

std::map<unsigned, long> series_map(const PowerSeries& s, const std::vector<unsigned>& ks) {
    std::map<unsigned, long> m;
    for (unsigned k : ks) m[k] = to_long(s[k]);
    return m;
}

std::map<unsigned, long> dims_map(const GeneratorReport& r) {
    std::map<unsigned, long> m;
    for (const auto& row : r.rows) m[row.k] = static_cast<long>(row.dim);
    return m;
}

Rational at_ones(const RatPoly& p) { return p.evaluate(std::vector<Rational>(4, Rational(1))); }

template <class F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string tier = "core";
    app.add_option("--tier", tier, "core (1-11), extended (12-14) or all")
        ->check(CLI::IsMember({"core", "extended", "all"}));
    CLI11_PARSE(app, argc, argv);

    RunConfig cfg = config_from_env();
    if (!std::getenv("Z4INV_WORKERS")) cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    Workbench wb(cfg);
    const Golden golden;

    // shared between criteria
    std::optional<GeneratorReport> sweep_g, sweep_g8;
    auto get_sweep_g = [&]() -> const GeneratorReport& {
        if (!sweep_g) {
            const auto& g = wb.group("G");
            sweep_g = e_ring_sweep(g.cosets, 4, 48, molien_series(g.group, 48), wb.epoly_options());
        }
        return *sweep_g;
    };
    auto get_sweep_g8 = [&]() -> const GeneratorReport& {
        if (!sweep_g8) {
            const auto& g = wb.group("G8");
            sweep_g8 = e_ring_sweep(g.cosets, 8, 96, molien_series(g.group, 96), wb.epoly_options());
        }
        return *sweep_g8;
    };

    std::vector<Criterion> core = {
        {1, "group orders",
         [&](Outcome& o) {
             o.equal(wb.group("G").group.order(), 384u, "|G|");
             o.equal(wb.group("G8").group.order(), 1536u, "|G8|");
             o.equal(wb.group("appB-G").group.order(), 24u, "|appB-G|");
             o.equal(wb.group("appB-H").group.order(), 120u, "|appB-H|");
             o.notes.push_back("appB-H variant: " + wb.group("appB-H").variant);
         }},
        {2, "coset data",
         [&](Outcome& o) {
             o.equal(wb.group("G").cosets.stabilizer.size(), 8u, "|K| for G");
             o.equal(wb.group("G8").cosets.stabilizer.size(), 16u, "|K| for G8");
             o.equal(wb.group("G").cosets.kappa(), 48u, "kappa for G");
             o.equal(wb.group("G8").cosets.kappa(), 96u, "kappa for G8");
         }},
        {3, "Molien series vs closed forms and printed dim R rows",
         [&](Outcome& o) {
             {
                 const auto& g = wb.group("G");
                 const auto m = molien_series(g.group, 96);
                 const auto f = expand_formula(g.molien_formula, 96);
                 int first = -1, count = 0;
                 for (unsigned k = 0; k <= 96; ++k)
                     if (m[k] != f[k]) {
                         if (first < 0) first = static_cast<int>(k);
                         ++count;
                     }
                 if (count)
                     o.mismatches.push_back("G series vs printed closed form: first difference at k=" +
                                            std::to_string(first) + " (series " + m[first].get_str() +
                                            ", closed form " + f[first].get_str() + "), " + std::to_string(count) +
                                            " of 97 degrees differ");
                 golden.check(o, 2, "R", series_map(m, golden.ks(2)));
             }
             {
                 const auto& g = wb.group("G8");
                 const auto m = molien_series(g.group, 96);
                 o.expect(m == expand_formula(g.molien_formula, 96), "G8 series vs closed form up to 96");
                 golden.check(o, 3, "R8", series_map(m, golden.ks(3)));
             }
             for (auto [name, t] : {std::pair<const char*, int>{"appB-G", 5}, {"appB-H", 6}}) {
                 const auto& g = wb.group(name);
                 const auto m = molien_series(g.group, 40);
                 o.expect(m == expand_formula(g.molien_formula, 40), std::string(name) + " series vs closed form up to 40");
                 golden.check(o, t, "R", series_map(m, golden.ks(t)));
             }
         }},
        {4, "phi_4 = 0 for G",
         [&](Outcome& o) { o.expect(wb.phi(wb.group("G"), 4).is_zero(), "phi_4 nonzero"); }},
        {5, "table 2 E row",
         [&](Outcome& o) { golden.check(o, 2, "E", dims_map(get_sweep_g())); }},
        {6, "table 3 E8 row",
         [&](Outcome& o) { golden.check(o, 3, "E8", dims_map(get_sweep_g8())); }},
        {7, "minimal E-polynomial generators",
         [&](Outcome& o) {
             o.equal(join(get_sweep_g().generators), std::string("8,12,16,20,24,28,32,40,48"), "G");
             o.equal(join(get_sweep_g8().generators), std::string("8,16,24,32,40,48,56,64,72,80"), "G8");
             for (auto [name, want] : {std::pair<const char*, const char*>{"appB-G", "4,6"}, {"appB-H", "2,6,10"}}) {
                 const auto& g = wb.group(name);
                 const auto r = e_ring_sweep(g.cosets, g.step, g.search_bound, std::nullopt, wb.epoly_options());
                 o.equal(join(r.generators), std::string(want), name);
             }
         }},
        {8, "CWE golden polynomials and fixtures",
         [&](Outcome& o) {
             o.expect(wb.builtin_cwe("o8") == builtin_fixture("o8"), "o8 CWE differs from the printed expansion");
             o.expect(wb.builtin_cwe("k8") == builtin_fixture("k8"), "k8 CWE differs from the printed expansion");
             const auto& g8 = wb.group("G8");
             for (const char* n : {"p8a", "p8b", "p16a"}) {
                 const RatPoly f = builtin_fixture(n);
                 o.expect(verify_invariance(f, g8.group), std::string(n) + " not G8-invariant");
                 const unsigned len = *f.homogeneous_degree();
                 o.equal(at_ones(f), Rational(Integer(1) << len), std::string(n) + " at all-ones");
             }
         }},
        {9, "length-24 codes q24a, q24b",
         [&](Outcome& o) {
             const auto& g8 = wb.group("G8");
             for (const char* n : {"q24a", "q24b"}) {
                 const Z4Code c = standard_form(builtin_matrix(n));
                 o.expect(is_type_ii(c), std::string(n) + " not Type II");
                 o.equal(c.size(), Integer(1) << 24, std::string("|") + n + "|");
                 RatPoly cwe(4);
                 const double secs = timed([&] { cwe = wb.builtin_cwe(n); });
                 o.expect(secs <= kCwe24LimitSeconds, std::string(n) + " enumeration over time limit");
                 o.equal(at_ones(cwe), Rational(Integer(1) << 24), std::string(n) + " CWE at all-ones");
                 o.expect(verify_invariance(cwe, g8.group), std::string(n) + " CWE not G8-invariant");
                 std::ostringstream os;
                 os << n << ": k1=" << c.k1() << " k2=" << c.k2() << ", " << cwe.size() << " terms";
                 o.notes.push_back(os.str());
             }
         }},
        {10, "W and R~ at k=8,16,24; E8 insufficient at 16",
         [&](Outcome& o) {
             const auto& pool = wb.weight_enumerators(false);
             o.notes.push_back("length-16 substitute: " + pool.substitute.chosen.value_or("none"));
             o.expect(pool.substitute.chosen.has_value(), "no length-16 substitute reaches dim 11");
             const auto molien = molien_series(wb.group("G8").group, 24);
             std::map<unsigned, long> w, rt;
             for (const auto& r : ring_dims(pool.members, {8, 16, 24}, molien, wb.span_options()))
                 w[r.k] = static_cast<long>(r.achieved);
             golden.check(o, 1, "W", w, 24);
             const auto cr = combined_ring_check({8, 16, 24}, pool.members, {8, 16, 24}, {}, false, wb.span_options());
             for (const auto& r : cr.dims) rt[r.k] = static_cast<long>(r.achieved);
             golden.check(o, 4, "Rtilde", rt, 24);
             const auto e8 = epoly_ring_dims(wb.group("G8").cosets, {8, 16}, {16}, wb.epoly_options());
             o.equal(e8.front().dim, 2u, "dim E8 at 16");
             o.expect(Rational(static_cast<long>(e8.front().dim)) < molien[16], "E8 at 16 reaches dim R8");
         }},
        {11, "property suites",
         [&](Outcome& o) {
             std::mt19937_64 rng(2718);
             std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
             auto rnd = [&](unsigned n) {
                 std::vector<Rational> c;
                 for (unsigned i = 0; i < cyclotomic_modulus(n).degree; ++i) {
                     Rational q(num(rng), den(rng));
                     q.canonicalize();
                     c.push_back(q);
                 }
                 return Cyclotomic(n, c);
             };
             int bad = 0;
             for (int i = 0; i < 1000; ++i) {
                 const unsigned n = (i % 3 == 0) ? 8 : (i % 3 == 1) ? 12 : 20;
                 const auto a = rnd(n), b = rnd(n), c = rnd(n);
                 bad += !(a * (b + c) == a * b + a * c) || !((a * b) * c == a * (b * c)) || !(a + b == b + a);
                 if (!a.is_zero()) bad += !(a.inverse().inverse() == a) || !(a * a.inverse()).is_one();
             }
             o.equal(bad, 0, "field axiom violations in 1000 cases");

             const auto gens = named_generators("G8");
             RatPoly f = parse_poly("t0^3 t1 + 2 t1 t2^2 t3 - t3^4 + t0 t1 t2 t3", 4);
             for (std::size_t i = 0; i < gens.size(); ++i)
                 for (std::size_t j = 0; j < gens.size(); ++j)
                     o.expect(substitute_linear(substitute_linear(f, gens[i]), gens[j]) ==
                                  substitute_linear(f, gens[i] * gens[j]),
                              "substitute_linear action compatibility");

             auto cwe = [](const Z4Mat& m) { return complete_weight_enumerator(standard_form(m)); };
             const Z4Mat o8 = builtin_matrix("o8"), k8 = builtin_matrix("k8");
             o.expect(cwe(direct_sum(o8, k8)) == cwe(o8) * cwe(k8), "CWE of o8 + k8 is not the product");
             const Z4Mat small = parse_genmat("1 1 1 1\n0 2 0 2\n");
             o.expect(cwe(direct_sum(small, small)) == cwe(small) * cwe(small), "CWE of a length-8 sum");

             CweOptions serial, parallel;
             parallel.workers = 4;
             const Z4Code k16 = standard_form(builtin_matrix("k16"));
             o.expect(complete_weight_enumerator(k16, serial) == complete_weight_enumerator(k16, parallel),
                      "parallel and serial enumeration differ");

             const auto& g8 = wb.group("G8");
             for (unsigned k : {8u, 16u})
                 o.expect(e_polynomial(g8.cosets, k) == e_polynomial_full_group(g8.group, k),
                          "coset and full-group phi_" + std::to_string(k) + " differ");
         }},
    };

    std::vector<Criterion> extended = {
        {12, "q32 CWE by full enumeration",
         [&](Outcome& o) {
             const Z4Code c = standard_form(builtin_matrix("q32"));
             o.expect(is_type_ii(c), "q32 not Type II");
             RatPoly cwe(4);
             const double secs = timed([&] { cwe = wb.builtin_cwe("q32"); });
             o.equal(at_ones(cwe), Rational(Integer(1) << 32), "q32 CWE at all-ones");
             o.expect(verify_invariance(cwe, wb.group("G8").group), "q32 CWE not G8-invariant");
             std::ostringstream os;
             os << "q32: k1=" << c.k1() << " k2=" << c.k2() << ", " << cwe.size() << " terms, " << std::fixed
                << std::setprecision(1) << secs << " s with " << wb.config().workers << (wb.config().workers == 1 ? " worker" : " workers");
             o.notes.push_back(os.str());
         }},
        {13, "W at k=32,40 and enumerator budget",
         [&](Outcome& o) {
             const auto& pool = wb.weight_enumerators(true);
             const auto molien = molien_series(wb.group("G8").group, 40);
             std::map<unsigned, long> w;
             for (const auto& r : ring_dims(pool.members, {32, 40}, molien, wb.span_options()))
                 w[r.k] = static_cast<long>(r.achieved);
             golden.check(o, 1, "W", w, 40, 32);
             // k = 8, 16, 24 belong to criterion 10
             const auto rows = enumerator_budget(pool.members, molien, {8, 16, 24, 32, 40}, wb.span_options());
             std::string demands;
             for (const auto& r : rows) {
                 o.expect(r.within_budget(), "demand over limit at k=" + std::to_string(r.k));
                 demands += (demands.empty() ? "" : ",") + std::to_string(r.demand);
                 std::string acc;
                 for (const auto& a : r.accepted) acc += " " + a;
                 o.notes.push_back("k=" + std::to_string(r.k) + " accepted:" + (acc.empty() ? " none" : acc));
             }
             o.notes.push_back("demands " + demands + " against limits 4,2,3,1,1");
             o.equal(rows.back().demand, 0L, "demand at k=40");
         }},
        {14, "R~ at k=32,40 and phi_k dependencies",
         [&](Outcome& o) {
             const auto& pool = wb.weight_enumerators(true);
             const auto cr =
                 combined_ring_check({8, 16, 24}, pool.members, {32, 40}, {32, 40, 48}, true, wb.span_options());
             std::map<unsigned, long> rt;
             for (const auto& r : cr.dims) rt[r.k] = static_cast<long>(r.achieved);
             golden.check(o, 4, "Rtilde", rt, 40, 32);
             for (const auto& d : cr.dependencies)
                 o.expect(d.in_span, "phi_" + std::to_string(d.k) + " not in the span");
             std::string kept;
             for (const auto& n : cr.minimal_subset) kept += " " + n;
             o.notes.push_back("weight enumerators kept after pruning:" + kept);
         }},
    };

    std::vector<Criterion> run;
    if (tier != "extended") run.insert(run.end(), core.begin(), core.end());
    if (tier != "core") run.insert(run.end(), extended.begin(), extended.end());

    std::cout << "acceptance tier " << tier << ", tolerance " << kTolerance << " (exact), " << cfg.workers
              << (cfg.workers == 1 ? " worker\n" : " workers\n");
    int unexpected = 0;
    for (const auto& c : run) {
        Outcome o;
        double secs = 0;
        try {
            secs = timed([&] { c.run(o); });
        } catch (const std::exception& e) {
            o.mismatches.push_back(std::string("error: ") + e.what());
        }
        bool only_known = true;
        for (const auto& m : o.mismatches) only_known = only_known && kKnownMismatches.count(m);
        const bool pass = o.mismatches.empty();
        if (!pass && !only_known) ++unexpected;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << " (" << std::fixed
                  << std::setprecision(1) << secs << " s)" << (pass || !only_known ? "" : " known discrepancy")
                  << "\n";
        for (const auto& m : o.mismatches)
            std::cout << "       mismatch: " << m << (kKnownMismatches.count(m) ? " [pinned]" : "") << "\n";
        for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    }
    std::cout << (unexpected ? "unexpected failures: " + std::to_string(unexpected) : std::string("no unexpected failures"))
              << "\n";
    return unexpected ? 1 : 0;
}
