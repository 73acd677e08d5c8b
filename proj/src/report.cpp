#include "z4inv/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace z4inv {

json report_envelope(const std::string& command) {
    return json{{"schema", "z4inv-report"}, {"version", kReportSchemaVersion}, {"command", command}};
}

json rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("expected a rational as \"p/q\" string: " + j.dump());
    const auto s = j.get<std::string>();
    Rational q;
    try {
        q = Rational(s, 10);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational: " + s);
    }
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

json poly_to_json(const RatPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json e = json::array();
        for (unsigned i = 0; i < p.nvars(); ++i) e.push_back(m.e[i]);
        terms.push_back(json::array({e, rational_to_json(c)}));
    }
    return json{{"nvars", p.nvars()}, {"terms", terms}};
}

RatPoly poly_from_json(const json& j) {
    const unsigned nvars = j.at("nvars").get<unsigned>();
    RatPoly p(nvars);
    for (const auto& t : j.at("terms")) {
        const auto& e = t.at(0);
        if (e.size() != nvars) throw std::invalid_argument("exponent vector has wrong length: " + e.dump());
        Monomial m;
        for (unsigned i = 0; i < nvars; ++i) m.e[i] = e.at(i).get<std::uint16_t>();
        p.add_term(m, rational_from_json(t.at(1)));
    }
    return p;
}

json matrix_to_json(const CycMatrix& m) {
    json rows = json::array();
    for (unsigned r = 0; r < m.size(); ++r) {
        json row = json::array();
        for (unsigned c = 0; c < m.size(); ++c) {
            json entry = json::array();
            for (const auto& q : m(r, c).coeffs()) entry.push_back(rational_to_json(q));
            row.push_back(entry);
        }
        rows.push_back(row);
    }
    return json{{"order", m.order()}, {"size", m.size()}, {"rows", rows}};
}

CycMatrix matrix_from_json(const json& j) {
    const unsigned order = j.value("order", 1u);
    const auto& rows = j.at("rows");
    const unsigned size = j.value("size", static_cast<unsigned>(rows.size()));
    if (size == 0 || rows.size() != size) throw std::invalid_argument("matrix: row count differs from size");
    std::vector<Cyclotomic> entries;
    for (const auto& row : rows) {
        if (row.size() != size) throw std::invalid_argument("matrix: ragged row");
        for (const auto& e : row) {
            // A bare number or string is a rational entry.
            if (!e.is_array()) {
                entries.push_back(Cyclotomic(rational_from_json(e)).promoted(order));
                continue;
            }
            std::vector<Rational> coeffs;
            for (const auto& q : e) coeffs.push_back(rational_from_json(q));
            entries.emplace_back(order, std::move(coeffs));
        }
    }
    return CycMatrix(size, order, std::move(entries));
}

std::vector<CycMatrix> read_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    std::vector<CycMatrix> gens;
    for (const auto& m : j.at("generators")) gens.push_back(matrix_from_json(m));
    if (gens.empty()) throw std::invalid_argument(path + ": no generators");
    for (const auto& g : gens)
        if (g.size() != gens.front().size() || g.order() != gens.front().order())
            throw std::invalid_argument(path + ": generators differ in size or field");
    return gens;
}

json genmat_to_json(const Z4Mat& m) {
    json rows = json::array();
    for (const auto& r : m.rows) {
        std::string s;
        for (auto x : r) s += static_cast<char>('0' + x);
        rows.push_back(s);
    }
    return json{{"length", m.length}, {"rows", rows}};
}

Z4Mat genmat_from_json(const json& j) {
    std::string text;
    for (const auto& r : j.at("rows")) text += r.get<std::string>() + "\n";
    Z4Mat m = parse_genmat(text);
    if (m.length != j.at("length").get<std::size_t>()) throw std::invalid_argument("genmat: length mismatch");
    return m;
}

// --- Workbench --------------------------------------------------------------

namespace {

std::string generator_key(const std::vector<CycMatrix>& gens) {
    std::string key;
    for (const auto& g : gens) key += g.key() + "\n";
    return key;
}

json group_to_json(const NamedGroup& g) {
    json gens = json::array(), elems = json::array();
    for (const auto& m : g.group.generators) gens.push_back(matrix_to_json(m));
    for (const auto& m : g.group.elements) elems.push_back(matrix_to_json(m));
    return json{{"variant", g.variant}, {"generators", gens}, {"elements", elems}};
}

NamedGroup group_from_json(const std::string& name, const json& j) {
    FiniteMatrixGroup fg;
    for (const auto& m : j.at("generators")) fg.generators.push_back(matrix_from_json(m));
    for (const auto& m : j.at("elements")) fg.elements.push_back(matrix_from_json(m));
    return assemble_group(name, j.at("variant").get<std::string>(), std::move(fg));
}

}  // namespace

Workbench::Workbench(RunConfig cfg) : cfg_(std::move(cfg)), cache_(cfg_.cache_dir) { cfg_.validate(); }

SpanOptions Workbench::span_options() const {
    SpanOptions o;
    o.primes = cfg_.primes;
    return o;
}

EpolyOptions Workbench::epoly_options() const {
    EpolyOptions o;
    o.primes = cfg_.primes;
    o.workers = cfg_.workers;
    return o;
}

CweOptions Workbench::cwe_options() const {
    CweOptions o;
    o.workers = cfg_.workers;
    o.budget = cfg_.budget;
    return o;
}

const NamedGroup& Workbench::group(const std::string& name) {
    if (!is_named_group(name)) throw std::invalid_argument("unknown group: " + name);
    if (!cache_.enabled()) return named_group(name);
    const std::string key = "named:" + name + "\n" + generator_key(named_generators(name));
    if (auto hit = cache_.get("group", key)) {
        preload_named_group(group_from_json(name, json::parse(*hit)));
        return named_group(name);
    }
    const NamedGroup& g = named_group(name);
    cache_.put("group", key, group_to_json(g).dump());
    return g;
}

NamedGroup Workbench::group_from_file(const std::string& path) {
    const auto gens = read_generator_file(path);
    const std::string name = "file";
    const std::string key = "file\n" + generator_key(gens);
    if (auto hit = cache_.get("group", key)) return group_from_json(name, json::parse(*hit));
    NamedGroup g = make_group(name, gens);
    cache_.put("group", key, group_to_json(g).dump());
    return g;
}

RatPoly Workbench::cwe(const Z4Mat& m) {
    const std::string key = std::to_string(m.length) + "\n" + format_genmat(m, true);
    if (auto it = cwe_memo_.find(key); it != cwe_memo_.end()) return it->second;
    RatPoly p(4);
    if (auto hit = cache_.get("cwe", key)) {
        p = poly_from_json(json::parse(*hit));
    } else {
        p = complete_weight_enumerator(standard_form(m), cwe_options());
        cache_.put("cwe", key, poly_to_json(p).dump());
    }
    return cwe_memo_.emplace(key, std::move(p)).first->second;
}

RatPoly Workbench::builtin_cwe(const std::string& name) { return cwe(builtin_matrix(name)); }

RatPoly Workbench::phi(const NamedGroup& g, unsigned k) {
    const std::string key = generator_key(g.group.generators) + "k=" + std::to_string(k);
    if (auto hit = cache_.get("phi", key)) return poly_from_json(json::parse(*hit));
    RatPoly p = e_polynomial(g.cosets, k);
    cache_.put("phi", key, poly_to_json(p).dump());
    return p;
}

const Workbench::WeightEnumeratorPool& Workbench::weight_enumerators(bool with_length32) {
    if (auto it = pools_.find(with_length32); it != pools_.end()) return it->second;
    const NamedGroup& g8 = group("G8");
    auto named = [](const std::string& n, RatPoly p) {
        const unsigned d = p.homogeneous_degree().value_or(0);
        return NamedPoly{n, std::move(p), d};
    };
    WeightEnumeratorPool pool;
    pool.members.push_back(named("p8a", builtin_fixture("p8a")));
    pool.members.push_back(named("p8b", builtin_fixture("p8b")));
    pool.members.push_back(named("o8", builtin_cwe("o8")));
    pool.members.push_back(named("k8", builtin_cwe("k8")));
    pool.members.push_back(named("p16a", builtin_fixture("p16a")));
    std::vector<NamedPoly> candidates;
    for (const auto& c : length16_candidates()) candidates.push_back(named(c, builtin_cwe(c)));
    pool.substitute =
        choose_length16_substitute(pool.members, candidates, molien_series(g8.group, 16), span_options());
    for (const auto& c : candidates)
        if (pool.substitute.chosen && c.name == *pool.substitute.chosen) pool.members.push_back(c);
    for (const char* n : {"q24a", "q24b", "g24"}) pool.members.push_back(named(n, builtin_cwe(n)));
    if (with_length32) pool.members.push_back(named("q32", builtin_cwe("q32")));
    return pools_.emplace(with_length32, std::move(pool)).first->second;
}

// --- golden tables ------------------------------------------------------------

Tier parse_tier(const std::string& s) {
    if (s == "core") return Tier::Core;
    if (s == "extended") return Tier::Extended;
    throw std::invalid_argument("tier must be core or extended: " + s);
}

std::string tier_name(Tier t) { return t == Tier::Core ? "core" : "extended"; }

json golden_tables() {
    const std::string path = data_dir() + "/golden_tables.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);
    if (j.at("version").get<int>() != 1) throw std::runtime_error(path + ": unsupported version");
    return j.at("tables");
}

std::size_t TablesReport::count(const std::string& status) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [&](const CellCheck& c) { return c.status == status; }));
}

namespace {

long as_long(const Rational& q) {
    if (q.get_den() != 1) throw std::logic_error("dimension is not an integer: " + q.get_str());
    return q.get_num().get_si();
}

using Cell = std::optional<long>;  // nullopt: skipped

struct TableLayout {
    std::vector<unsigned> ks;
    std::vector<std::pair<std::string, std::vector<long>>> rows;
    std::string caption;
};

TableLayout read_table(const json& tables, int t) {
    const auto& j = tables.at(std::to_string(t));
    TableLayout s;
    s.caption = j.value("caption", "");
    s.ks = j.at("k").get<std::vector<unsigned>>();
    for (const auto& [row, vals] : j.at("rows").items()) {
        s.rows.emplace_back(row, vals.get<std::vector<long>>());
        if (s.rows.back().second.size() != s.ks.size()) throw std::runtime_error("golden table " + std::to_string(t) + ": ragged row " + row);
    }
    return s;
}

std::map<unsigned, long> sweep_dims(const NamedGroup& g, unsigned bound, const PowerSeries& molien,
                                    const EpolyOptions& opts) {
    std::map<unsigned, long> out;
    for (const auto& r : e_ring_sweep(g.cosets, g.step, bound, molien, opts).rows) out[r.k] = static_cast<long>(r.dim);
    return out;
}

}  // namespace

TablesReport verify_tables(const std::vector<int>& tables, Tier tier, Workbench& wb) {
    const json golden = golden_tables();
    const bool extended = tier == Tier::Extended;
    TablesReport rep;
    rep.tier = tier;
    const std::string skip_enum = "needs the length-32 enumeration (extended tier)";
    const std::string skip_deg = "E-ring degree above 48 (extended tier)";

    for (int t : tables) {
        if (t < 1 || t > 6) throw std::invalid_argument("no table " + std::to_string(t));
        const TableLayout layout = read_table(golden, t);
        const unsigned top = *std::max_element(layout.ks.begin(), layout.ks.end());
        // row label -> k -> computed (or skip reason)
        std::map<std::string, std::map<unsigned, long>> computed;
        std::map<std::string, std::map<unsigned, std::string>> skipped;

        auto molien_row = [&](const std::string& row, const std::string& group) {
            const auto m = molien_series(wb.group(group).group, top);
            for (unsigned k : layout.ks) computed[row][k] = as_long(m[k]);
        };

        switch (t) {
            case 1:
            case 4: {
                molien_row("R8", "G8");
                const auto& pool = wb.weight_enumerators(extended);
                std::vector<unsigned> ks;
                for (unsigned k : layout.ks) {
                    if (k >= 32 && !extended)
                        skipped[t == 1 ? "W" : "Rtilde"][k] = skip_enum;
                    else
                        ks.push_back(k);
                }
                const auto molien = molien_series(wb.group("G8").group, top);
                if (t == 1) {
                    for (const auto& r : ring_dims(pool.members, ks, molien, wb.span_options()))
                        computed["W"][r.k] = static_cast<long>(r.achieved);
                } else {
                    const auto cr = combined_ring_check({8, 16, 24}, pool.members, ks, {}, false, wb.span_options());
                    for (const auto& r : cr.dims) computed["Rtilde"][r.k] = static_cast<long>(r.achieved);
                }
                std::string names;
                for (const auto& m : pool.members) names += (names.empty() ? "" : " ") + m.name;
                rep.notes.push_back("table " + std::to_string(t) + ": weight enumerators " + names);
                rep.notes.push_back("table " + std::to_string(t) + ": length-16 substitute " +
                                    pool.substitute.chosen.value_or("none found"));
                if (t == 4) rep.notes.push_back("table 4: E-polynomials of G8 in weights 8, 16, 24");
                break;
            }
            case 2: {
                const NamedGroup& g = wb.group("G");
                const auto m = molien_series(g.group, top);
                for (unsigned k : layout.ks) computed["R"][k] = as_long(m[k]);
                computed["E"] = sweep_dims(g, top, m, wb.epoly_options());
                break;
            }
            case 3: {
                const NamedGroup& g = wb.group("G8");
                const auto m = molien_series(g.group, top);
                for (unsigned k : layout.ks) computed["R8"][k] = as_long(m[k]);
                const unsigned bound = extended ? top : std::min(top, 48u);
                computed["E8"] = sweep_dims(g, bound, m, wb.epoly_options());
                for (unsigned k : layout.ks)
                    if (k > bound) skipped["E8"][k] = skip_deg;
                break;
            }
            case 5:
            case 6: {
                const NamedGroup& g = wb.group(t == 5 ? "appB-G" : "appB-H");
                const auto m = molien_series(g.group, top);
                for (unsigned k : layout.ks) computed["R"][k] = as_long(m[k]);
                computed["E"] = sweep_dims(g, top, m, wb.epoly_options());
                if (t == 6) rep.notes.push_back("table 6: group generators " + g.variant);
                break;
            }
        }

        for (const auto& [row, vals] : layout.rows) {
            for (std::size_t i = 0; i < layout.ks.size(); ++i) {
                const unsigned k = layout.ks[i];
                CellCheck c{std::to_string(t), row, k, vals[i], std::nullopt, "", ""};
                if (auto s = skipped[row].find(k); s != skipped[row].end()) {
                    c.status = "skipped";
                    c.note = s->second;
                } else if (auto v = computed[row].find(k); v != computed[row].end()) {
                    c.computed = v->second;
                    c.status = v->second == c.expected ? "pass" : "fail";
                } else {
                    throw std::logic_error("table " + c.table + " row " + row + ": no value at k=" + std::to_string(k));
                }
                rep.cells.push_back(std::move(c));
            }
        }
    }
    return rep;
}

std::string to_text(const TablesReport& r) {
    std::ostringstream os;
    std::string current;
    for (const auto& c : r.cells) {
        if (c.table != current) {
            current = c.table;
            os << "table " << c.table << "\n";
        }
        os << "  " << std::left << std::setw(7) << c.row << "k=" << std::setw(4) << c.k << " expected "
           << std::setw(5) << c.expected << " computed " << std::setw(5)
           << (c.computed ? std::to_string(*c.computed) : std::string("-")) << " "
           << (c.status == "fail" ? "FAIL" : c.status);
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    os << "tier " << tier_name(r.tier) << ": " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
       << r.count("skipped") << " skipped\n";
    return os.str();
}

json to_json(const TablesReport& r) {
    json j = report_envelope("verify-tables");
    j["tier"] = tier_name(r.tier);
    json cells = json::array();
    for (const auto& c : r.cells) {
        json cj{{"table", c.table}, {"row", c.row}, {"k", c.k}, {"expected", c.expected}, {"status", c.status}};
        cj["computed"] = c.computed ? json(*c.computed) : json(nullptr);
        if (!c.note.empty()) cj["note"] = c.note;
        cells.push_back(cj);
    }
    j["cells"] = cells;
    j["notes"] = r.notes;
    j["summary"] = {{"pass", r.count("pass")}, {"fail", r.count("fail")}, {"skipped", r.count("skipped")}};
    j["ok"] = r.ok();
    return j;
}

}  // namespace z4inv
