// z4inv: command-line front end.  Exit status 0 on success, 1 when a
// verification finds a mismatch, 2 on usage or input errors, 3 when an
// enumeration exceeds its budget.

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "z4inv/codes.hpp"
#include "z4inv/config.hpp"
#include "z4inv/epoly.hpp"
#include "z4inv/groups.hpp"
#include "z4inv/invariants.hpp"
#include "z4inv/report.hpp"

using namespace z4inv;

namespace {

struct Globals {
    std::optional<unsigned> workers, primes;
    std::optional<std::string> cache_dir, format;
    std::optional<std::uint64_t> budget;

    RunConfig config() const {
        RunConfig c = config_from_env();
        if (workers) c.workers = *workers;
        if (primes) c.primes = *primes;
        if (cache_dir) c.cache_dir = *cache_dir;
        if (format) c.format = *format;
        if (budget) c.budget = *budget;
        c.validate();
        return c;
    }
};

struct Target {
    std::string group, file, builtin;
    std::optional<unsigned> upto;
};

bool json_out(const Workbench& wb) { return wb.config().format == "json"; }

void emit(const Workbench& wb, const json& j, const std::string& text) {
    if (json_out(wb))
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

NamedGroup resolve_group(Workbench& wb, const Target& t) {
    if (!t.file.empty()) return wb.group_from_file(t.file);
    if (t.group.empty()) throw CLI::ValidationError("--group or --file is required");
    return wb.group(t.group);
}

std::string join(const std::vector<unsigned>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

int cmd_group(Workbench& wb, const std::string& action, const Target& t) {
    const NamedGroup g = resolve_group(wb, t);
    json j = report_envelope("group " + action);
    j["group"] = g.name;
    j["variant"] = g.variant;
    std::ostringstream os;
    if (action == "order") {
        j["order"] = g.group.order();
        os << g.group.order() << "\n";
        if (g.variant != "as printed") os << "variant: " << g.variant << "\n";
    } else if (action == "molien") {
        const unsigned upto = t.upto.value_or(40);
        const auto m = molien_series(g.group, upto);
        json coeffs = json::array();
        for (unsigned k = 0; k <= upto; ++k) {
            coeffs.push_back(rational_to_json(m[k]));
            os << k << " " << m[k].get_str() << "\n";
        }
        j["coefficients"] = coeffs;
        if (is_named_group(g.name)) {
            const bool agrees = expand_formula(g.molien_formula, upto) == m;
            j["closed_form_agrees"] = agrees;
            os << "closed form agrees up to " << upto << ": " << (agrees ? "yes" : "no") << "\n";
        }
    } else {
        const auto& c = g.cosets;
        j["stabilizer_order"] = c.stabilizer.size();
        j["kappa"] = c.kappa();
        json reps = json::array();
        os << "|K|=" << c.stabilizer.size() << " kappa=" << c.kappa() << "\n";
        for (const auto& r : c.reps) {
            json row = json::array();
            os << " ";
            for (const auto& x : r.row(0)) {
                row.push_back(x.to_string());
                os << " [" << x.to_string() << "]";
            }
            os << "\n";
            reps.push_back(row);
        }
        j["first_rows"] = reps;
    }
    emit(wb, j, os.str());
    return 0;
}

int cmd_epoly(Workbench& wb, const std::string& action, std::optional<unsigned> k, const Target& t) {
    const NamedGroup g = resolve_group(wb, t);
    json j = report_envelope("epoly " + action);
    j["group"] = g.name;
    std::ostringstream os;
    if (action == "compute") {
        if (!k) throw CLI::ValidationError("epoly compute needs a weight");
        const RatPoly p = wb.phi(g, *k);
        j["k"] = *k;
        j["polynomial"] = poly_to_json(p);
        os << to_text(p) << "\n";
        emit(wb, j, os.str());
        return 0;
    }
    const unsigned bound = t.upto.value_or(g.search_bound);
    std::optional<PowerSeries> molien;
    try {
        molien = molien_series(g.group, bound);
    } catch (const std::exception&) {
        // non-rational series for a user group: dims are still reported
    }
    const auto rep = e_ring_sweep(g.cosets, g.step, bound, molien, wb.epoly_options());
    j["step"] = rep.step;
    j["bound"] = rep.bound;
    j["primes"] = rep.certificate.primes;
    if (action == "dims") {
        json rows = json::array();
        os << "k     dim E   dim R   new generator\n";
        for (const auto& r : rep.rows) {
            json row{{"k", r.k}, {"dim", r.dim}, {"phi_zero", r.phi_zero}, {"new_generator", r.new_generator}};
            row["molien"] = r.molien ? rational_to_json(*r.molien) : json(nullptr);
            rows.push_back(row);
            os << std::left << std::setw(6) << r.k << std::setw(8) << r.dim << std::setw(8)
               << (r.molien ? r.molien->get_str() : std::string("-")) << (r.new_generator ? "yes" : "") << "\n";
        }
        j["rows"] = rows;
    } else {
        j["generators"] = rep.generators;
        os << join(rep.generators) << "\n";
    }
    emit(wb, j, os.str());
    return 0;
}

Z4Mat resolve_matrix(const Target& t) {
    if (!t.file.empty()) return read_genmat(t.file);
    if (!t.builtin.empty()) return builtin_matrix(t.builtin);
    throw CLI::ValidationError("--builtin or --file is required");
}

int cmd_code(Workbench& wb, const std::string& action, const Target& t) {
    const Z4Mat m = resolve_matrix(t);
    json j = report_envelope("code " + action);
    j["matrix"] = genmat_to_json(m);
    std::ostringstream os;
    if (action == "cwe") {
        const RatPoly p = wb.cwe(m);
        j["cwe"] = poly_to_json(p);
        os << to_text(p) << "\n";
    } else {
        const Z4Code c = standard_form(m);
        const bool so = is_self_orthogonal(c), sd = is_self_dual(c), t2 = is_type_ii(c);
        j["length"] = c.length;
        j["k1"] = c.k1();
        j["k2"] = c.k2();
        j["size"] = c.size().get_str();
        j["self_orthogonal"] = so;
        j["self_dual"] = sd;
        j["type_ii"] = t2;
        auto yn = [](bool b) { return b ? "true" : "false"; };
        os << "length: " << c.length << "\n"
           << "k1: " << c.k1() << "  k2: " << c.k2() << "\n"
           << "|C| = 4^" << c.k1() << " 2^" << c.k2() << " = " << c.size().get_str() << "\n"
           << "self-orthogonal: " << yn(so) << "\n"
           << "self-dual: " << yn(sd) << "\n"
           << "Type II: " << yn(t2) << "\n";
    }
    emit(wb, j, os.str());
    return 0;
}

json span_rows_json(const std::vector<GradedSpanReport>& rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"k", r.k},
                       {"achieved", r.achieved},
                       {"expected", r.expected ? rational_to_json(*r.expected) : json(nullptr)},
                       {"certificate", r.certificate.method}});
    return out;
}

std::string span_rows_text(const std::string& label, const std::vector<GradedSpanReport>& rows) {
    std::ostringstream os;
    for (const auto& r : rows)
        os << label << " k=" << r.k << ": " << r.achieved << " (dim R8 " << (r.expected ? r.expected->get_str() : "-")
           << ", " << r.certificate.method << ")\n";
    return os.str();
}

int cmd_ring(Workbench& wb, const std::string& action, Tier tier) {
    const bool ext = tier == Tier::Extended;
    const auto& pool = wb.weight_enumerators(ext);
    std::vector<unsigned> degrees{8, 16, 24};
    if (ext) degrees.insert(degrees.end(), {32, 40});
    const auto molien = molien_series(wb.group("G8").group, 48);
    json j = report_envelope("ring " + action);
    j["tier"] = tier_name(tier);
    std::ostringstream os;
    json members = json::array();
    for (const auto& m : pool.members) members.push_back(m.name);
    j["weight_enumerators"] = members;
    j["length16_substitute"] = pool.substitute.chosen ? json(*pool.substitute.chosen) : json(nullptr);
    os << "length-16 substitute: " << pool.substitute.chosen.value_or("none found") << "\n";
    bool ok = true;
    if (action == "w") {
        const auto rows = ring_dims(pool.members, degrees, molien, wb.span_options());
        j["rows"] = span_rows_json(rows);
        os << span_rows_text("dim W", rows);
        for (const auto& r : rows) ok = ok && r.matches();
    } else if (action == "budget") {
        const auto rows = enumerator_budget(pool.members, molien, degrees, wb.span_options());
        json out = json::array();
        for (const auto& r : rows) {
            out.push_back({{"k", r.k},
                           {"expected", rational_to_json(r.expected)},
                           {"from_lower", r.from_lower},
                           {"demand", r.demand},
                           {"budget", r.budget},
                           {"accepted", r.accepted},
                           {"achieved", r.achieved}});
            os << "k=" << r.k << ": demand " << r.demand << " (limit " << r.budget << "), accepted";
            for (const auto& a : r.accepted) os << " " << a;
            os << (r.within_budget() ? "" : "  OVER LIMIT") << "\n";
            ok = ok && r.within_budget();
        }
        j["rows"] = out;
    } else {
        std::vector<unsigned> deps;
        if (ext) deps = {32, 40, 48};
        const auto rep = combined_ring_check({8, 16, 24}, pool.members, degrees, deps, true, wb.span_options());
        j["rows"] = span_rows_json(rep.dims);
        os << span_rows_text("dim R~", rep.dims);
        json dj = json::array();
        for (const auto& d : rep.dependencies) {
            dj.push_back({{"k", d.k}, {"in_span", d.in_span}, {"span_dim", d.span_dim}});
            os << "phi" << d.k << " in span: " << (d.in_span ? "yes" : "no") << "\n";
            ok = ok && d.in_span;
        }
        j["dependencies"] = dj;
        j["pruned_subset"] = rep.minimal_subset;
        os << "weight enumerators kept after pruning:";
        for (const auto& n : rep.minimal_subset) os << " " << n;
        os << "\n";
        for (const auto& r : rep.dims) ok = ok && r.matches();
    }
    j["ok"] = ok;
    emit(wb, j, os.str());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant rings of Z4-code weight enumerators and E-polynomials"};
    app.require_subcommand(1);
    Globals gl;
    app.add_option("--workers", gl.workers, "worker threads (env Z4INV_WORKERS)")->check(CLI::PositiveNumber);
    app.add_option("--primes", gl.primes, "primes for rank certification (env Z4INV_PRIMES)")
        ->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", gl.cache_dir, "result cache directory (env Z4INV_CACHE_DIR)");
    app.add_option("--format", gl.format, "text or json (env Z4INV_FORMAT)")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--budget", gl.budget, "maximum codewords per enumeration (env Z4INV_BUDGET)");

    Target target;
    auto add_group_opts = [&](CLI::App* s) {
        s->add_option("--group", target.group, "G, G8, appB-G or appB-H");
        s->add_option("--file", target.file, "generator matrices in JSON");
        s->add_option("--upto", target.upto, "largest degree");
    };

    std::string action;
    std::optional<unsigned> weight;
    std::string tier = "core";
    std::vector<int> tables;

    auto* group = app.add_subcommand("group", "group order, Molien series, cosets");
    group->add_option("action", action)->required()->check(CLI::IsMember({"order", "molien", "cosets"}));
    add_group_opts(group);

    auto* epoly = app.add_subcommand("epoly", "E-polynomials and the rings they generate");
    epoly->add_option("action", action)->required()->check(CLI::IsMember({"compute", "dims", "mingens"}));
    epoly->add_option("k", weight, "weight (compute)");
    add_group_opts(epoly);

    auto* code = app.add_subcommand("code", "complete weight enumerator and duality checks");
    code->add_option("action", action)->required()->check(CLI::IsMember({"cwe", "check"}));
    code->add_option("--builtin", target.builtin, "bundled code name");
    code->add_option("--file", target.file, "generator matrix file");

    auto* ring = app.add_subcommand("ring", "subrings of the G8 invariant ring");
    ring->add_option("action", action)->required()->check(CLI::IsMember({"w", "budget", "combined"}));
    ring->add_option("--tier", tier, "core (default) or extended")->check(CLI::IsMember({"core", "extended"}));

    auto* verify = app.add_subcommand("verify-tables", "recompute the golden tables");
    verify->add_option("tables", tables, "table numbers (default: all)")->check(CLI::Range(1, 6));
    verify->add_option("--tier", tier, "core (default) or extended")->check(CLI::IsMember({"core", "extended"}));

    for (auto* s : {group, epoly, code, ring, verify}) s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        Workbench wb(gl.config());
        if (*group) return cmd_group(wb, action, target);
        if (*epoly) return cmd_epoly(wb, action, weight, target);
        if (*code) return cmd_code(wb, action, target);
        if (*ring) return cmd_ring(wb, action, parse_tier(tier));
        if (tables.empty()) tables = {1, 2, 3, 4, 5, 6};
        const auto rep = verify_tables(tables, parse_tier(tier), wb);
        emit(wb, to_json(rep), to_text(rep));
        return rep.ok() ? 0 : 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "; rerun with --budget " << std::fixed << std::setprecision(0)
                  << std::ldexp(1.0, static_cast<int>(e.log2_required())) << " or more\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
