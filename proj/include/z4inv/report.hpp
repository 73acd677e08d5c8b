#pragma once

// JSON encodings, cached computations shared by the command-line tool and
// the acceptance runner, and golden-table verification.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "z4inv/cache.hpp"
#include "z4inv/codes.hpp"
#include "z4inv/config.hpp"
#include "z4inv/epoly.hpp"
#include "z4inv/groups.hpp"
#include "z4inv/invariants.hpp"

namespace z4inv {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// {"schema": "z4inv-report", "version": 1, "command": command}
json report_envelope(const std::string& command);

json rational_to_json(const Rational& q);  // "p/q" or "p"
Rational rational_from_json(const json& j);

/// {"nvars": n, "terms": [[[e0, ..., e_{n-1}], "p/q"], ...]} in canonical term order.
json poly_to_json(const RatPoly& p);
RatPoly poly_from_json(const json& j);

/// {"order": n, "size": m, "rows": [[entry, ...], ...]}; an entry is the list
/// of power-basis coefficients of Q(zeta_n) as "p/q" strings.
json matrix_to_json(const CycMatrix& m);
CycMatrix matrix_from_json(const json& j);

/// File of the form {"generators": [matrix, ...]}.
std::vector<CycMatrix> read_generator_file(const std::string& path);

/// {"length": n, "rows": ["0123...", ...]}
json genmat_to_json(const Z4Mat& m);
Z4Mat genmat_from_json(const json& j);

/// Process-wide results keyed by content; optionally backed by a ResultCache.
class Workbench {
public:
    explicit Workbench(RunConfig cfg);

    const RunConfig& config() const { return cfg_; }
    SpanOptions span_options() const;
    EpolyOptions epoly_options() const;
    CweOptions cwe_options() const;

    /// Named group; its closure goes through the cache.
    const NamedGroup& group(const std::string& name);
    NamedGroup group_from_file(const std::string& path);

    RatPoly cwe(const Z4Mat& m);
    RatPoly builtin_cwe(const std::string& name);
    RatPoly phi(const NamedGroup& g, unsigned k);

    struct WeightEnumeratorPool {
        std::vector<NamedPoly> members;
        SubstituteChoice substitute;
    };
    /// Generators of W: the printed length-8 and length-16 enumerators, the
    /// chosen length-16 substitute, the length-24 codes, and q32 if requested.
    const WeightEnumeratorPool& weight_enumerators(bool with_length32);

private:
    RunConfig cfg_;
    ResultCache cache_;
    std::map<bool, WeightEnumeratorPool> pools_;
    std::map<std::string, RatPoly> cwe_memo_;
};

enum class Tier { Core, Extended };
Tier parse_tier(const std::string& s);
std::string tier_name(Tier t);

json golden_tables();

struct CellCheck {
    std::string table;
    std::string row;
    unsigned k = 0;
    long expected = 0;
    std::optional<long> computed;
    std::string status;  // pass | fail | skipped
    std::string note;
};

struct TablesReport {
    Tier tier = Tier::Core;
    std::vector<CellCheck> cells;
    std::vector<std::string> notes;

    std::size_t count(const std::string& status) const;
    bool ok() const { return count("fail") == 0; }
};

/// Recomputes every cell of the requested tables (1..6).  The core tier
/// skips cells needing the length-32 enumeration or E-ring degrees above 48.
TablesReport verify_tables(const std::vector<int>& tables, Tier tier, Workbench& wb);

std::string to_text(const TablesReport& r);
json to_json(const TablesReport& r);

}  // namespace z4inv
