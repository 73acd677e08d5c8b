#pragma once

// Codes over Z4: generator matrices, standard form, duality checks and the
// complete weight enumerator.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "z4inv/polyring.hpp"

namespace z4inv {

using Z4Row = std::vector<std::uint8_t>;

struct Z4Mat {
    std::vector<Z4Row> rows;
    std::size_t length = 0;

    friend bool operator==(const Z4Mat&, const Z4Mat&) = default;
};

/// Rows are either whitespace-separated digits ("1 0 2") or packed digit
/// strings ("102"); '&' and trailing '\\' from LaTeX tables are ignored.
/// Blank lines and lines starting with '#' are skipped.
Z4Mat parse_genmat(const std::string& text);
Z4Mat read_genmat(const std::string& path);
std::string format_genmat(const Z4Mat& m, bool packed = false);

Z4Mat direct_sum(const Z4Mat& a, const Z4Mat& b);

struct Z4Code {
    std::size_t length = 0;
    Z4Mat original;
    std::vector<Z4Row> order4;  // k1 rows with a unit pivot
    std::vector<Z4Row> order2;  // k2 rows, all entries even

    std::size_t k1() const { return order4.size(); }
    std::size_t k2() const { return order2.size(); }
    /// log2 |C| = 2 k1 + k2
    std::size_t log2_size() const { return 2 * k1() + k2(); }
    Integer size() const;
};

Z4Code standard_form(const Z4Mat& m);

unsigned inner(const Z4Row& a, const Z4Row& b);  // mod 4
unsigned norm8(const Z4Row& a);                  // sum a_i^2 mod 8

bool is_self_orthogonal(const Z4Code& c);
bool is_self_dual(const Z4Code& c);
/// Self-dual and every standard-form generator has norm 0 mod 8.
bool is_type_ii(const Z4Code& c);

/// Uniform random codeword (uniform coefficients on the standard form).
Z4Row random_codeword(const Z4Code& c, std::mt19937_64& rng);

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::size_t log2_required, std::uint64_t budget)
        : std::runtime_error("enumeration needs 2^" + std::to_string(log2_required) + " codewords, budget is " +
                             std::to_string(budget)),
          log2_required_(log2_required) {}
    std::size_t log2_required() const { return log2_required_; }

private:
    std::size_t log2_required_;
};

struct CweOptions {
    unsigned workers = 1;
    std::uint64_t budget = std::uint64_t(1) << 40;  // max codewords
};

/// Exact CW_C(t0, t1, t2, t3); requires length <= 64.
RatPoly complete_weight_enumerator(const Z4Code& c, const CweOptions& opts = {});

// --- bundled data ---------------------------------------------------------

struct BuiltinEntry {
    std::string name;
    std::string path;
    std::size_t length = 0;
    std::string source;
};

std::vector<BuiltinEntry> builtin_codes();
std::vector<BuiltinEntry> builtin_fixtures();
/// Length-16 codes to try, in manifest order, when a second length-16 CWE is needed.
std::vector<std::string> length16_candidates();

Z4Mat builtin_matrix(const std::string& name);
/// Printed CWE polynomial of a fixture (4 variables).
RatPoly builtin_fixture(const std::string& name);

}  // namespace z4inv
