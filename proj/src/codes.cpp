#include "z4inv/codes.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "z4inv/config.hpp"

namespace z4inv {

Z4Mat parse_genmat(const std::string& text) {
    Z4Mat m;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        Z4Row row;
        for (char ch : line) {
            if (ch >= '0' && ch <= '3')
                row.push_back(static_cast<std::uint8_t>(ch - '0'));
            else if (!(std::isspace(static_cast<unsigned char>(ch)) || ch == '&' || ch == '\\' || ch == ','))
                throw std::invalid_argument("parse_genmat: invalid character '" + std::string(1, ch) + "' on line " +
                                            std::to_string(lineno));
        }
        if (row.empty()) continue;
        if (!m.rows.empty() && row.size() != m.length)
            throw std::invalid_argument("parse_genmat: ragged row on line " + std::to_string(lineno));
        m.length = row.size();
        m.rows.push_back(std::move(row));
    }
    if (m.rows.empty()) throw std::invalid_argument("parse_genmat: no rows");
    return m;
}

Z4Mat read_genmat(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_genmat(ss.str());
}

std::string format_genmat(const Z4Mat& m, bool packed) {
    std::string out;
    for (const auto& r : m.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!packed && i) out += ' ';
            out += static_cast<char>('0' + r[i]);
        }
        out += '\n';
    }
    return out;
}

Z4Mat direct_sum(const Z4Mat& a, const Z4Mat& b) {
    Z4Mat m;
    m.length = a.length + b.length;
    for (const auto& r : a.rows) {
        Z4Row x = r;
        x.resize(m.length, 0);
        m.rows.push_back(std::move(x));
    }
    for (const auto& r : b.rows) {
        Z4Row x(a.length, 0);
        x.insert(x.end(), r.begin(), r.end());
        m.rows.push_back(std::move(x));
    }
    return m;
}

Integer Z4Code::size() const {
    Integer s = 1;
    s <<= log2_size();
    return s;
}

Z4Code standard_form(const Z4Mat& mat) {
    Z4Code c;
    c.length = mat.length;
    c.original = mat;
    std::vector<Z4Row> rows = mat.rows;
    const std::size_t n = mat.length;
    std::size_t piv = 0;
    // Phase 1: unit pivots, full elimination of the pivot column.
    for (std::size_t col = 0; col < n && piv < rows.size(); ++col) {
        std::size_t r = piv;
        while (r < rows.size() && rows[r][col] % 2 == 0) ++r;
        if (r == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        if (rows[piv][col] == 3)
            for (auto& x : rows[piv]) x = static_cast<std::uint8_t>((3 * x) % 4);
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == piv || rows[o][col] == 0) continue;
            const unsigned f = rows[o][col];
            for (std::size_t j = 0; j < n; ++j)
                rows[o][j] = static_cast<std::uint8_t>((rows[o][j] + 4 * 4 - f * rows[piv][j]) % 4);
        }
        ++piv;
    }
    c.order4.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(piv));
    // Phase 2: the remaining rows are even; reduce their halves over GF(2).
    std::vector<Z4Row> half;
    for (std::size_t r = piv; r < rows.size(); ++r) {
        Z4Row h(n);
        for (std::size_t j = 0; j < n; ++j) h[j] = rows[r][j] / 2;
        half.push_back(std::move(h));
    }
    std::size_t p2 = 0;
    for (std::size_t col = 0; col < n && p2 < half.size(); ++col) {
        std::size_t r = p2;
        while (r < half.size() && !half[r][col]) ++r;
        if (r == half.size()) continue;
        std::swap(half[r], half[p2]);
        for (std::size_t o = 0; o < half.size(); ++o)
            if (o != p2 && half[o][col])
                for (std::size_t j = 0; j < n; ++j) half[o][j] ^= half[p2][j];
        ++p2;
    }
    for (std::size_t r = 0; r < p2; ++r) {
        Z4Row x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<std::uint8_t>(2 * half[r][j]);
        c.order2.push_back(std::move(x));
    }
    return c;
}

unsigned inner(const Z4Row& a, const Z4Row& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
    unsigned s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s % 4;
}

unsigned norm8(const Z4Row& a) {
    unsigned s = 0;
    for (auto x : a) s += x * x;
    return s % 8;
}

namespace {

std::vector<Z4Row> all_generators(const Z4Code& c) {
    std::vector<Z4Row> g = c.order4;
    g.insert(g.end(), c.order2.begin(), c.order2.end());
    return g;
}

}  // namespace

bool is_self_orthogonal(const Z4Code& c) {
    const auto g = all_generators(c);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j)
            if (inner(g[i], g[j]) != 0) return false;
    return true;
}

bool is_self_dual(const Z4Code& c) { return is_self_orthogonal(c) && c.log2_size() == c.length; }

bool is_type_ii(const Z4Code& c) {
    if (!is_self_dual(c)) return false;
    for (const auto& g : all_generators(c))
        if (norm8(g) != 0) return false;
    return true;
}

Z4Row random_codeword(const Z4Code& c, std::mt19937_64& rng) {
    Z4Row w(c.length, 0);
    auto add = [&](const Z4Row& r, unsigned k) {
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = static_cast<std::uint8_t>((w[j] + k * r[j]) % 4);
    };
    for (const auto& r : c.order4) add(r, static_cast<unsigned>(rng() % 4));
    for (const auto& r : c.order2) add(r, static_cast<unsigned>(rng() % 2));
    return w;
}

namespace {

// A word is two bit planes: entry j is lo_j + 2 hi_j.
struct Planes {
    std::uint64_t lo = 0, hi = 0;
};

inline void add_into(Planes& w, const Planes& r) {
    const std::uint64_t carry = w.lo & r.lo;
    w.lo ^= r.lo;
    w.hi ^= r.hi ^ carry;
}

Planes to_planes(const Z4Row& r) {
    Planes p;
    for (std::size_t j = 0; j < r.size(); ++j) {
        p.lo |= std::uint64_t(r[j] & 1) << j;
        p.hi |= std::uint64_t(r[j] >> 1) << j;
    }
    return p;
}

struct Enumerator {
    std::vector<Planes> rows;  // digit j adds rows[j]
    std::vector<unsigned> radix;
    std::uint64_t mask;
    unsigned n;

    std::size_t slot(const Planes& w) const {
        const unsigned n1 = std::popcount(w.lo & ~w.hi);
        const unsigned n3 = std::popcount(w.lo & w.hi);
        const unsigned n2 = std::popcount(~w.lo & w.hi & mask);
        return (std::size_t(n1) * (n + 1) + n2) * (n + 1) + n3;
    }

    // Visits every combination of digits [0, m) added to w.  Each step adds
    // one row: the lowest digit whose counter does not wrap.
    void block(Planes w, std::size_t m, std::vector<std::uint64_t>& hist) const {
        std::vector<unsigned> count(m, 0);
        const Planes r0 = m ? rows[0] : Planes{};
        const unsigned rad0 = m ? radix[0] : 1;
        while (true) {
            for (unsigned a = 0;; ++a) {
                ++hist[slot(w)];
                if (a + 1 == rad0) break;
                add_into(w, r0);
            }
            std::size_t j = 1;
            while (j < m) {
                if (++count[j] < radix[j]) break;
                count[j] = 0;
                ++j;
            }
            if (j >= m) return;
            add_into(w, rows[j]);
        }
    }
};

}  // namespace

RatPoly complete_weight_enumerator(const Z4Code& c, const CweOptions& opts) {
    const unsigned n = static_cast<unsigned>(c.length);
    if (n > 64) throw std::invalid_argument("complete_weight_enumerator: length above 64");
    if (c.log2_size() >= 64 || (std::uint64_t(1) << c.log2_size()) > opts.budget)
        throw BudgetExceeded(c.log2_size(), opts.budget);

    Enumerator en;
    en.n = n;
    en.mask = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    for (const auto& r : c.order4) {
        en.rows.push_back(to_planes(r));
        en.radix.push_back(4);
    }
    for (const auto& r : c.order2) {
        en.rows.push_back(to_planes(r));
        en.radix.push_back(2);
    }
    const std::size_t digits = en.rows.size();
    const std::size_t slots = std::size_t(n + 1) * (n + 1) * (n + 1);

    // Fix the top digits per job; aim for several jobs per worker.
    const unsigned workers = std::max(1u, opts.workers);
    std::size_t low = digits;
    std::uint64_t jobs = 1;
    while (low > 0 && jobs < 8ull * workers && low > 4) {
        --low;
        jobs *= en.radix[low];
    }

    std::atomic<std::uint64_t> next{0};
    std::vector<std::vector<std::uint64_t>> hists(workers, std::vector<std::uint64_t>(slots, 0));
    auto work = [&](unsigned id) {
        auto& hist = hists[id];
        for (std::uint64_t job; (job = next.fetch_add(1)) < jobs;) {
            Planes w;
            std::uint64_t rest = job;
            for (std::size_t d = low; d < digits; ++d) {
                const unsigned v = static_cast<unsigned>(rest % en.radix[d]);
                rest /= en.radix[d];
                for (unsigned k = 0; k < v; ++k) add_into(w, en.rows[d]);
            }
            en.block(w, low, hist);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
        for (auto& t : pool) t.join();
    }

    RatPoly out(4);
    for (std::size_t s = 0; s < slots; ++s) {
        std::uint64_t total = 0;
        for (const auto& h : hists) total += h[s];
        if (!total) continue;
        const unsigned n3 = static_cast<unsigned>(s % (n + 1));
        const unsigned n2 = static_cast<unsigned>((s / (n + 1)) % (n + 1));
        const unsigned n1 = static_cast<unsigned>(s / ((n + 1) * (n + 1)));
        Monomial m;
        m.e = {static_cast<std::uint16_t>(n - n1 - n2 - n3), static_cast<std::uint16_t>(n1),
               static_cast<std::uint16_t>(n2), static_cast<std::uint16_t>(n3)};
        Integer v;
        mpz_import(v.get_mpz_t(), 1, 1, sizeof(total), 0, 0, &total);
        out.add_term(m, Rational(v));
    }
    return out;
}

// --- bundled data ---------------------------------------------------------

namespace {

const nlohmann::json& manifest() {
    static const nlohmann::json j = [] {
        const std::string path = data_dir() + "/codes/manifest.json";
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        return nlohmann::json::parse(in);
    }();
    return j;
}

std::vector<BuiltinEntry> entries(const char* key) {
    std::vector<BuiltinEntry> out;
    for (const auto& e : manifest().at(key))
        out.push_back({e.at("name"), data_dir() + "/codes/" + e.at("file").get<std::string>(),
                       e.at("length").get<std::size_t>(), e.value("source", "")});
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<BuiltinEntry> builtin_codes() { return entries("codes"); }
std::vector<BuiltinEntry> builtin_fixtures() { return entries("fixtures"); }

std::vector<std::string> length16_candidates() {
    return manifest().at("length16_candidates").get<std::vector<std::string>>();
}

Z4Mat builtin_matrix(const std::string& name) {
    for (const auto& e : builtin_codes())
        if (e.name == name) return read_genmat(e.path);
    throw std::invalid_argument("unknown builtin code: " + name);
}

RatPoly builtin_fixture(const std::string& name) {
    for (const auto& e : builtin_fixtures())
        if (e.name == name) return parse_poly(slurp(e.path), 4);
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace z4inv
