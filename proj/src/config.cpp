#include "z4inv/config.hpp"

#include <cstdlib>
#include <stdexcept>

namespace z4inv {

namespace {

const char* env(const char* name) {
    const char* v = std::getenv(name);
    return v && *v ? v : nullptr;
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = env(name);
    if (!v) return fallback;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + ": not a number: " + v);
    }
}

}  // namespace

void RunConfig::validate() const {
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (primes < 1) throw std::invalid_argument("primes must be at least 1");
    if (format != "text" && format != "json") throw std::invalid_argument("format must be text or json");
}

RunConfig config_from_env() {
    RunConfig c;
    if (const char* v = env("Z4INV_CACHE_DIR")) c.cache_dir = v;
    c.workers = static_cast<unsigned>(env_u64("Z4INV_WORKERS", c.workers));
    c.primes = static_cast<unsigned>(env_u64("Z4INV_PRIMES", c.primes));
    c.budget = env_u64("Z4INV_BUDGET", c.budget);
    if (const char* v = env("Z4INV_FORMAT")) c.format = v;
    return c;
}

std::string data_dir() {
    if (const char* v = env("Z4INV_DATA_DIR")) return v;
    return Z4INV_DATA_DIR;
}

}  // namespace z4inv
