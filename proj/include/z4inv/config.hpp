#pragma once

// Run configuration.  Precedence: command-line flag > environment > default.
//
//   Z4INV_DATA_DIR    bundled matrices and golden tables
//   Z4INV_CACHE_DIR   result cache (empty disables caching)
//   Z4INV_WORKERS     worker threads
//   Z4INV_PRIMES      primes for modular rank certification
//   Z4INV_BUDGET      maximum codewords per enumeration
//   Z4INV_FORMAT      text | json

#include <cstdint>
#include <string>

namespace z4inv {

struct RunConfig {
    std::string cache_dir;
    unsigned workers = 1;
    unsigned primes = 3;
    std::size_t exact_max_cells = 200000;
    std::uint64_t budget = std::uint64_t(1) << 33;
    std::string format = "text";

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

RunConfig config_from_env();

std::string data_dir();

}  // namespace z4inv
