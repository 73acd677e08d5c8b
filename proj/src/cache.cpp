#include "z4inv/cache.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace z4inv {

namespace fs = std::filesystem;

// Bump when any cached encoding changes.
constexpr const char* kCacheVersion = "v1";

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::string ResultCache::path(const std::string& kind, const std::string& key) const {
    return (fs::path(dir_) / kCacheVersion / kind / (sha256_hex(key) + ".json")).string();
}

std::optional<std::string> ResultCache::get(const std::string& kind, const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path(kind, key));
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ResultCache::put(const std::string& kind, const std::string& key, const std::string& value) const {
    if (!enabled()) return;
    const fs::path p = path(kind, key);
    fs::create_directories(p.parent_path());
    // Write then rename so concurrent readers never see a partial file.
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << value;
    }
    fs::rename(tmp, p);
}

}  // namespace z4inv
