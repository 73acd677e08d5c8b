#pragma once

// Content-addressed result cache: one file per (kind, SHA-256 of the
// canonical input).  An empty directory disables the cache.

#include <optional>
#include <string>

namespace z4inv {

std::string sha256_hex(const std::string& data);

class ResultCache {
public:
    explicit ResultCache(std::string dir = {});

    bool enabled() const { return !dir_.empty(); }
    std::optional<std::string> get(const std::string& kind, const std::string& key) const;
    void put(const std::string& kind, const std::string& key, const std::string& value) const;

private:
    std::string path(const std::string& kind, const std::string& key) const;
    std::string dir_;
};

}  // namespace z4inv
