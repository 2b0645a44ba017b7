#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace difftop {

inline constexpr const char* kEngineVersion = "difftop-1";

std::uint64_t fnv1a64(const std::string& s);
// 16 hex digits of fnv1a64(op | canonical params | engine version)
std::string cache_key(const std::string& op, const std::string& params);

// flag value, else $DIFFTOP_CACHE, else $XDG_CACHE_HOME/difftop, else $HOME/.cache/difftop
std::string resolve_cache_dir(const std::string& flag);

// JSON-lines store, one file per two-hex-digit shard, flock on the shard
class Cache {
public:
    explicit Cache(std::string dir);
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& op, const std::string& payload) const;
    const std::string& dir() const { return dir_; }

private:
    std::string shard(const std::string& key) const;
    std::string dir_;
};

}  // namespace difftop
