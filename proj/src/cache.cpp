#include "difftop/cache.hpp"

#include "json.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace difftop {

namespace {

// holds an flock for the lifetime of the object
class FileLock {
public:
    FileLock(const std::string& path, bool exclusive) {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path);
        if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
            ::close(fd_);
            throw std::runtime_error("cannot lock " + path);
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cache_key(const std::string& op, const std::string& params) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(op + "|" + params + "|" + kEngineVersion)));
    return buf;
}

std::string resolve_cache_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* e = std::getenv("DIFFTOP_CACHE"); e && *e) return e;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/difftop";
    if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/difftop";
    return ".difftop-cache";
}

Cache::Cache(std::string dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::string Cache::shard(const std::string& key) const { return dir_ + "/" + key.substr(0, 2) + ".jsonl"; }

std::optional<std::string> Cache::get(const std::string& key) const {
    std::string path = shard(key);
    if (!std::filesystem::exists(path)) return std::nullopt;
    FileLock lock(path + ".lock", false);
    std::ifstream in(path);
    std::string line;
    std::optional<std::string> hit;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("key")) continue;
        if (j["key"] == key) hit = j["payload"].get<std::string>();
    }
    return hit;
}

void Cache::put(const std::string& key, const std::string& op, const std::string& payload) const {
    std::string path = shard(key);
    FileLock lock(path + ".lock", true);
    auto now = std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::system_clock::now().time_since_epoch())
                   .count();
    nlohmann::json j{{"key", key}, {"op", op}, {"payload", payload}, {"created_at", now}};
    std::ofstream out(path, std::ios::app);
    out << j.dump() << "\n";
}

}  // namespace difftop
