#include "doctest.h"

#include "difftop/cache.hpp"
#include "difftop/verify.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace difftop;

namespace {

std::string fresh_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("difftop-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    return p.string();
}

}  // namespace

TEST_CASE("fnv1a reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(cache_key("omega", "{}").size() == 16);
    CHECK(cache_key("omega", "{\"g\":1}") != cache_key("omega", "{\"g\":2}"));
}

TEST_CASE("cache directory resolution") {
    ::setenv("DIFFTOP_CACHE", "/tmp/env-cache", 1);
    CHECK(resolve_cache_dir("/tmp/flag") == "/tmp/flag");
    CHECK(resolve_cache_dir("") == "/tmp/env-cache");
    ::unsetenv("DIFFTOP_CACHE");
    ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
    CHECK(resolve_cache_dir("") == "/tmp/xdg/difftop");
    ::unsetenv("XDG_CACHE_HOME");
}

TEST_CASE("cache round trip") {
    std::string dir = fresh_dir("rt");
    Cache c(dir);
    std::string k = cache_key("op", "{\"a\":1}");
    CHECK(!c.get(k).has_value());
    c.put(k, "op", "line one\nline \"two\"\n");
    REQUIRE(c.get(k).has_value());
    CHECK(*c.get(k) == "line one\nline \"two\"\n");
    // a later entry for the same key wins
    c.put(k, "op", "v2");
    CHECK(*c.get(k) == "v2");
    // a damaged line is skipped
    std::ofstream(dir + "/" + k.substr(0, 2) + ".jsonl", std::ios::app) << "{not json\n";
    CHECK(*c.get(k) == "v2");
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify driver") {
    verify::Options o;
    o.hbar_order = 3;
    o.samples = 3;
    CHECK(verify::run("identities", o).pass());
    CHECK(verify::run("m-structure", o).pass());
    o.lambda = 0;
    CHECK(!verify::run("parity", o).pass());
    CHECK_THROWS_AS(verify::run("nope", o), std::invalid_argument);
}
