#pragma once

#include "difftop/rational.hpp"
#include "difftop/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace difftop::verify {

struct Options {
    int hbar_order = 4;
    int nmax = 3;
    int samples = 8;
    std::uint64_t seed = 7;
    Q lambda = Q(1, 2);
    int smax = 8, pmax = 8;
};

const std::vector<std::string>& suites();  // "all" excluded
// throws std::invalid_argument for an unknown suite
Report run(const std::string& suite, const Options& o);

}  // namespace difftop::verify
