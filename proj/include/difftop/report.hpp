#pragma once

#include <string>
#include <vector>

namespace difftop {

struct Clause {
    std::string id;
    bool pass = true;
    std::string first_failure;  // empty when passing
};

struct Report {
    std::string suite;
    std::vector<Clause> clauses;

    Clause& clause(const std::string& id);
    // records the first failure only
    void fail(const std::string& id, const std::string& where);
    void check(const std::string& id, bool ok, const std::string& where) {
        if (ok) clause(id);
        else fail(id, where);
    }
    bool pass() const;
    void merge(const Report& o);
    std::string to_json() const;
};

}  // namespace difftop
