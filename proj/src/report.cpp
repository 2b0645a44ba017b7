#include "difftop/report.hpp"

#include "json.hpp"

namespace difftop {

Clause& Report::clause(const std::string& id) {
    for (auto& c : clauses)
        if (c.id == id) return c;
    clauses.push_back({id, true, ""});
    return clauses.back();
}

void Report::fail(const std::string& id, const std::string& where) {
    Clause& c = clause(id);
    if (c.pass) {
        c.pass = false;
        c.first_failure = where;
    }
}

bool Report::pass() const {
    for (const auto& c : clauses)
        if (!c.pass) return false;
    return true;
}

void Report::merge(const Report& o) {
    for (const auto& c : o.clauses) {
        std::string id = o.suite.empty() ? c.id : o.suite + "." + c.id;
        if (c.pass) clause(id);
        else fail(id, c.first_failure);
    }
}

std::string Report::to_json() const {
    nlohmann::json cl = nlohmann::json::array();
    for (const auto& c : clauses) {
        nlohmann::json j{{"id", c.id}, {"pass", c.pass}};
        j["first_failure"] = c.first_failure.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.first_failure);
        cl.push_back(j);
    }
    return nlohmann::json{{"suite", suite}, {"clauses", cl}}.dump(2);
}

}  // namespace difftop
