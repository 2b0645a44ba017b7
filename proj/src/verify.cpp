#include "difftop/verify.hpp"

#include "difftop/correlators.hpp"
#include "difftop/diffsys.hpp"
#include "difftop/dlbridge.hpp"
#include "difftop/dy.hpp"
#include "difftop/gw.hpp"

#include <algorithm>
#include <stdexcept>

namespace difftop::verify {

namespace {

Report only(const Report& r, const std::string& id) {
    Report out;
    out.suite = id;
    for (const auto& c : r.clauses)
        if (c.id == id) out.clauses.push_back(c);
    return out;
}

std::vector<Q> loop_samples(const Options& o, const std::vector<Q>& extra) {
    std::vector<Q> out;
    for (std::uint64_t s = o.seed; static_cast<int>(out.size()) < o.samples; ++s) {
        Q z = corr::random_tuples(s, 1, 1)[0][0];
        std::vector<Q> pts{z};
        pts.insert(pts.end(), extra.begin(), extra.end());
        if (corr::valid_points(pts) && std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
    }
    return out;
}

Report m_structure(const Options& o) {
    MTower m = diffsys::m_p1(o.hbar_order, o.lambda);
    return diffsys::m_audit(m, diffsys::l_p1(o.lambda), o.hbar_order, o.lambda == Q(1, 2));
}

Report tt(const Options& o) {
    MTower m = diffsys::m_p1(o.hbar_order + 2, o.lambda);
    return corr::tt_audit(m, o.hbar_order, o.nmax, o.seed, std::max(1, o.samples / 2));
}

Report loop(const Options& o) {
    Report r;
    r.suite = "loop";
    int K = std::min(o.hbar_order, 4);
    DTower d = dl::d_tower(K + 3, o.lambda);
    MTower m = diffsys::m_p1(K + 3, o.lambda);
    std::vector<std::vector<Q>> extras{{Q(3)}, {Q(3), Q(7, 2)}};
    for (const auto& e : extras) {
        Report part = corr::loop_check(d, m, corr::LoopInput{loop_samples(o, e), e, K});
        part.suite = "n" + std::to_string(e.size());
        r.merge(part);
    }
    return r;
}

Report tr(const Options& o) {
    Report r;
    r.suite = "tr-compare";
    MTower m = diffsys::m_p1(std::max(o.hbar_order, 4) + 1, o.lambda);
    for (int chi = 1; chi <= 4; ++chi)
        for (int g = 0; 2 * g - 2 < chi; ++g) {
            int n = chi - (2 * g - 2);
            if (n < 1 || n - 2 + 2 * g > std::max(o.hbar_order, 4)) continue;
            Report part = corr::tr_compare(m, g, n, std::max(5, o.samples), o.seed);
            part.suite = "(" + std::to_string(g) + "," + std::to_string(n) + ")";
            r.merge(part);
        }
    r.check("bergmann", corr::bergmann_identity(m), "W2^(0) + 1/(x1-x2)^2");
    return r;
}

Report dy_suite(const Options& o) {
    Report r;
    r.suite = "dy";
    int K = std::min(o.hbar_order, 6);
    r.merge(dy::shift_check(8, 24));
    r.merge(dy::compare(diffsys::m_p1(K, o.lambda), K, 20));
    return r;
}

Report roundtrip(const Options& o) {
    Report r;
    r.suite = "roundtrip";
    int K = o.hbar_order;
    DTower t = dl::d_tower(K, o.lambda);
    LSeries L = diffsys::l_p1(o.lambda);
    r.check("exp(D0)=L0", dl::exp_closed_form(dl::d0_p1()) == diffsys::l_p1(Q(1, 2))[0], "closed form");
    r.merge(dl::compatibility_check(t, L, K));
    r.merge(dl::round_trip_check(dl::l_from_d(t, K, 4), o.lambda));
    return r;
}

Report identities(const Options& o) { return dy::identity_battery(o.smax, o.pmax); }

Report gw_suite(const Options& o) {
    Report r;
    r.suite = "gw";
    r.merge(gw::table_check(gw::extract(0, 3, 6)));
    MTower m = diffsys::m_p1(5, o.lambda);
    r.merge(gw::cn_check(m, corr::random_tuples(o.seed, 2, std::max(1, o.samples / 2)), 4));
    return r;
}

}  // namespace

const std::vector<std::string>& suites() {
    static const std::vector<std::string> s{"m-structure", "parity",    "poles", "leading-order", "loop",
                                            "tr-compare",  "dy",        "roundtrip", "identities", "gw"};
    return s;
}

Report run(const std::string& suite, const Options& o) {
    if (suite == "m-structure") return m_structure(o);
    if (suite == "parity" || suite == "poles" || suite == "leading-order") return only(tt(o), suite);
    if (suite == "loop") return loop(o);
    if (suite == "tr-compare") return tr(o);
    if (suite == "dy") return dy_suite(o);
    if (suite == "roundtrip") return roundtrip(o);
    if (suite == "identities") return identities(o);
    if (suite == "gw") return gw_suite(o);
    if (suite == "all") {
        Report r;
        r.suite = "all";
        Report t = tt(o);
        for (const auto& s : suites()) {
            if (s == "parity" || s == "poles" || s == "leading-order") r.merge(only(t, s));
            else r.merge(run(s, o));
        }
        return r;
    }
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace difftop::verify
