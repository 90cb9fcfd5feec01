#include "catff/reports.hpp"

#include <json.hpp>

#include <sstream>

namespace catff {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string verdict_json(const TheoremVerdict& verdict) {
    ordered_json j;
    j["status"] = to_string(verdict.status);
    if (verdict.p && verdict.q)
        j["pair"] = {{"p", *verdict.p}, {"q", *verdict.q}};
    else
        j["pair"] = nullptr;
    j["conditions"] = {{"cond1", verdict.conditions.exponents_avoid_char},
                       {"cond2", verdict.conditions.class_number_disjunction},
                       {"cond3", verdict.conditions.mu4_condition}};
    ordered_json h = ordered_json::object();
    for (const auto& [label, value] : verdict.h_values) h[label] = value.str();
    j["h_values"] = h;
    return dump(j);
}

std::string search_json(const SearchReport& report) {
    ordered_json j;
    ordered_json params;
    params["curve"] = curve_spec_to_string(*report.curve);
    params["m"] = report.params.m;
    params["n"] = report.params.n;
    params["bound"] = report.params.bound;
    if (report.params.rhs)
        params["rhs"] = poly_to_string(*report.params.rhs, "Y");
    else
        params["rhs"] = nullptr;
    params["threads"] = report.params.threads;
    j["params"] = params;
    j["candidates_examined"] = static_cast<std::uint64_t>(report.candidates_examined);
    ordered_json sols = ordered_json::array();
    for (const auto& s : report.solutions) {
        sols.push_back({{"X", ring_element_to_string(s.x)},
                        {"Y", ring_element_to_string(s.y)},
                        {"constant", s.constant}});
    }
    j["solutions"] = sols;
    j["elapsed_s"] = report.elapsed_s;
    return dump(j);
}

std::string classnum_json(const ClassNumberReport& report) {
    ordered_json j;
    j["q"] = static_cast<std::uint64_t>(report.lpoly.q);
    j["genus"] = report.lpoly.genus;
    ordered_json coeffs = ordered_json::array();
    for (const auto& a : report.lpoly.coeffs) coeffs.push_back(a.str());
    j["coeffs"] = coeffs;
    ordered_json counts = ordered_json::array();
    for (const auto& n : report.counts) counts.push_back(n.str());
    j["counts"] = counts;
    j["h"] = class_number(report.lpoly).str();
    ordered_json hn = ordered_json::object();
    for (const auto& [deg, h] : report.h_by_degree) hn[std::to_string(deg)] = h.str();
    j["h_n"] = hn;
    if (!report.mu_degrees.empty()) {
        ordered_json mu = ordered_json::object();
        for (const auto& [p, d] : report.mu_degrees) {
            mu[std::to_string(p)] = {{"degree", d},
                                     {"h", report.h_by_degree.at(d).str()}};
        }
        j["mu"] = mu;
    }
    return dump(j);
}

std::string verdict_human(const TheoremVerdict& verdict) {
    std::ostringstream os;
    os << "status: " << to_string(verdict.status) << "\n";
    os << "equation: X^" << verdict.m << " - Y^" << verdict.n << " = 1\n";
    if (verdict.p && verdict.q) os << "pair: p=" << *verdict.p << " q=" << *verdict.q << "\n";
    os << "conditions: (1) " << (verdict.conditions.exponents_avoid_char ? "yes" : "no") << "  (2) "
       << (verdict.conditions.class_number_disjunction ? "yes" : "no") << "  (3) "
       << (verdict.conditions.mu4_condition ? "yes" : "no") << "\n";
    for (const auto& [label, value] : verdict.h_values) os << label << " = " << value.str() << "\n";
    return os.str();
}

std::string search_human(const SearchReport& report) {
    std::ostringstream os;
    os << "curve: " << curve_spec_to_string(*report.curve) << "\n";
    if (report.params.rhs)
        os << "equation: X^" << report.params.m << " = " << poly_to_string(*report.params.rhs, "Y")
           << "\n";
    else
        os << "equation: X^" << report.params.m << " - Y^" << report.params.n << " = 1\n";
    os << "pole-order bound on Y: " << report.params.bound << "\n";
    os << "candidates examined: " << report.candidates_examined.str() << "\n";
    os << "solutions (" << report.solutions.size() << "):\n";
    for (const auto& s : report.solutions) {
        os << "  X = " << ring_element_to_string(s.x) << ",  Y = " << ring_element_to_string(s.y)
           << (s.constant ? "  [constant]" : "  [non-constant]") << "\n";
    }
    os << "elapsed: " << report.elapsed_s << " s\n";
    return os.str();
}

std::string classnum_human(const ClassNumberReport& report) {
    std::ostringstream os;
    os << "curve: " << curve_spec_to_string(*report.curve) << "\n";
    os << "q = " << report.lpoly.q.str() << ", genus = " << report.lpoly.genus << "\n";
    os << "point counts N_k:";
    for (const auto& n : report.counts) os << " " << n.str();
    os << "\nL(t) coefficients:";
    for (const auto& a : report.lpoly.coeffs) os << " " << a.str();
    os << "\nh = " << class_number(report.lpoly).str() << "\n";
    for (const auto& [deg, h] : report.h_by_degree)
        if (deg != 1) os << "h_" << deg << " = " << h.str() << "\n";
    for (const auto& [p, d] : report.mu_degrees)
        os << "h(F(mu_" << p << ")) = h_" << d << " = " << report.h_by_degree.at(d).str() << "\n";
    return os.str();
}

}  // namespace catff
