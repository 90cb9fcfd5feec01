#pragma once

#include <map>
#include <string>

#include "catff/catalan.hpp"
#include "catff/textio.hpp"

namespace catff {

/// Per-degree class-number table around one L-polynomial, as emitted by the
/// lpoly and classnum subcommands.
struct ClassNumberReport {
    CurvePtr curve;
    LPolynomial lpoly;
    std::vector<BigInt> counts;                       // N_1 .. as computed
    std::map<unsigned, BigInt> h_by_degree;           // degree n -> h_n
    std::map<std::uint64_t, unsigned> mu_degrees;     // p -> d_p (only when requested)
};

// Machine output. All potentially unbounded integers (coefficients, class
// numbers) are decimal strings; identical inputs yield byte-identical text
// except for the elapsed_s timing field of search reports.
std::string verdict_json(const TheoremVerdict& verdict);
std::string search_json(const SearchReport& report);
std::string classnum_json(const ClassNumberReport& report);

std::string verdict_human(const TheoremVerdict& verdict);
std::string search_human(const SearchReport& report);
std::string classnum_human(const ClassNumberReport& report);

}  // namespace catff
