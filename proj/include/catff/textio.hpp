#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "catff/ffield.hpp"

namespace catff {

/// Thrown for malformed input text; the message carries the 0-based position
/// of the offending character.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t position, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Canonical element text: decimal residue for prime fields, "[c0,c1,...]"
/// (constant term first, all a entries) for extensions.
std::string element_to_string(const FieldElement& x);

/// Canonical polynomial text, terms in descending degree, e.g.
/// "x^3 + x + 1" or "[1,2]*x^2 + [0,1]". The zero polynomial prints as "0".
std::string poly_to_string(const Polynomial& p, std::string_view var = "x");

/// Accepts sums/differences of terms "c", "c*V^k", "V^k" with optional '*',
/// variable letter in {x, X, t, T, y, Y}, coefficients in the element syntax
/// (bare integers also accepted over extension fields, meaning prime-subfield
/// constants).
Polynomial parse_polynomial(const FieldPtr& field, std::string_view text,
                            std::size_t position_offset = 0);

FieldElement parse_element(const FieldPtr& field, std::string_view text);

/// Parsed form of "char=<l>;deg=<a>;e=<e>;f=<polynomial>"; key order is free,
/// each key required exactly once. Round-trips through parse/print.
struct CurveSpec {
    std::uint64_t characteristic = 0;
    unsigned degree = 1;
    unsigned e = 1;
    std::string f_text;

    CurvePtr to_curve() const;
};

CurveSpec parse_curve_spec(std::string_view text);
std::string curve_spec_to_string(const CurveSpec& spec);
std::string curve_spec_to_string(const CurveModel& curve);

std::string ring_element_to_string(const RingElement& g);

}  // namespace catff
