#include "catff/textio.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace catff {

std::string element_to_string(const FieldElement& x) {
    const auto& c = x.coeffs();
    if (c.size() == 1) return std::to_string(c[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    s += ']';
    return s;
}

std::string poly_to_string(const Polynomial& p, std::string_view var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.n_coeffs(); i-- > 0;) {
        const FieldElement c = p.coeff(i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += element_to_string(c);
            continue;
        }
        if (!c.is_one()) {
            out += element_to_string(c);
            out += '*';
        }
        out += var;
        if (i > 1) {
            out += '^';
            out += std::to_string(i);
        }
    }
    return out;
}

namespace {

constexpr std::string_view kVariableLetters = "xXtTyY";

class TextParser {
  public:
    TextParser(FieldPtr field, std::string_view text, std::size_t offset)
        : field_(std::move(field)), s_(text), offset_(offset) {}

    Polynomial parse_poly() {
        Polynomial acc(field_);
        skip_ws();
        bool negate = eat('-');
        while (true) {
            acc += negate ? -parse_term() : parse_term();
            skip_ws();
            if (eat('+'))
                negate = false;
            else if (eat('-'))
                negate = true;
            else
                break;
        }
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return acc;
    }

    FieldElement parse_element_only() {
        skip_ws();
        FieldElement c = parse_element();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return c;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(offset_ + pos_, what); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_variable() const {
        return pos_ < s_.size() && kVariableLetters.find(s_[pos_]) != std::string_view::npos;
    }

    std::int64_t parse_int() {
        skip_ws();
        const bool neg = eat('-');
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected number");
        std::size_t digits = 0;
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (++digits > 18) fail("number too large");
            v = v * 10 + (s_[pos_++] - '0');
        }
        return neg ? -v : v;
    }

    std::uint64_t parse_exponent() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected exponent");
        std::size_t digits = 0;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (++digits > 9) fail("exponent too large");
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
        }
        return v;
    }

    FieldElement parse_element() {
        skip_ws();
        if (eat('[')) {
            std::vector<std::int64_t> entries;
            entries.push_back(parse_int());
            skip_ws();
            while (eat(',')) {
                entries.push_back(parse_int());
                skip_ws();
            }
            if (!eat(']')) fail("expected ']' or ','");
            if (entries.size() > field_->extension_degree()) fail("too many coefficients for field");
            return field_->from_residues(entries);
        }
        return field_->from_residues({parse_int()});
    }

    Polynomial parse_term() {
        skip_ws();
        FieldElement c = field_->one();
        bool have_coeff = false;
        if (!at_variable()) {
            c = parse_element();
            have_coeff = true;
            skip_ws();
            if (eat('*')) skip_ws();
        }
        if (at_variable()) {
            ++pos_;
            std::uint64_t k = 1;
            skip_ws();
            if (eat('^')) k = parse_exponent();
            return Polynomial::monomial(c, k);
        }
        if (!have_coeff) fail("expected term");
        return Polynomial::monomial(c, 0);
    }

    FieldPtr field_;
    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t offset_;
};

}  // namespace

Polynomial parse_polynomial(const FieldPtr& field, std::string_view text, std::size_t position_offset) {
    return TextParser(field, text, position_offset).parse_poly();
}

FieldElement parse_element(const FieldPtr& field, std::string_view text) {
    return TextParser(field, text, 0).parse_element_only();
}

CurveSpec parse_curve_spec(std::string_view text) {
    std::map<std::string, std::pair<std::string, std::size_t>> fields;  // key -> (value, offset)
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view seg = text.substr(start, end - start);
        const std::size_t eq = seg.find('=');
        if (seg.empty()) throw ParseError(start, "empty curve-spec field");
        if (eq == std::string_view::npos) throw ParseError(start, "expected key=value");
        const std::string key(seg.substr(0, eq));
        if (key != "char" && key != "deg" && key != "e" && key != "f")
            throw ParseError(start, "unknown key '" + key + "'");
        if (fields.count(key)) throw ParseError(start, "duplicate key '" + key + "'");
        fields[key] = {std::string(seg.substr(eq + 1)), start + eq + 1};
        if (end == text.size()) break;
        start = end + 1;
    }
    for (const char* key : {"char", "deg", "e", "f"})
        if (!fields.count(key)) throw ParseError(text.size(), std::string("missing key '") + key + "'");

    auto parse_uint = [&](const std::string& key) -> std::uint64_t {
        const auto& [value, off] = fields[key];
        if (value.empty()) throw ParseError(off, "expected number");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(value[i])))
                throw ParseError(off + i, "expected number");
            if (i > 17) throw ParseError(off + i, "number too large");
            v = v * 10 + static_cast<std::uint64_t>(value[i] - '0');
        }
        return v;
    };

    CurveSpec spec;
    spec.characteristic = parse_uint("char");
    spec.degree = static_cast<unsigned>(parse_uint("deg"));
    spec.e = static_cast<unsigned>(parse_uint("e"));
    spec.f_text = fields["f"].first;

    // validate f against the declared field right away, with spec-relative positions
    FieldPtr base = make_field(spec.characteristic, spec.degree);
    parse_polynomial(base, spec.f_text, fields["f"].second);
    return spec;
}

CurvePtr CurveSpec::to_curve() const {
    FieldPtr base = make_field(characteristic, degree);
    return make_curve(base, e, parse_polynomial(base, f_text));
}

std::string curve_spec_to_string(const CurveSpec& spec) {
    FieldPtr base = make_field(spec.characteristic, spec.degree);
    std::ostringstream os;
    os << "char=" << spec.characteristic << ";deg=" << spec.degree << ";e=" << spec.e
       << ";f=" << poly_to_string(parse_polynomial(base, spec.f_text));
    return os.str();
}

std::string curve_spec_to_string(const CurveModel& curve) {
    std::ostringstream os;
    os << "char=" << curve.base()->characteristic() << ";deg=" << curve.base()->extension_degree()
       << ";e=" << curve.e() << ";f=" << poly_to_string(curve.f());
    return os.str();
}

std::string ring_element_to_string(const RingElement& g) {
    if (g.is_zero()) return "0";
    const unsigned e = g.parent()->e();
    if (e == 1) return poly_to_string(g.part(0));
    std::string out;
    for (unsigned i = e; i-- > 0;) {
        const Polynomial& p = g.part(i);
        if (p.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += poly_to_string(p);
            continue;
        }
        if (p.degree() == 0) {
            if (!p.coeff(0).is_one()) {
                out += element_to_string(p.coeff(0));
                out += '*';
            }
        } else {
            out += '(';
            out += poly_to_string(p);
            out += ")*";
        }
        out += 'y';
        if (i > 1) {
            out += '^';
            out += std::to_string(i);
        }
    }
    return out;
}

}  // namespace catff
