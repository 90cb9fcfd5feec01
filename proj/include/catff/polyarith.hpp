#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "catff/gf.hpp"

namespace catff {

/// Univariate polynomial over a PrimePowerField. Coefficients are stored
/// constant term first in one flat residue vector (stride = extension degree),
/// with no trailing zero coefficients; the zero polynomial is the empty
/// vector. Pure value semantics.
class Polynomial {
  public:
    explicit Polynomial(FieldPtr base) : base_(std::move(base)) {}

    static Polynomial zero(FieldPtr base) { return Polynomial(std::move(base)); }
    static Polynomial one(FieldPtr base);
    static Polynomial variable(FieldPtr base);  // the monomial T
    static Polynomial monomial(const FieldElement& c, std::size_t k);
    static Polynomial from_coeffs(FieldPtr base, const std::vector<FieldElement>& coeffs);
    /// Convenience for literals: coefficients as signed residues, constant first.
    static Polynomial from_ints(FieldPtr base, const std::vector<std::int64_t>& coeffs);

    const FieldPtr& base() const { return base_; }
    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(n_coeffs()) - 1; }
    bool is_zero() const { return data_.empty(); }
    std::size_t n_coeffs() const { return base_->extension_degree() == 0 ? 0 : data_.size() / base_->extension_degree(); }

    FieldElement coeff(std::size_t i) const;
    FieldElement leading_coeff() const;
    void set_coeff(std::size_t i, const FieldElement& c);

    const std::uint64_t* coeff_ptr(std::size_t i) const;
    std::uint64_t* coeff_ptr_mut(std::size_t i);
    void resize_coeffs(std::size_t n);  // zero-extends; does not trim
    void trim();

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator-() const;
    Polynomial operator*(const FieldElement& scalar) const;
    Polynomial& operator+=(const Polynomial& rhs) { return *this = *this + rhs; }
    Polynomial& operator-=(const Polynomial& rhs) { return *this = *this - rhs; }
    Polynomial& operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

    bool operator==(const Polynomial& rhs) const;
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    Polynomial pow(std::uint64_t e) const;
    FieldElement eval(const FieldElement& x) const;
    Polynomial derivative() const;
    /// Multiplies by the inverse of the leading coefficient; zero stays zero.
    Polynomial monic() const;

  private:
    void check_same_base(const Polynomial& rhs) const;

    FieldPtr base_;
    std::vector<std::uint64_t> data_;
};

/// (quotient, remainder) with deg rem < deg divisor; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divrem(const Polynomial& f, const Polynomial& d);

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// True iff f has no repeated roots over the algebraic closure. In
/// characteristic l, f' = 0 means f is an l-th power, squarefree only when
/// deg f = 0. f must be nonzero.
bool is_squarefree(const Polynomial& f);

/// Rabin irreducibility over F_q; input must be non-constant (normalized to
/// monic internally).
bool is_irreducible(const Polynomial& f);

/// The set of all h with h^m = g, in a deterministic order. Empty means g is
/// not a perfect m-th power; g must be nonzero. The l-part of m is handled
/// through the inverse Frobenius, the prime-to-l part by top-down coefficient
/// determination, and the full set is {w*h : w an m-th root of unity in the
/// base field}.
std::vector<Polynomial> poly_mth_roots(const Polynomial& g, std::uint64_t m);

/// c with c^{l^s} handled exactly: the inverse Frobenius x -> x^{l^{a-1}}.
FieldElement inverse_frobenius(const FieldElement& x);

/// One x with x^m = v (v nonzero), via the exponent inverse when
/// gcd(m, q-1) = 1 and otherwise a deterministic scan of the field.
bool scalar_mth_root(const FieldElement& v, std::uint64_t m, FieldElement& out);

/// Polynomial with coefficients mapped through the embedding.
Polynomial map_coeffs(const Polynomial& f, const Embedding& phi);

}  // namespace catff
