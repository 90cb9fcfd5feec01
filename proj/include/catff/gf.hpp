#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "catff/bigint.hpp"

namespace catff {

class PrimePowerField;
class FieldElement;

using FieldPtr = std::shared_ptr<const PrimePowerField>;

/// The finite field F_{l^a}, realized as (Z/l)[t] modulo a canonical monic
/// irreducible polynomial of degree a. The canonical modulus is the
/// lexicographically least monic irreducible polynomial over Z/l, coefficients
/// compared from the constant term up, so the same (l, a) always produces an
/// identical field. Immutable after construction and safe to share between
/// threads.
class PrimePowerField : public std::enable_shared_from_this<PrimePowerField> {
  public:
    static FieldPtr make(std::uint64_t characteristic, unsigned extension_degree);

    std::uint64_t characteristic() const { return char_; }
    unsigned extension_degree() const { return deg_; }
    const BigInt& cardinality() const { return card_; }
    /// Cardinality as a machine word; throws when the field is too large for
    /// element enumeration.
    std::uint64_t cardinality_u64() const;

    /// Monic modulus, constant term first, length a+1.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    /// Element with coefficient vector equal to the base-l digits of idx,
    /// least significant digit = constant term ("odometer" enumeration).
    FieldElement element_from_index(std::uint64_t idx) const;
    /// Convenience: reduces arbitrary signed residues mod l; pads with zeros.
    FieldElement from_residues(const std::vector<std::int64_t>& coeffs) const;

    // Kernels on raw coefficient blocks of length a. Out may alias inputs.
    void add_raw(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const;
    void sub_raw(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const;
    void neg_raw(const std::uint64_t* x, std::uint64_t* out) const;
    void mul_raw(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const;
    void scalar_mul_raw(std::uint64_t c, const std::uint64_t* x, std::uint64_t* out) const;
    void inv_raw(const std::uint64_t* x, std::uint64_t* out) const;
    void pow_raw(const std::uint64_t* x, const BigInt& e, std::uint64_t* out) const;
    void pow_raw_u64(const std::uint64_t* x, std::uint64_t e, std::uint64_t* out) const;
    bool is_zero_raw(const std::uint64_t* x) const;
    std::uint64_t index_raw(const std::uint64_t* x) const;

  private:
    PrimePowerField(std::uint64_t characteristic, unsigned extension_degree,
                    std::vector<std::uint64_t> modulus);

    std::uint64_t char_;
    unsigned deg_;
    std::vector<std::uint64_t> modulus_;
    BigInt card_;
};

/// True when the two descriptions denote the same field; moduli agree by the
/// deterministic construction.
bool same_field(const PrimePowerField& a, const PrimePowerField& b);

class FieldElement {
  public:
    FieldElement(FieldPtr parent, std::vector<std::uint64_t> coeffs);

    const FieldPtr& parent() const { return parent_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    std::uint64_t* data() { return coeffs_.data(); }
    const std::uint64_t* data() const { return coeffs_.data(); }

    bool is_zero() const;
    bool is_one() const;
    std::uint64_t index() const { return parent_->index_raw(coeffs_.data()); }

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& rhs) const { return *this * rhs.inverse(); }
    FieldElement pow(const BigInt& e) const;
    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& rhs) const;
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

  private:
    void check_same_parent(const FieldElement& rhs) const;

    FieldPtr parent_;
    std::vector<std::uint64_t> coeffs_;
};

FieldPtr make_field(std::uint64_t characteristic, unsigned extension_degree);

/// Least k >= 1 with x^k = 1; divides q - 1.
std::uint64_t multiplicative_order(const FieldElement& x);

/// Deterministic primitive n-th root of unity: the element of least canonical
/// index whose multiplicative order is exactly n. Requires n | q - 1 and
/// gcd(n, l) = 1.
FieldElement primitive_root_of_unity(const FieldPtr& field, std::uint64_t n);

/// All n-th roots of unity contained in the field, i.e. mu_{gcd(n, q-1)},
/// ordered by canonical index.
std::vector<FieldElement> roots_of_unity_in_field(const FieldPtr& field, std::uint64_t n);

/// The unique field embedding F_{l^a} -> F_{l^b} (a | b) that sends the small
/// field's generator to the root of its modulus with least canonical index in
/// the big field. Found once, by exhaustive scan.
class Embedding {
  public:
    Embedding(FieldPtr from, FieldPtr to);

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }

    FieldElement operator()(const FieldElement& x) const;
    void apply_raw(const std::uint64_t* x, std::uint64_t* out) const;

  private:
    FieldPtr from_;
    FieldPtr to_;
    std::vector<std::vector<std::uint64_t>> basis_images_;
};

/// One-shot convenience around Embedding.
FieldElement embed(const FieldElement& x, const FieldPtr& target);

}  // namespace catff
