#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "catff/polyarith.hpp"

namespace catff {

class CurveModel;
class RingElement;

using CurvePtr = std::shared_ptr<const CurveModel>;

constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// A function field presented by the superelliptic model y^e = f(x) over its
/// constant field kappa, plus the rational case e = 1 (where the model is
/// just kappa(x) and f is unused). For e >= 2 the constraints gcd(e, l) = 1,
/// gcd(e, deg f) = 1, f squarefree force a unique degree-1 place above
/// x = infinity; the ring of elements with poles only there consists of the
/// sums a_0(x) + a_1(x) y + ... + a_{e-1}(x) y^{e-1}.
///
/// The constant field is taken to be the base field of the model; the model
/// constraints are treated as sufficient for geometric irreducibility.
class CurveModel : public std::enable_shared_from_this<CurveModel> {
  public:
    static CurvePtr make(FieldPtr base, unsigned e, Polynomial f);

    const FieldPtr& base() const { return base_; }
    unsigned e() const { return e_; }
    const Polynomial& f() const { return f_; }
    unsigned genus() const { return genus_; }
    std::uint64_t deg_f() const { return e_ == 1 ? 0 : static_cast<std::uint64_t>(f_.degree()); }

    RingElement zero_element() const;
    RingElement one_element() const;
    RingElement constant(const FieldElement& c) const;
    RingElement x() const;
    RingElement y() const;  // e = 1: the image f(x)

    /// The unique part index i with e*k + i*deg f = d for some k >= 0, when it
    /// exists (d = 0 included); the pole orders attained in the ring form the
    /// numerical semigroup generated by e and deg f.
    std::optional<unsigned> leader_part(std::uint64_t d) const;
    bool order_attained(std::uint64_t d) const { return leader_part(d).has_value(); }
    /// The unique monomial x^k y^i of pole order d; requires order_attained(d).
    RingElement order_monomial(std::uint64_t d) const;

  private:
    CurveModel(FieldPtr base, unsigned e, Polynomial f, unsigned genus);

    FieldPtr base_;
    unsigned e_;
    Polynomial f_;
    unsigned genus_;
};

CurvePtr make_curve(FieldPtr base, unsigned e, Polynomial f);

/// The model re-based over the constant extension F_{q^k}: same e, f with
/// coefficients embedded.
CurvePtr base_change(const CurvePtr& curve, unsigned k);

/// Element of the ring of functions with poles only at infinity, stored as
/// its e polynomial parts a_0, ..., a_{e-1}; multiplication reduces
/// y^e -> f(x).
class RingElement {
  public:
    RingElement(CurvePtr parent, std::vector<Polynomial> parts);

    const CurvePtr& parent() const { return parent_; }
    const std::vector<Polynomial>& parts() const { return parts_; }
    const Polynomial& part(unsigned i) const { return parts_[i]; }
    Polynomial& part_mut(unsigned i) { return parts_[i]; }

    bool is_zero() const;
    bool is_constant() const;

    RingElement operator+(const RingElement& rhs) const;
    RingElement operator-(const RingElement& rhs) const;
    RingElement operator*(const RingElement& rhs) const;
    RingElement operator-() const;
    RingElement operator*(const FieldElement& scalar) const;
    RingElement pow(std::uint64_t e) const;

    bool operator==(const RingElement& rhs) const;
    bool operator!=(const RingElement& rhs) const { return !(*this == rhs); }

  private:
    void check_same_parent(const RingElement& rhs) const;

    CurvePtr parent_;
    std::vector<Polynomial> parts_;
};

/// d(g) = -ord_{P_inf}(g) = max over nonzero parts of e*deg a_i + i*deg f;
/// the maximum is attained by a unique part. Throws on zero.
std::uint64_t pole_order(const RingElement& g);

/// Leading coefficient with respect to the pole-order grading: the top
/// coefficient of the unique part attaining d(g).
FieldElement leading_coefficient(const RingElement& g);

/// The nonzero elements of exact pole order d form one "slice": a unique
/// leader part with exact degree and free caps for the other parts.
struct PoleSlice {
    std::uint64_t d = 0;
    unsigned leader = 0;
    std::uint64_t leader_deg = 0;
    std::vector<std::int64_t> caps;  // per part: max degree, -1 = identically zero
    BigInt count;

    static std::optional<PoleSlice> at(const CurveModel& curve, std::uint64_t d);
};

/// Number of nonzero g with d(g) <= B (closed form; equals the sum of slice
/// counts).
BigInt count_with_pole_order_at_most(const CurveModel& curve, std::uint64_t B);

/// In-place odometer over one slice; iteration order is deterministic:
/// elements compared by the tuple of part coefficients, constant terms first,
/// part 0 first (first differing slot decides, i.e. slot 0 is most
/// significant).
class SliceIterator {
  public:
    SliceIterator(CurvePtr curve, PoleSlice slice, std::uint64_t start_index,
                  std::uint64_t end_index);

    bool done() const { return pos_ >= end_; }
    std::uint64_t index() const { return pos_; }
    const RingElement& current() const { return current_; }
    /// Canonical index of the current element's leading coefficient (cheap;
    /// read off the odometer digits).
    std::uint64_t leading_index() const { return digits_[leader_slot_] + 1; }
    void advance();

  private:
    struct Slot {
        unsigned part;
        std::size_t coeff;
        std::uint64_t radix;
        std::uint64_t offset;  // 1 for the forced-nonzero leader top slot
    };

    void decode(std::uint64_t idx);
    void write_slot(std::size_t s);

    CurvePtr curve_;
    PoleSlice slice_;
    std::vector<Slot> slots_;  // slot 0 most significant
    std::vector<std::uint64_t> digits_;
    std::size_t leader_slot_ = 0;
    std::uint64_t pos_ = 0, end_ = 0;
    RingElement current_;
};

/// Visits every nonzero g with d(g) <= B exactly once, ordered by pole order
/// then by the slice order above.
void enumerate_by_pole_order(const CurvePtr& curve, std::uint64_t B,
                             const std::function<void(const RingElement&)>& visit);

/// N_k = #affine points of y^e = f(x) over F_{q^k} plus the single point at
/// infinity. Fibers are counted through the power-residue test; the affine
/// x-range can be partitioned across threads (the merge is a plain sum).
BigInt count_points(const CurvePtr& curve, unsigned k,
                    std::uint64_t budget = kDefaultEnumerationBudget, unsigned threads = 1);

/// All X in the ring with X^m = r, in a deterministic order. Complete: any
/// two m-th roots differ by a root of unity in the constant field. The l-part
/// of m is solved by a Frobenius-triangular pass over order monomials, the
/// prime-to-l part top-down along the pole-order grading.
std::vector<RingElement> ring_mth_roots(const RingElement& r, std::uint64_t m);

/// Bulk form of the search inner step: for every Y in [lo, hi) of the slice
/// whose leading-coefficient index passes the sieve (empty sieve = keep all),
/// emits (X, Y) for each X with X^m = rhs(Y). Equivalent to evaluating rhs
/// and calling ring_mth_roots per element, but runs on flat preallocated
/// buffers; elements whose root extraction cannot use the fast path fall back
/// to the object path.
void for_each_bounded_mth_root(
    const CurvePtr& curve, const PoleSlice& slice, std::uint64_t lo, std::uint64_t hi,
    const Polynomial& rhs, std::uint64_t m, const std::vector<char>& lc_sieve,
    const std::function<void(const RingElement&, const RingElement&)>& emit);

}  // namespace catff
