#pragma once

#include <cstdint>
#include <vector>

#include "catff/ffield.hpp"

namespace catff {

/// Integer numerator L(t) = sum a_i t^i of the zeta function of a curve of
/// the given genus over F_q: a_0 = 1, degree 2g, functional equation
/// a_{2g-i} = q^{g-i} a_i. L(1) is the divisor class number.
struct LPolynomial {
    BigInt q;
    unsigned genus = 0;
    std::vector<BigInt> coeffs;  // length 2*genus + 1

    BigInt eval_at_one() const;
};

/// Reconstructs L from affine-plus-infinity point counts N_1..N_g via Newton's
/// identities on the power sums S_k = q^k + 1 - N_k (the division by k must be
/// exact; a fractional coefficient means the counts are not the counts of any
/// curve). Counts beyond index g are treated as consistency checks against the
/// functional-equation prediction and rejected on mismatch.
LPolynomial lpoly_from_counts(const BigInt& q, unsigned genus, const std::vector<BigInt>& counts);

/// N_k predicted by L through the same power-sum recurrence.
BigInt predicted_count(const LPolynomial& lp, unsigned k);

/// h = L(1).
BigInt class_number(const LPolynomial& lp);

/// Multiplicative order of q modulo p: the degree of the constant extension
/// obtained by adjoining p-th roots of unity. p is an odd prime, 2, or 4;
/// requires gcd(q, p) = 1.
unsigned cyclotomic_degree(const BigInt& q, std::uint64_t p);

/// Class number of the degree-n constant extension:
/// h_n = prod(1 - alpha_i^n) = Res(t^n - 1, L(t)), computed exactly as the
/// determinant of the Sylvester matrix by fraction-free (Bareiss) elimination.
BigInt constant_extension_class_number(const LPolynomial& lp, unsigned n);

/// Exact determinant by Bareiss fraction-free elimination.
BigInt det_bareiss(std::vector<std::vector<BigInt>> m);

/// Point-count pipeline: N_1..N_g from the curve, plus every N_k for
/// k <= 2g that fits the budget as a self-check.
LPolynomial lpoly_for_curve(const CurvePtr& curve,
                            std::uint64_t budget = kDefaultEnumerationBudget,
                            unsigned threads = 1);

}  // namespace catff
