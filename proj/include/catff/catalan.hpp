#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catff/zeta.hpp"

namespace catff {

enum class TheoremStatus {
    kTheoremApplies,
    kInconclusive,
    kCharDividesBothSidesImpossible,
};

std::string to_string(TheoremStatus status);

/// Booleans for the three hypotheses, evaluated as stated (implications are
/// vacuously true). For a pair failing hypothesis (1) the other two are not
/// evaluated and report false.
struct TheoremConditions {
    bool exponents_avoid_char = false;
    bool class_number_disjunction = false;
    bool mu4_condition = false;

    bool all() const { return exponents_avoid_char && class_number_disjunction && mu4_condition; }
};

struct TheoremVerdict {
    TheoremStatus status = TheoremStatus::kInconclusive;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> p;  // chosen prime divisor of m
    std::optional<std::uint64_t> q;  // chosen prime divisor of n
    TheoremConditions conditions;    // of the chosen pair, else of the last pair examined
    std::map<std::string, BigInt> h_values;  // labels "h(F(mu_<k>))", only those computed
};

/// Decides whether the nonexistence criterion applies to X^m - Y^n = 1 over
/// the given model: some pair of primes p | m, q | n must satisfy
///   (1) p != l and q != l;
///   (2) if p != q: q does not divide h_{F(mu_p)} or p does not divide
///       h_{F(mu_q)};
///   (3) if q = 2, p != 2 and 2 | h_{F(mu_p)}: p does not divide h_{F(mu_4)}.
/// Pairs are tried in ascending (p, q) order and the first success wins; a
/// pair with p = q needs hypothesis (1) only. When m or n is a power of l no
/// pair can satisfy (1) and the status reports that the characteristic blocks
/// the criterion (non-constant solutions then exist; see counterexample).
TheoremVerdict check_theorem(const CurvePtr& curve, std::uint64_t m, std::uint64_t n,
                             std::uint64_t budget = kDefaultEnumerationBudget,
                             unsigned threads = 1);

struct SearchParams {
    std::uint64_t m = 2;
    std::uint64_t n = 2;
    std::uint64_t bound = 0;                           // pole-order bound on Y
    std::optional<Polynomial> rhs;                     // default: Y^n + 1
    std::uint64_t budget = kDefaultEnumerationBudget;  // max candidates
    unsigned threads = 1;
};

struct SearchSolution {
    RingElement x;
    RingElement y;
    bool constant = false;
};

struct SearchReport {
    CurvePtr curve;
    SearchParams params;
    BigInt candidates_examined;
    std::vector<SearchSolution> solutions;
    double elapsed_s = 0.0;

    bool found_non_constant() const;
};

/// Exhaustive bounded search for X^m = rhs(Y) in the ring of integers of the
/// model (default rhs = Y^n + 1, i.e. Catalan's equation X^m - Y^n = 1).
/// Examines every constant pair and every non-constant Y with d(Y) <= bound
/// and deg(rhs) * d(Y) divisible by m; the matching X are complete m-th roots
/// of rhs(Y). Every emitted solution is re-verified exactly. The candidate
/// stream is partitioned into fixed-size chunks handed to worker threads and
/// the per-chunk results are concatenated in chunk order, so the report does
/// not depend on the thread count.
SearchReport search(const CurvePtr& curve, const SearchParams& params);

/// The Frobenius witness family for p = l: X = 1 + z^n, Y = z^l satisfies
/// X^l - Y^n = 1 for any non-constant z (verified exactly before returning).
/// Requires gcd(n, l) = 1.
std::pair<RingElement, RingElement> counterexample(const CurvePtr& curve, std::uint64_t n,
                                                   const RingElement& z);

/// Constant roots of f(z) = (z + c1)^p - z^p - c2 in K, by full scan.
std::vector<FieldElement> lemma2_constant_solutions(const FieldPtr& field, std::uint64_t p,
                                                    const FieldElement& c1, const FieldElement& c2);

/// Checks that every Y over K with deg Y <= degree_bound and
/// (Y + c1)^p - Y^p = c2 is constant, for a prime p != l and nonzero
/// constants c1, c2. f(z) = (z + c1)^p - z^p - c2 has degree p - 1 and
/// leading coefficient p*c1 != 0, so f(Y) has degree (p-1)*deg Y > 0 for
/// non-constant Y; the checker verifies those facts exactly (the bound is
/// the scope of the claim, no enumeration is needed).
bool verify_lemma2(const FieldPtr& field, std::uint64_t p, const FieldElement& c1,
                   const FieldElement& c2, unsigned degree_bound);

}  // namespace catff
