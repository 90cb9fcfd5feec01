#include "catff/zeta.hpp"

#include <numeric>
#include <stdexcept>

namespace catff {

BigInt LPolynomial::eval_at_one() const {
    BigInt h = 0;
    for (const auto& a : coeffs) h += a;
    return h;
}

namespace {

// S_k = sum alpha_i^k and a_k = (-1)^k e_k(alpha) satisfy
//   k a_k = -(S_k + sum_{j=1}^{k-1} a_j S_{k-j}).
std::vector<BigInt> power_sums(const LPolynomial& lp, unsigned upto) {
    std::vector<BigInt> s(upto + 1, 0);
    for (unsigned k = 1; k <= upto; ++k) {
        BigInt acc = 0;
        if (k < lp.coeffs.size()) acc += BigInt(k) * lp.coeffs[k];
        for (unsigned j = 1; j < k && j < lp.coeffs.size(); ++j) acc += lp.coeffs[j] * s[k - j];
        s[k] = -acc;
    }
    return s;
}

}  // namespace

LPolynomial lpoly_from_counts(const BigInt& q, unsigned genus, const std::vector<BigInt>& counts) {
    if (counts.size() < genus) throw std::invalid_argument("need at least genus point counts");
    LPolynomial lp;
    lp.q = q;
    lp.genus = genus;
    lp.coeffs.assign(2 * genus + 1, 0);
    lp.coeffs[0] = 1;

    std::vector<BigInt> s(genus + 1, 0);
    for (unsigned k = 1; k <= genus; ++k) s[k] = pow_big(q, k) + 1 - counts[k - 1];
    for (unsigned k = 1; k <= genus; ++k) {
        BigInt acc = s[k];
        for (unsigned j = 1; j < k; ++j) acc += lp.coeffs[j] * s[k - j];
        if (acc % k != 0) throw std::invalid_argument("counts violate functional equation");
        lp.coeffs[k] = -acc / k;
    }
    for (unsigned i = 0; i < genus; ++i) lp.coeffs[2 * genus - i] = pow_big(q, genus - i) * lp.coeffs[i];

    for (unsigned k = genus + 1; k <= counts.size(); ++k) {
        if (predicted_count(lp, k) != counts[k - 1])
            throw std::invalid_argument("counts violate functional equation");
    }
    if (lp.eval_at_one() < 1) throw std::invalid_argument("counts violate functional equation");
    return lp;
}

BigInt predicted_count(const LPolynomial& lp, unsigned k) {
    if (k < 1) throw std::invalid_argument("extension degree must be positive");
    return pow_big(lp.q, k) + 1 - power_sums(lp, k)[k];
}

BigInt class_number(const LPolynomial& lp) { return lp.eval_at_one(); }

unsigned cyclotomic_degree(const BigInt& q, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("modulus must be at least 2");
    const auto r = static_cast<std::uint64_t>(q % p);
    if (std::gcd(r, p) != 1) throw std::domain_error("p equals the characteristic");
    std::uint64_t acc = r % p;
    unsigned d = 1;
    while (acc != 1) {
        acc = acc * r % p;
        ++d;
    }
    return d;
}

BigInt det_bareiss(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m[pivot][k] == 0) ++pivot;
            if (pivot == n) return 0;
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

BigInt constant_extension_class_number(const LPolynomial& lp, unsigned n) {
    if (n < 1) throw std::invalid_argument("extension degree must be positive");
    const std::size_t dl = 2 * lp.genus;
    const std::size_t dim = n + dl;

    // Sylvester matrix of f = t^n - 1 (monic) and L, coefficients descending.
    std::vector<std::vector<BigInt>> m(dim, std::vector<BigInt>(dim, 0));
    for (std::size_t row = 0; row < dl; ++row) {
        m[row][row] = 1;           // t^n
        m[row][row + n] = -1;      // constant term of t^n - 1
    }
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t j = 0; j <= dl; ++j) m[dl + row][row + j] = lp.coeffs[dl - j];
    return det_bareiss(std::move(m));
}

LPolynomial lpoly_for_curve(const CurvePtr& curve, std::uint64_t budget, unsigned threads) {
    const unsigned g = curve->genus();
    std::vector<BigInt> counts;
    for (unsigned k = 1; k <= 2 * g; ++k) {
        if (k > g && pow_big(curve->base()->cardinality(), k) > budget) break;
        counts.push_back(count_points(curve, k, budget, threads));
    }
    return lpoly_from_counts(curve->base()->cardinality(), g, counts);
}

}  // namespace catff
