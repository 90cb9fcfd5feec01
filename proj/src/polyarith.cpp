#include "catff/polyarith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace catff {

Polynomial Polynomial::one(FieldPtr base) {
    Polynomial p(std::move(base));
    p.set_coeff(0, p.base_->one());
    return p;
}

Polynomial Polynomial::variable(FieldPtr base) {
    Polynomial p(std::move(base));
    p.set_coeff(1, p.base_->one());
    return p;
}

Polynomial Polynomial::monomial(const FieldElement& c, std::size_t k) {
    Polynomial p(c.parent());
    p.set_coeff(k, c);
    return p;
}

Polynomial Polynomial::from_coeffs(FieldPtr base, const std::vector<FieldElement>& coeffs) {
    Polynomial p(std::move(base));
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.set_coeff(i, coeffs[i]);
    return p;
}

Polynomial Polynomial::from_ints(FieldPtr base, const std::vector<std::int64_t>& coeffs) {
    Polynomial p(base);
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.set_coeff(i, base->from_residues({coeffs[i]}));
    return p;
}

FieldElement Polynomial::coeff(std::size_t i) const {
    const unsigned a = base_->extension_degree();
    if (i >= n_coeffs()) return base_->zero();
    return FieldElement(base_, std::vector<std::uint64_t>(data_.begin() + static_cast<std::ptrdiff_t>(i * a),
                                                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * a)));
}

FieldElement Polynomial::leading_coeff() const {
    if (is_zero()) return base_->zero();
    return coeff(n_coeffs() - 1);
}

const std::uint64_t* Polynomial::coeff_ptr(std::size_t i) const {
    return data_.data() + i * base_->extension_degree();
}

std::uint64_t* Polynomial::coeff_ptr_mut(std::size_t i) {
    return data_.data() + i * base_->extension_degree();
}

void Polynomial::resize_coeffs(std::size_t n) { data_.resize(n * base_->extension_degree(), 0); }

void Polynomial::trim() {
    const unsigned a = base_->extension_degree();
    std::size_t n = n_coeffs();
    while (n > 0 && base_->is_zero_raw(data_.data() + (n - 1) * a)) --n;
    data_.resize(n * a);
}

void Polynomial::set_coeff(std::size_t i, const FieldElement& c) {
    if (!same_field(*base_, *c.parent())) throw std::invalid_argument("field mismatch");
    const unsigned a = base_->extension_degree();
    if (i >= n_coeffs()) {
        if (c.is_zero()) return;
        resize_coeffs(i + 1);
    }
    std::copy(c.coeffs().begin(), c.coeffs().end(), data_.begin() + static_cast<std::ptrdiff_t>(i * a));
    if (i + 1 == n_coeffs()) trim();
}

void Polynomial::check_same_base(const Polynomial& rhs) const {
    if (!same_field(*base_, *rhs.base_)) throw std::invalid_argument("field mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    check_same_base(rhs);
    const unsigned a = base_->extension_degree();
    Polynomial r(base_);
    r.resize_coeffs(std::max(n_coeffs(), rhs.n_coeffs()));
    for (std::size_t i = 0; i < r.n_coeffs(); ++i) {
        if (i < n_coeffs() && i < rhs.n_coeffs())
            base_->add_raw(coeff_ptr(i), rhs.coeff_ptr(i), r.coeff_ptr_mut(i));
        else if (i < n_coeffs())
            std::copy(coeff_ptr(i), coeff_ptr(i) + a, r.coeff_ptr_mut(i));
        else
            std::copy(rhs.coeff_ptr(i), rhs.coeff_ptr(i) + a, r.coeff_ptr_mut(i));
    }
    r.trim();
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (std::size_t i = 0; i < r.n_coeffs(); ++i) base_->neg_raw(r.coeff_ptr(i), r.coeff_ptr_mut(i));
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    check_same_base(rhs);
    if (is_zero() || rhs.is_zero()) return Polynomial(base_);
    const unsigned a = base_->extension_degree();
    Polynomial r(base_);
    r.resize_coeffs(n_coeffs() + rhs.n_coeffs() - 1);
    if (a == 1) {
        // prime-field convolution, kept free of per-coefficient call overhead
        const std::uint64_t l = base_->characteristic();
        const std::uint64_t* x = data_.data();
        const std::uint64_t* y = rhs.data_.data();
        std::uint64_t* out = r.data_.data();
        for (std::size_t i = 0; i < data_.size(); ++i) {
            const std::uint64_t xi = x[i];
            if (xi == 0) continue;
            for (std::size_t j = 0; j < rhs.data_.size(); ++j)
                out[i + j] = (out[i + j] + xi * y[j]) % l;
        }
        return r;
    }
    std::vector<std::uint64_t> prod(a);
    for (std::size_t i = 0; i < n_coeffs(); ++i) {
        if (base_->is_zero_raw(coeff_ptr(i))) continue;
        for (std::size_t j = 0; j < rhs.n_coeffs(); ++j) {
            base_->mul_raw(coeff_ptr(i), rhs.coeff_ptr(j), prod.data());
            base_->add_raw(r.coeff_ptr(i + j), prod.data(), r.coeff_ptr_mut(i + j));
        }
    }
    r.trim();  // never trims anything: leading product of nonzeros is nonzero
    return r;
}

Polynomial Polynomial::operator*(const FieldElement& scalar) const {
    if (!same_field(*base_, *scalar.parent())) throw std::invalid_argument("field mismatch");
    if (scalar.is_zero()) return Polynomial(base_);
    Polynomial r = *this;
    for (std::size_t i = 0; i < r.n_coeffs(); ++i)
        base_->mul_raw(coeff_ptr(i), scalar.data(), r.coeff_ptr_mut(i));
    return r;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    return same_field(*base_, *rhs.base_) && data_ == rhs.data_;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
    Polynomial r = Polynomial::one(base_);
    Polynomial b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
    if (!same_field(*base_, *x.parent())) throw std::invalid_argument("field mismatch");
    FieldElement acc = base_->zero();
    for (std::size_t i = n_coeffs(); i-- > 0;) acc = acc * x + coeff(i);
    return acc;
}

Polynomial Polynomial::derivative() const {
    Polynomial r(base_);
    for (std::size_t i = 1; i < n_coeffs(); ++i)
        r.set_coeff(i - 1, coeff(i) * base_->from_residues({static_cast<std::int64_t>(i % base_->characteristic())}));
    r.trim();
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * leading_coeff().inverse();
}

std::pair<Polynomial, Polynomial> divrem(const Polynomial& f, const Polynomial& d) {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    const auto& base = f.base();
    Polynomial q(base), r = f;
    const int dd = d.degree();
    const FieldElement lead_inv = d.leading_coeff().inverse();
    while (!r.is_zero() && r.degree() >= dd) {
        const std::size_t shift = static_cast<std::size_t>(r.degree() - dd);
        const FieldElement c = r.leading_coeff() * lead_inv;
        q.set_coeff(shift, c);
        r = r - Polynomial::monomial(c, shift) * d;
    }
    return {q, r};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = divrem(x, y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

bool is_squarefree(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree test of zero polynomial");
    if (f.degree() == 0) return true;
    Polynomial fp = f.derivative();
    if (fp.is_zero()) return false;  // f = g^l, deg f > 0
    return gcd(f, fp).degree() == 0;
}

namespace {

Polynomial powmod_big(const Polynomial& base, const BigInt& e, const Polynomial& mod) {
    Polynomial r = Polynomial::one(base.base());
    Polynomial b = divrem(base, mod).second;
    BigInt k = e;
    while (k > 0) {
        if (boost::multiprecision::bit_test(k, 0)) r = divrem(r * b, mod).second;
        b = divrem(b * b, mod).second;
        k >>= 1;
    }
    return r;
}

}  // namespace

bool is_irreducible(const Polynomial& f_in) {
    if (f_in.degree() < 1) throw std::invalid_argument("irreducibility test needs positive degree");
    const Polynomial f = f_in.monic();
    const auto& base = f.base();
    const BigInt& q = base->cardinality();
    const auto d = static_cast<std::uint64_t>(f.degree());
    const Polynomial t = Polynomial::variable(base);

    Polynomial h = divrem(t, f).second;  // T^{q^k} mod f, built up by k
    for (std::uint64_t k = 0; k < d; ++k) h = powmod_big(h, q, f);
    if (h != divrem(t, f).second) return false;

    for (std::uint64_t r : prime_factors_u64(d)) {
        Polynomial g = divrem(t, f).second;
        for (std::uint64_t k = 0; k < d / r; ++k) g = powmod_big(g, q, f);
        if (gcd(g - t, f).degree() != 0) return false;
    }
    return true;
}

FieldElement inverse_frobenius(const FieldElement& x) {
    const auto& field = x.parent();
    const unsigned a = field->extension_degree();
    if (a == 1) return x;
    return x.pow(pow_big(BigInt(field->characteristic()), a - 1));
}

namespace {

// Unique l-th root when every exponent in the support is divisible by l.
bool ell_root(const Polynomial& g, Polynomial& out) {
    const auto& base = g.base();
    const std::uint64_t l = base->characteristic();
    Polynomial h(base);
    for (std::size_t i = 0; i < g.n_coeffs(); ++i) {
        FieldElement c = g.coeff(i);
        if (c.is_zero()) continue;
        if (i % l != 0) return false;
        h.set_coeff(i / l, inverse_frobenius(c));
    }
    out = h;
    return true;
}

}  // namespace

bool scalar_mth_root(const FieldElement& v, std::uint64_t m, FieldElement& out) {
    const auto& field = v.parent();
    if (v.is_zero()) return false;
    const std::uint64_t q = field->cardinality_u64();
    const std::uint64_t t = m % (q - 1);
    if (t == 0) {
        if (!v.is_one()) return false;
        out = field->one();
        return true;
    }
    if (std::gcd(t, q - 1) == 1) {
        // x = v^{t^{-1} mod q-1}
        std::int64_t s0 = 0, s1 = 1;
        std::int64_t r0 = static_cast<std::int64_t>(q - 1), r1 = static_cast<std::int64_t>(t);
        while (r1 != 0) {
            std::int64_t quot = r0 / r1;
            std::swap(s0 -= quot * s1, s1);
            std::swap(r0 -= quot * r1, r1);
        }
        if (s0 < 0) s0 += static_cast<std::int64_t>(q - 1);
        out = v.pow(static_cast<std::uint64_t>(s0));
        return true;
    }
    // deterministic scan in canonical index order, desk scale
    const std::uint64_t l = field->characteristic();
    std::vector<std::uint64_t> probe(field->extension_degree(), 0);
    std::vector<std::uint64_t> acc(field->extension_degree(), 0);
    for (std::uint64_t idx = 1; idx < q; ++idx) {
        for (auto& digit : probe) {  // index + 1
            if (++digit < l) break;
            digit = 0;
        }
        field->pow_raw_u64(probe.data(), t, acc.data());
        if (std::equal(acc.begin(), acc.end(), v.coeffs().begin())) {
            out = FieldElement(field, probe);
            return true;
        }
    }
    return false;
}

namespace {

// One m-th root of g with m coprime to l, determined coefficient-by-coefficient
// from the top (m is invertible in the field). The powers h, h^2, ..., h^m are
// maintained incrementally on raw coefficient blocks: appending a term u = c*T^s
// turns h^j into sum_i C(j,i) u^i h^{j-i}, so each step costs shifted
// scaled adds instead of a fresh convolution, and h^m stays available for the
// exact final verification.
bool coprime_root(const Polynomial& g, std::uint64_t m, Polynomial& out) {
    const auto& base = g.base();
    if (m == 1) {
        out = g;
        return true;
    }
    const auto big_deg = static_cast<std::uint64_t>(g.degree());
    if (big_deg % m != 0) return false;
    const std::uint64_t d = big_deg / m;

    FieldElement c = base->zero();
    if (!scalar_mth_root(g.leading_coeff(), m, c)) return false;

    const FieldElement m_in_field =
        base->from_residues({static_cast<std::int64_t>(m % base->characteristic())});
    const FieldElement denom_inv = (m_in_field * c.pow(m - 1)).inverse();

    if (m > 32) {  // rare; keep the simple recompute-per-step path
        Polynomial h = Polynomial::monomial(c, d);
        for (std::uint64_t t = 1; t <= d; ++t) {
            Polynomial p = h.pow(m);
            FieldElement diff = g.coeff(big_deg - t) - p.coeff(big_deg - t);
            h.set_coeff(d - t, diff * denom_inv);
        }
        if (h.pow(m) != g) return false;
        out = h;
        return true;
    }

    const unsigned a = base->extension_degree();
    const std::uint64_t l = base->characteristic();
    // Pascal's triangle mod l
    std::vector<std::vector<std::uint64_t>> binom(m + 1);
    for (std::uint64_t j = 0; j <= m; ++j) {
        binom[j].assign(j + 1, 1);
        for (std::uint64_t i = 1; i < j; ++i)
            binom[j][i] = (binom[j - 1][i - 1] + binom[j - 1][i]) % l;
    }

    // pows[j] holds h^j as (j*d + 1) raw blocks; pows[0] = 1
    std::vector<std::vector<std::uint64_t>> pows(m + 1);
    pows[0].assign(a, 0);
    pows[0][0] = 1;
    for (std::uint64_t j = 1; j <= m; ++j) {
        pows[j].assign((j * d + 1) * a, 0);
        const FieldElement cj = c.pow(j);
        std::copy(cj.coeffs().begin(), cj.coeffs().end(), pows[j].end() - a);
    }

    std::vector<std::uint64_t> diff(a), scaled(a), u_pow((m + 1) * a, 0);
    for (std::uint64_t t = 1; t <= d; ++t) {
        const std::uint64_t s = d - t;
        base->sub_raw(g.coeff_ptr(big_deg - t), pows[m].data() + (big_deg - t) * a, diff.data());
        if (base->is_zero_raw(diff.data())) continue;
        base->mul_raw(diff.data(), denom_inv.data(), diff.data());  // the new coefficient c_s

        // u_pow[i] = c_s^i
        std::fill(u_pow.begin(), u_pow.end(), 0);
        u_pow[0] = 1;
        for (std::uint64_t i = 1; i <= m; ++i)
            base->mul_raw(u_pow.data() + (i - 1) * a, diff.data(), u_pow.data() + i * a);

        // descending j so that pows[j-i] still holds the previous step's value
        for (std::uint64_t j = m; j >= 1; --j) {
            for (std::uint64_t i = 1; i <= j; ++i) {
                const std::uint64_t len = (j - i) * d + 1;
                for (std::uint64_t k = 0; k < len; ++k) {
                    const std::uint64_t* src = pows[j - i].data() + k * a;
                    if (base->is_zero_raw(src)) continue;
                    base->mul_raw(src, u_pow.data() + i * a, scaled.data());
                    base->scalar_mul_raw(binom[j][i], scaled.data(), scaled.data());
                    base->add_raw(pows[j].data() + (k + i * s) * a, scaled.data(),
                                  pows[j].data() + (k + i * s) * a);
                }
            }
        }
    }

    // exact verification: the maintained h^m must equal g
    for (std::uint64_t k = 0; k <= big_deg; ++k) {
        base->sub_raw(g.coeff_ptr(k), pows[m].data() + k * a, diff.data());
        if (!base->is_zero_raw(diff.data())) return false;
    }

    Polynomial h(base);
    h.resize_coeffs(d + 1);
    std::copy(pows[1].begin(), pows[1].end(), h.coeff_ptr_mut(0));
    h.trim();
    out = h;
    return true;
}

}  // namespace

std::vector<Polynomial> poly_mth_roots(const Polynomial& g, std::uint64_t m) {
    if (g.is_zero()) throw std::invalid_argument("mth roots of zero polynomial");
    if (m < 1) throw std::invalid_argument("root exponent must be positive");
    const auto& base = g.base();
    const std::uint64_t l = base->characteristic();

    std::uint64_t m_prime = m;
    Polynomial w = g;
    while (m_prime % l == 0) {
        Polynomial next(base);
        if (!ell_root(w, next)) return {};
        w = next;
        m_prime /= l;
    }

    Polynomial h(base);
    if (!coprime_root(w, m_prime, h)) return {};

    std::vector<Polynomial> out;
    for (const FieldElement& omega : roots_of_unity_in_field(base, m_prime)) out.push_back(h * omega);
    return out;
}

Polynomial map_coeffs(const Polynomial& f, const Embedding& phi) {
    Polynomial r(phi.to());
    for (std::size_t i = 0; i < f.n_coeffs(); ++i) r.set_coeff(i, phi(f.coeff(i)));
    return r;
}

}  // namespace catff
