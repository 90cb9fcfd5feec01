#include "catff/gf.hpp"

#include <algorithm>
#include <numeric>

namespace catff {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

BigInt pow_big(const BigInt& base, std::uint64_t exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

namespace {

// Polynomial arithmetic over Z/l on plain residue vectors (constant term
// first, no trailing-zero guarantees). Only used to pick the canonical
// modulus; general polynomial arithmetic over F_q lives in polyarith.
using PfPoly = std::vector<std::uint64_t>;

int pf_degree(const PfPoly& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return static_cast<int>(i);
    return -1;
}

void pf_trim(PfPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t pf_inv_scalar(std::uint64_t x, std::uint64_t l) {
    // extended Euclid on integers
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(l), newr = static_cast<std::int64_t>(x % l);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (t < 0) t += static_cast<std::int64_t>(l);
    return static_cast<std::uint64_t>(t);
}

PfPoly pf_mod(PfPoly f, const PfPoly& m, std::uint64_t l) {
    // m monic
    pf_trim(f);
    const int dm = pf_degree(m);
    for (int i = pf_degree(f); i >= dm && i >= 0; i = pf_degree(f)) {
        const std::uint64_t c = f[static_cast<std::size_t>(i)];
        if (c != 0) {
            for (int j = 0; j <= dm; ++j) {
                auto& slot = f[static_cast<std::size_t>(i - dm + j)];
                slot = (slot + (l - m[static_cast<std::size_t>(j)] % l) * c) % l;
            }
        }
        f.pop_back();
        pf_trim(f);
        if (pf_degree(f) < dm) break;
    }
    return f;
}

PfPoly pf_mulmod(const PfPoly& a, const PfPoly& b, const PfPoly& m, std::uint64_t l) {
    if (a.empty() || b.empty()) return {};
    PfPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % l;
    }
    return pf_mod(std::move(c), m, l);
}

PfPoly pf_pow_l_mod(PfPoly base, std::uint64_t e, const PfPoly& m, std::uint64_t l) {
    PfPoly r = {1};
    while (e) {
        if (e & 1) r = pf_mulmod(r, base, m, l);
        base = pf_mulmod(base, base, m, l);
        e >>= 1;
    }
    return r;
}

PfPoly pf_gcd(PfPoly a, PfPoly b, std::uint64_t l) {
    pf_trim(a);
    pf_trim(b);
    while (!b.empty()) {
        PfPoly m = b;
        const std::uint64_t lead = pf_inv_scalar(m.back(), l);
        for (auto& c : m) c = c * lead % l;  // monic divisor
        a = pf_mod(std::move(a), m, l);
        std::swap(a, b);
        pf_trim(b);
    }
    return a;
}

// Rabin's criterion for a monic f of degree d over Z/l.
bool pf_is_irreducible(const PfPoly& f, std::uint64_t l) {
    const int d = pf_degree(f);
    if (d < 1) return false;
    PfPoly t = {0, 1};
    PfPoly h = t;  // will hold T^{l^k} mod f
    for (int k = 0; k < d; ++k) h = pf_pow_l_mod(h, l, f, l);
    PfPoly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + l - 1) % l;
    pf_trim(diff);
    if (!diff.empty()) return false;  // T^{l^d} != T mod f
    for (std::uint64_t r : prime_factors_u64(static_cast<std::uint64_t>(d))) {
        PfPoly g = t;
        for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(d) / r; ++k)
            g = pf_pow_l_mod(g, l, f, l);
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + l - 1) % l;
        pf_trim(g);
        PfPoly common = pf_gcd(g, f, l);
        if (pf_degree(common) != 0) return false;
    }
    return true;
}

// Lexicographically least monic irreducible of degree a over Z/l, coefficients
// compared from the constant term up.
std::vector<std::uint64_t> canonical_modulus(std::uint64_t l, unsigned a) {
    if (a == 1) return {0, 1};  // the polynomial T
    std::vector<std::uint64_t> low(a, 0);
    while (true) {
        PfPoly f(low);
        f.push_back(1);  // monic
        if (pf_is_irreducible(f, l)) return f;
        // lexicographic successor: last coordinate spins fastest
        std::size_t i = a;
        while (i-- > 0) {
            if (++low[i] < l) break;
            low[i] = 0;
            if (i == 0) throw std::logic_error("no irreducible modulus found");
        }
    }
}

thread_local std::vector<std::uint64_t> mul_scratch;

}  // namespace

PrimePowerField::PrimePowerField(std::uint64_t characteristic, unsigned extension_degree,
                                 std::vector<std::uint64_t> modulus)
    : char_(characteristic), deg_(extension_degree), modulus_(std::move(modulus)),
      card_(pow_big(BigInt(characteristic), extension_degree)) {}

FieldPtr PrimePowerField::make(std::uint64_t characteristic, unsigned extension_degree) {
    if (!is_prime_u64(characteristic)) throw std::invalid_argument("characteristic not prime");
    if (extension_degree < 1) throw std::invalid_argument("extension degree must be positive");
    if (characteristic >= (1ULL << 31))
        throw std::invalid_argument("characteristic too large for this implementation");
    return FieldPtr(new PrimePowerField(characteristic, extension_degree,
                                        canonical_modulus(characteristic, extension_degree)));
}

FieldPtr make_field(std::uint64_t characteristic, unsigned extension_degree) {
    return PrimePowerField::make(characteristic, extension_degree);
}

std::uint64_t PrimePowerField::cardinality_u64() const {
    if (card_ > BigInt(std::uint64_t(1) << 62)) throw std::domain_error("field too large");
    return static_cast<std::uint64_t>(card_);
}

bool same_field(const PrimePowerField& a, const PrimePowerField& b) {
    return a.characteristic() == b.characteristic() && a.extension_degree() == b.extension_degree();
}

FieldElement PrimePowerField::zero() const {
    return FieldElement(shared_from_this(), std::vector<std::uint64_t>(deg_, 0));
}

FieldElement PrimePowerField::one() const {
    std::vector<std::uint64_t> c(deg_, 0);
    c[0] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement PrimePowerField::element_from_index(std::uint64_t idx) const {
    std::vector<std::uint64_t> c(deg_, 0);
    for (unsigned i = 0; i < deg_; ++i) {
        c[i] = idx % char_;
        idx /= char_;
    }
    if (idx != 0) throw std::out_of_range("element index exceeds field size");
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement PrimePowerField::from_residues(const std::vector<std::int64_t>& coeffs) const {
    if (coeffs.size() > deg_) throw std::invalid_argument("too many coefficients for this field");
    std::vector<std::uint64_t> c(deg_, 0);
    const auto l = static_cast<std::int64_t>(char_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::int64_t r = coeffs[i] % l;
        if (r < 0) r += l;
        c[i] = static_cast<std::uint64_t>(r);
    }
    return FieldElement(shared_from_this(), std::move(c));
}

void PrimePowerField::add_raw(const std::uint64_t* x, const std::uint64_t* y,
                              std::uint64_t* out) const {
    for (unsigned i = 0; i < deg_; ++i) out[i] = (x[i] + y[i]) % char_;
}

void PrimePowerField::sub_raw(const std::uint64_t* x, const std::uint64_t* y,
                              std::uint64_t* out) const {
    for (unsigned i = 0; i < deg_; ++i) out[i] = (x[i] + char_ - y[i]) % char_;
}

void PrimePowerField::neg_raw(const std::uint64_t* x, std::uint64_t* out) const {
    for (unsigned i = 0; i < deg_; ++i) out[i] = x[i] == 0 ? 0 : char_ - x[i];
}

void PrimePowerField::scalar_mul_raw(std::uint64_t c, const std::uint64_t* x,
                                     std::uint64_t* out) const {
    c %= char_;
    for (unsigned i = 0; i < deg_; ++i) out[i] = x[i] * c % char_;
}

void PrimePowerField::mul_raw(const std::uint64_t* x, const std::uint64_t* y,
                              std::uint64_t* out) const {
    const unsigned a = deg_;
    if (a == 1) {
        out[0] = x[0] * y[0] % char_;
        return;
    }
    auto& c = mul_scratch;
    c.assign(2 * a - 1, 0);
    for (unsigned i = 0; i < a; ++i) {
        if (x[i] == 0) continue;
        for (unsigned j = 0; j < a; ++j) c[i + j] = (c[i + j] + x[i] * y[j]) % char_;
    }
    // reduce by the monic modulus: t^a = -(m_0 + m_1 t + ... + m_{a-1} t^{a-1})
    for (unsigned i = 2 * a - 2; i >= a; --i) {
        const std::uint64_t top = c[i];
        if (top != 0) {
            for (unsigned j = 0; j < a; ++j)
                c[i - a + j] = (c[i - a + j] + (char_ - modulus_[j]) * top) % char_;
        }
    }
    std::copy(c.begin(), c.begin() + a, out);
}

bool PrimePowerField::is_zero_raw(const std::uint64_t* x) const {
    for (unsigned i = 0; i < deg_; ++i)
        if (x[i] != 0) return false;
    return true;
}

std::uint64_t PrimePowerField::index_raw(const std::uint64_t* x) const {
    std::uint64_t idx = 0;
    for (unsigned i = deg_; i-- > 0;) idx = idx * char_ + x[i];
    return idx;
}

void PrimePowerField::pow_raw(const std::uint64_t* x, const BigInt& e, std::uint64_t* out) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    std::vector<std::uint64_t> base(x, x + deg_);
    std::vector<std::uint64_t> acc(deg_, 0);
    acc[0] = 1;
    BigInt k = e;
    while (k > 0) {
        if (boost::multiprecision::bit_test(k, 0)) mul_raw(acc.data(), base.data(), acc.data());
        mul_raw(base.data(), base.data(), base.data());
        k >>= 1;
    }
    std::copy(acc.begin(), acc.end(), out);
}

void PrimePowerField::pow_raw_u64(const std::uint64_t* x, std::uint64_t e,
                                  std::uint64_t* out) const {
    std::vector<std::uint64_t> base(x, x + deg_);
    std::vector<std::uint64_t> acc(deg_, 0);
    acc[0] = 1;
    while (e > 0) {
        if (e & 1) mul_raw(acc.data(), base.data(), acc.data());
        if (e >>= 1) mul_raw(base.data(), base.data(), base.data());
    }
    std::copy(acc.begin(), acc.end(), out);
}

void PrimePowerField::inv_raw(const std::uint64_t* x, std::uint64_t* out) const {
    if (is_zero_raw(x)) throw std::domain_error("division by zero");
    pow_raw(x, card_ - 2, out);
}

FieldElement::FieldElement(FieldPtr parent, std::vector<std::uint64_t> coeffs)
    : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != parent_->extension_degree())
        throw std::invalid_argument("coefficient vector has wrong length");
}

void FieldElement::check_same_parent(const FieldElement& rhs) const {
    if (!same_field(*parent_, *rhs.parent_)) throw std::invalid_argument("field mismatch");
}

bool FieldElement::is_zero() const { return parent_->is_zero_raw(coeffs_.data()); }

bool FieldElement::is_one() const {
    if (coeffs_[0] != 1) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    check_same_parent(rhs);
    FieldElement r = *this;
    parent_->add_raw(coeffs_.data(), rhs.coeffs_.data(), r.coeffs_.data());
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    check_same_parent(rhs);
    FieldElement r = *this;
    parent_->sub_raw(coeffs_.data(), rhs.coeffs_.data(), r.coeffs_.data());
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    check_same_parent(rhs);
    FieldElement r = *this;
    parent_->mul_raw(coeffs_.data(), rhs.coeffs_.data(), r.coeffs_.data());
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    parent_->neg_raw(coeffs_.data(), r.coeffs_.data());
    return r;
}

FieldElement FieldElement::inverse() const {
    FieldElement r = *this;
    parent_->inv_raw(coeffs_.data(), r.coeffs_.data());
    return r;
}

FieldElement FieldElement::pow(const BigInt& e) const {
    FieldElement r = *this;
    parent_->pow_raw(coeffs_.data(), e, r.coeffs_.data());
    return r;
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    FieldElement r = *this;
    parent_->pow_raw_u64(coeffs_.data(), e, r.coeffs_.data());
    return r;
}

bool FieldElement::operator==(const FieldElement& rhs) const {
    return same_field(*parent_, *rhs.parent_) && coeffs_ == rhs.coeffs_;
}

std::uint64_t multiplicative_order(const FieldElement& x) {
    if (x.is_zero()) throw std::domain_error("multiplicative order of zero undefined");
    const auto& field = x.parent();
    std::uint64_t order = field->cardinality_u64() - 1;
    for (std::uint64_t r : prime_factors_u64(order)) {
        while (order % r == 0 && x.pow(order / r).is_one()) order /= r;
    }
    return order;
}

FieldElement primitive_root_of_unity(const FieldPtr& field, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("order must be positive");
    if (n % field->characteristic() == 0) throw std::domain_error("p equals characteristic");
    const std::uint64_t q = field->cardinality_u64();
    if ((q - 1) % n != 0) throw std::domain_error("mu_p not in field");
    if (n == 1) return field->one();
    const auto radicals = prime_factors_u64(n);
    for (std::uint64_t idx = 1; idx < q; ++idx) {
        FieldElement x = field->element_from_index(idx);
        if (!x.pow(n).is_one()) continue;
        bool exact = true;
        for (std::uint64_t r : radicals)
            if (x.pow(n / r).is_one()) {
                exact = false;
                break;
            }
        if (exact) return x;
    }
    throw std::logic_error("no primitive root found");  // unreachable when n | q-1
}

std::vector<FieldElement> roots_of_unity_in_field(const FieldPtr& field, std::uint64_t n) {
    const std::uint64_t q = field->cardinality_u64();
    const std::uint64_t g = std::gcd(n, q - 1);
    std::vector<FieldElement> out;
    if (g == 1) {
        out.push_back(field->one());
        return out;
    }
    FieldElement zeta = primitive_root_of_unity(field, g);
    std::vector<std::uint64_t> indices;
    FieldElement w = field->one();
    for (std::uint64_t j = 0; j < g; ++j) {
        indices.push_back(w.index());
        w = w * zeta;
    }
    std::sort(indices.begin(), indices.end());
    for (std::uint64_t idx : indices) out.push_back(field->element_from_index(idx));
    return out;
}

Embedding::Embedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
    if (from_->characteristic() != to_->characteristic() ||
        to_->extension_degree() % from_->extension_degree() != 0)
        throw std::invalid_argument("incompatible fields");
    const unsigned a = from_->extension_degree();
    const unsigned b = to_->extension_degree();
    const std::uint64_t l = from_->characteristic();

    // Root of the small modulus in the big field, least canonical index first.
    std::vector<std::uint64_t> root;
    const std::uint64_t q_to = to_->cardinality_u64();
    std::vector<std::uint64_t> cand(b, 0), acc(b, 0), tmp(b, 0);
    const auto& mod = from_->modulus();
    for (std::uint64_t idx = 0;; ++idx) {
        if (idx >= q_to) throw std::logic_error("modulus has no root in extension");
        // Horner with prime-subfield coefficients
        std::fill(acc.begin(), acc.end(), 0);
        for (unsigned j = a + 1; j-- > 0;) {
            to_->mul_raw(acc.data(), cand.data(), tmp.data());
            tmp[0] = (tmp[0] + mod[j]) % l;
            acc = tmp;
        }
        if (to_->is_zero_raw(acc.data())) {
            root = cand;
            break;
        }
        // next candidate in odometer order
        for (unsigned i = 0; i < b; ++i) {
            if (++cand[i] < l) break;
            cand[i] = 0;
        }
    }

    basis_images_.assign(a, std::vector<std::uint64_t>(b, 0));
    basis_images_[0][0] = 1;
    for (unsigned i = 1; i < a; ++i)
        to_->mul_raw(basis_images_[i - 1].data(), root.data(), basis_images_[i].data());
}

void Embedding::apply_raw(const std::uint64_t* x, std::uint64_t* out) const {
    const unsigned a = from_->extension_degree();
    const unsigned b = to_->extension_degree();
    std::vector<std::uint64_t> acc(b, 0), term(b, 0);
    for (unsigned i = 0; i < a; ++i) {
        if (x[i] == 0) continue;
        to_->scalar_mul_raw(x[i], basis_images_[i].data(), term.data());
        to_->add_raw(acc.data(), term.data(), acc.data());
    }
    std::copy(acc.begin(), acc.end(), out);
}

FieldElement Embedding::operator()(const FieldElement& x) const {
    if (!same_field(*x.parent(), *from_)) throw std::invalid_argument("field mismatch");
    FieldElement r = to_->zero();
    apply_raw(x.data(), r.data());
    return r;
}

FieldElement embed(const FieldElement& x, const FieldPtr& target) {
    return Embedding(x.parent(), target)(x);
}

}  // namespace catff
