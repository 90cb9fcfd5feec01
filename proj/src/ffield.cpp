#include "catff/ffield.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace catff {

CurveModel::CurveModel(FieldPtr base, unsigned e, Polynomial f, unsigned genus)
    : base_(std::move(base)), e_(e), f_(std::move(f)), genus_(genus) {}

CurvePtr CurveModel::make(FieldPtr base, unsigned e, Polynomial f) {
    if (e < 1) throw std::invalid_argument("exponent e must be positive");
    if (!same_field(*base, *f.base())) throw std::invalid_argument("field mismatch");
    unsigned genus = 0;
    if (e >= 2) {
        if (std::gcd<std::uint64_t>(e, base->characteristic()) != 1)
            throw std::invalid_argument("wildly ramified model unsupported");
        if (f.is_zero() || !is_squarefree(f)) throw std::invalid_argument("singular model");
        const auto df = static_cast<std::uint64_t>(f.degree());
        if (std::gcd<std::uint64_t>(e, df) != 1)
            throw std::invalid_argument("no degree-1 infinite place guaranteed");
        genus = static_cast<unsigned>((static_cast<std::uint64_t>(e) - 1) * (df - 1) / 2);
    }
    return CurvePtr(new CurveModel(std::move(base), e, std::move(f), genus));
}

CurvePtr make_curve(FieldPtr base, unsigned e, Polynomial f) {
    return CurveModel::make(std::move(base), e, std::move(f));
}

CurvePtr base_change(const CurvePtr& curve, unsigned k) {
    if (k < 1) throw std::invalid_argument("extension degree must be positive");
    const auto& base = curve->base();
    FieldPtr big = make_field(base->characteristic(), base->extension_degree() * k);
    Embedding phi(base, big);
    return make_curve(big, curve->e(), map_coeffs(curve->f(), phi));
}

RingElement CurveModel::zero_element() const {
    return RingElement(shared_from_this(), std::vector<Polynomial>(e_, Polynomial(base_)));
}

RingElement CurveModel::one_element() const { return constant(base_->one()); }

RingElement CurveModel::constant(const FieldElement& c) const {
    auto r = zero_element();
    r.part_mut(0).set_coeff(0, c);
    return r;
}

RingElement CurveModel::x() const {
    auto r = zero_element();
    r.part_mut(0) = Polynomial::variable(base_);
    return r;
}

RingElement CurveModel::y() const {
    auto r = zero_element();
    if (e_ == 1)
        r.part_mut(0) = f_;
    else
        r.part_mut(1) = Polynomial::one(base_);
    return r;
}

std::optional<unsigned> CurveModel::leader_part(std::uint64_t d) const {
    for (unsigned i = 0; i < e_; ++i) {
        const std::uint64_t v = i * deg_f();
        if (d >= v && (d - v) % e_ == 0) return i;
    }
    return std::nullopt;
}

RingElement CurveModel::order_monomial(std::uint64_t d) const {
    auto i = leader_part(d);
    if (!i) throw std::invalid_argument("pole order not attained by any monomial");
    auto r = zero_element();
    r.part_mut(*i) = Polynomial::monomial(base_->one(), (d - *i * deg_f()) / e_);
    return r;
}

RingElement::RingElement(CurvePtr parent, std::vector<Polynomial> parts)
    : parent_(std::move(parent)), parts_(std::move(parts)) {
    if (parts_.size() != parent_->e()) throw std::invalid_argument("wrong number of parts");
}

void RingElement::check_same_parent(const RingElement& rhs) const {
    if (!same_field(*parent_->base(), *rhs.parent_->base()) || parent_->e() != rhs.parent_->e() ||
        parent_->f() != rhs.parent_->f())
        throw std::invalid_argument("curve mismatch");
}

bool RingElement::is_zero() const {
    return std::all_of(parts_.begin(), parts_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool RingElement::is_constant() const {
    if (parts_[0].degree() > 0) return false;
    for (std::size_t i = 1; i < parts_.size(); ++i)
        if (!parts_[i].is_zero()) return false;
    return true;
}

RingElement RingElement::operator+(const RingElement& rhs) const {
    check_same_parent(rhs);
    RingElement r = *this;
    for (unsigned i = 0; i < parent_->e(); ++i) r.parts_[i] += rhs.parts_[i];
    return r;
}

RingElement RingElement::operator-(const RingElement& rhs) const {
    check_same_parent(rhs);
    RingElement r = *this;
    for (unsigned i = 0; i < parent_->e(); ++i) r.parts_[i] -= rhs.parts_[i];
    return r;
}

RingElement RingElement::operator-() const {
    RingElement r = *this;
    for (auto& p : r.parts_) p = -p;
    return r;
}

RingElement RingElement::operator*(const FieldElement& scalar) const {
    RingElement r = *this;
    for (auto& p : r.parts_) p = p * scalar;
    return r;
}

RingElement RingElement::operator*(const RingElement& rhs) const {
    check_same_parent(rhs);
    const unsigned e = parent_->e();
    if (e == 1) {
        RingElement r = parent_->zero_element();
        r.parts_[0] = parts_[0] * rhs.parts_[0];
        return r;
    }
    std::vector<Polynomial> conv(2 * e - 1, Polynomial(parent_->base()));
    for (unsigned i = 0; i < e; ++i) {
        if (parts_[i].is_zero()) continue;
        for (unsigned j = 0; j < e; ++j) {
            if (rhs.parts_[j].is_zero()) continue;
            conv[i + j] += parts_[i] * rhs.parts_[j];
        }
    }
    // y^k = y^{k-e} f(x) for k >= e
    for (unsigned k = 2 * e - 2; k >= e; --k) {
        if (!conv[k].is_zero()) conv[k - e] += conv[k] * parent_->f();
    }
    conv.resize(e, Polynomial(parent_->base()));
    return RingElement(parent_, std::move(conv));
}

RingElement RingElement::pow(std::uint64_t e) const {
    RingElement r = parent_->one_element();
    RingElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

bool RingElement::operator==(const RingElement& rhs) const {
    return same_field(*parent_->base(), *rhs.parent_->base()) && parent_->e() == rhs.parent_->e() &&
           parts_ == rhs.parts_;
}

std::uint64_t pole_order(const RingElement& g) {
    if (g.is_zero()) throw std::domain_error("pole order of zero undefined");
    const auto& curve = *g.parent();
    std::uint64_t best = 0;
    bool found = false;
    for (unsigned i = 0; i < curve.e(); ++i) {
        const auto& p = g.part(i);
        if (p.is_zero()) continue;
        const std::uint64_t v =
            curve.e() * static_cast<std::uint64_t>(p.degree()) + i * curve.deg_f();
        if (!found || v > best) best = v;
        found = true;
    }
    return best;
}

FieldElement leading_coefficient(const RingElement& g) {
    const auto& curve = *g.parent();
    const std::uint64_t d = pole_order(g);
    const unsigned i = *curve.leader_part(d);
    return g.part(i).leading_coeff();
}

std::optional<PoleSlice> PoleSlice::at(const CurveModel& curve, std::uint64_t d) {
    auto leader = curve.leader_part(d);
    if (!leader) return std::nullopt;
    PoleSlice s;
    s.d = d;
    s.leader = *leader;
    s.leader_deg = (d - *leader * curve.deg_f()) / curve.e();
    s.caps.assign(curve.e(), -1);
    const BigInt q = curve.base()->cardinality();
    s.count = (q - 1) * pow_big(q, s.leader_deg);
    for (unsigned j = 0; j < curve.e(); ++j) {
        if (j == s.leader) {
            s.caps[j] = static_cast<std::int64_t>(s.leader_deg);
            continue;
        }
        const std::uint64_t v = j * curve.deg_f();
        if (d >= v) {
            // strictly below d automatically: j*deg f is in a different class mod e
            const std::uint64_t cap = (d - v) / curve.e();
            s.caps[j] = static_cast<std::int64_t>(cap);
            s.count *= pow_big(q, cap + 1);
        }
    }
    return s;
}

BigInt count_with_pole_order_at_most(const CurveModel& curve, std::uint64_t B) {
    const BigInt q = curve.base()->cardinality();
    BigInt total = 1;
    for (unsigned i = 0; i < curve.e(); ++i) {
        const std::uint64_t v = i * curve.deg_f();
        if (B >= v)
            total *= pow_big(q, (B - v) / curve.e() + 1);
    }
    return total - 1;
}

SliceIterator::SliceIterator(CurvePtr curve, PoleSlice slice, std::uint64_t start_index,
                             std::uint64_t end_index)
    : curve_(std::move(curve)), slice_(std::move(slice)), pos_(start_index), end_(end_index),
      current_(curve_->zero_element()) {
    const std::uint64_t q = curve_->base()->cardinality_u64();
    for (unsigned part = 0; part < curve_->e(); ++part) {
        if (slice_.caps[part] < 0) continue;
        const auto cap = static_cast<std::size_t>(slice_.caps[part]);
        for (std::size_t c = 0; c <= cap; ++c) {
            const bool forced = part == slice_.leader && c == cap;
            if (forced) leader_slot_ = slots_.size();
            slots_.push_back({part, c, forced ? q - 1 : q, forced ? std::uint64_t(1) : 0});
        }
    }
    if (pos_ < end_) decode(pos_);
}

void SliceIterator::write_slot(std::size_t s) {
    const auto& slot = slots_[s];
    current_.part_mut(slot.part).set_coeff(
        slot.coeff, curve_->base()->element_from_index(digits_[s] + slot.offset));
}

void SliceIterator::decode(std::uint64_t idx) {
    digits_.assign(slots_.size(), 0);
    for (std::size_t s = slots_.size(); s-- > 0;) {
        digits_[s] = idx % slots_[s].radix;
        idx /= slots_[s].radix;
    }
    for (std::size_t s = 0; s < slots_.size(); ++s) write_slot(s);
}

void SliceIterator::advance() {
    if (++pos_ >= end_) return;
    for (std::size_t s = slots_.size(); s-- > 0;) {
        if (++digits_[s] < slots_[s].radix) {
            write_slot(s);
            return;
        }
        digits_[s] = 0;
        write_slot(s);
    }
}

void enumerate_by_pole_order(const CurvePtr& curve, std::uint64_t B,
                             const std::function<void(const RingElement&)>& visit) {
    for (std::uint64_t d = 0; d <= B; ++d) {
        auto slice = PoleSlice::at(*curve, d);
        if (!slice) continue;
        if (slice->count > BigInt(UINT64_MAX)) throw std::domain_error("enumeration too large");
        const auto n = static_cast<std::uint64_t>(slice->count);
        for (SliceIterator it(curve, *slice, 0, n); !it.done(); it.advance()) visit(it.current());
    }
}

BigInt count_points(const CurvePtr& curve, unsigned k, std::uint64_t budget, unsigned threads) {
    if (k < 1) throw std::invalid_argument("extension degree must be positive");
    const auto& base = curve->base();
    const BigInt qk_big = pow_big(base->cardinality(), k);
    if (qk_big > budget) throw std::domain_error("extension too large");
    const auto qk = static_cast<std::uint64_t>(qk_big);

    FieldPtr big = k == 1 ? base : make_field(base->characteristic(), base->extension_degree() * k);
    Polynomial f = curve->f();
    if (k > 1) f = map_coeffs(f, Embedding(base, big));

    const std::uint64_t g = std::gcd<std::uint64_t>(curve->e(), qk - 1);
    const BigInt residue_exp = (qk_big - 1) / g;

    auto count_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
        std::uint64_t acc = 0;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            const FieldElement v = f.eval(big->element_from_index(idx));
            if (v.is_zero())
                acc += 1;
            else if (v.pow(residue_exp).is_one())
                acc += g;
        }
        return acc;
    };

    std::uint64_t affine = 0;
    if (threads <= 1 || qk < 4096) {
        affine = count_range(0, qk);
    } else {
        std::vector<std::uint64_t> partial(threads, 0);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (qk + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = std::min<std::uint64_t>(qk, t * chunk);
            const std::uint64_t hi = std::min<std::uint64_t>(qk, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { partial[t] = count_range(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (auto p : partial) affine += p;
    }
    return BigInt(affine) + 1;
}

namespace {

// Unique l-th root along the grading: X^l = sum c_v^l M_v^l with the d-values
// l*v pairwise distinct, so the system is triangular from the top.
bool ring_ell_root(const RingElement& w, RingElement& out) {
    const auto& curve = w.parent();
    const std::uint64_t l = curve->base()->characteristic();
    RingElement rem = w;
    RingElement x = curve->zero_element();
    while (!rem.is_zero()) {
        const std::uint64_t dr = pole_order(rem);
        if (dr % l != 0) return false;
        const std::uint64_t v = dr / l;
        if (!curve->order_attained(v)) return false;
        const RingElement m_pow = curve->order_monomial(v).pow(l);
        const FieldElement c_pow = leading_coefficient(rem) / leading_coefficient(m_pow);
        x = x + curve->order_monomial(v) * inverse_frobenius(c_pow);
        rem = rem - m_pow * c_pow;
    }
    out = x;
    return true;
}

// One m-th root with m coprime to l, by undetermined coefficients along the
// pole-order grading, highest order first. The powers x, x^2, ..., x^m are
// maintained across steps: appending u = c*M_v turns x^j into
// sum_i C(j,i) u^i x^{j-i}, so each step multiplies by the small correction
// only. Exact verification on exit (the maintained x^m must equal w).
bool ring_coprime_root(const RingElement& w, std::uint64_t m, RingElement& out) {
    const auto& curve = w.parent();
    const auto& base = curve->base();
    if (m == 1) {
        out = w;
        return true;
    }
    const std::uint64_t dw = pole_order(w);
    if (dw % m != 0) return false;
    const std::uint64_t dx = dw / m;
    if (!curve->order_attained(dx)) return false;

    const RingElement m_top = curve->order_monomial(dx);
    FieldElement c = base->zero();
    {
        RingElement top_pow = m_top.pow(m);
        if (!scalar_mth_root(leading_coefficient(w) / leading_coefficient(top_pow), m, c))
            return false;
    }

    const std::uint64_t l = base->characteristic();
    std::vector<std::uint64_t> binom_row((m + 1) * (m + 1), 0);  // C(j,i) mod l at j*(m+1)+i
    for (std::uint64_t j = 0; j <= m; ++j) {
        binom_row[j * (m + 1)] = 1;
        for (std::uint64_t i = 1; i <= j; ++i)
            binom_row[j * (m + 1) + i] =
                (binom_row[(j - 1) * (m + 1) + i - 1] + (i <= j - 1 ? binom_row[(j - 1) * (m + 1) + i] : 0)) % l;
    }
    auto binom = [&](std::uint64_t j, std::uint64_t i) {
        return base->from_residues({static_cast<std::int64_t>(binom_row[j * (m + 1) + i])});
    };

    std::vector<RingElement> pows;  // pows[j] = x^j, pows[0] = 1
    pows.reserve(m + 1);
    pows.push_back(curve->one_element());
    pows.push_back(m_top * c);
    for (std::uint64_t j = 2; j <= m; ++j) pows.push_back(pows[j - 1] * pows[1]);

    const FieldElement m_scalar =
        base->from_residues({static_cast<std::int64_t>(m % base->characteristic())});
    std::uint64_t guard = dx + 2;
    while (guard-- > 0) {
        const RingElement diff = w - pows[m];
        if (diff.is_zero()) {
            out = pows[1];
            return true;
        }
        const std::uint64_t dd = pole_order(diff);
        const std::uint64_t floor = (m - 1) * dx;
        if (dd < floor || dd >= dw) return false;
        const std::uint64_t v = dd - floor;
        if (!curve->order_attained(v)) return false;
        const RingElement mono = curve->order_monomial(v);
        const RingElement cross = pows[m - 1] * mono;  // reused for the j = m, i = 1 update
        const FieldElement denom = m_scalar * leading_coefficient(cross);
        const FieldElement coeff = leading_coefficient(diff) / denom;

        // u^i = coeff^i * mono^i
        std::vector<RingElement> u_pows;
        u_pows.reserve(m + 1);
        u_pows.push_back(curve->one_element());
        u_pows.push_back(mono * coeff);
        for (std::uint64_t i = 2; i <= m; ++i) u_pows.push_back(u_pows[i - 1] * u_pows[1]);

        for (std::uint64_t j = m; j >= 1; --j) {
            RingElement acc = pows[j];
            for (std::uint64_t i = 1; i <= j; ++i) {
                if (j == m && i == 1)
                    acc = acc + cross * (m_scalar * coeff);
                else
                    acc = acc + (pows[j - i] * u_pows[i]) * binom(j, i);
            }
            pows[j] = acc;
        }
    }
    return false;
}

}  // namespace

std::vector<RingElement> ring_mth_roots(const RingElement& r, std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("root exponent must be positive");
    const auto& curve = r.parent();
    const auto& base = curve->base();
    if (r.is_zero()) return {curve->zero_element()};

    const std::uint64_t l = base->characteristic();
    std::uint64_t m_prime = m;
    RingElement w = r;
    while (m_prime % l == 0) {
        RingElement next = curve->zero_element();
        if (!ring_ell_root(w, next)) return {};
        w = next;
        m_prime /= l;
    }

    RingElement x0 = curve->zero_element();
    if (!ring_coprime_root(w, m_prime, x0)) return {};

    std::vector<RingElement> out;
    for (const FieldElement& omega : roots_of_unity_in_field(base, m_prime)) out.push_back(x0 * omega);
    return out;
}

namespace {

// Fixed-shape arithmetic on flat buffers for the search hot path. An element
// occupies e parts of `blocks` coefficient blocks (a words each), zero-padded;
// every product formed here keeps its pole order within the budget fixed at
// construction, which bounds all part degrees by `blocks`.
class FlatEngine {
  public:
    FlatEngine(const CurveModel& curve, std::uint64_t max_d)
        : curve_(&curve), field_(curve.base().get()), e_(curve.e()),
          a_(field_->extension_degree()), l_(field_->characteristic()), degf_(curve.deg_f()),
          blocks_(max_d / curve.e() + 2), conv_blocks_(2 * blocks_ + degf_ + 2) {
        const auto& f = curve.f();
        fdata_.assign((degf_ + 1) * a_, 0);
        for (std::size_t i = 0; i < f.n_coeffs(); ++i)
            std::copy(f.coeff_ptr(i), f.coeff_ptr(i) + a_, fdata_.data() + i * a_);
        conv_.assign((2 * std::size_t(e_) - 1) * conv_blocks_ * a_, 0);
        tmp_.assign(a_, 0);
        tmp2_.assign(a_, 0);
    }

    std::size_t words() const { return std::size_t(e_) * blocks_ * a_; }
    std::vector<std::uint64_t> make() const { return std::vector<std::uint64_t>(words(), 0); }

    std::uint64_t* blk(std::uint64_t* x, unsigned p, std::uint64_t k) const {
        return x + (std::size_t(p) * blocks_ + k) * a_;
    }
    const std::uint64_t* blk(const std::uint64_t* x, unsigned p, std::uint64_t k) const {
        return x + (std::size_t(p) * blocks_ + k) * a_;
    }

    void clear(std::uint64_t* x) const { std::fill(x, x + words(), 0); }

    void load(const RingElement& g, std::uint64_t* out) const {
        clear(out);
        for (unsigned p = 0; p < e_; ++p) {
            const Polynomial& part = g.part(p);
            for (std::size_t i = 0; i < part.n_coeffs(); ++i)
                std::copy(part.coeff_ptr(i), part.coeff_ptr(i) + a_, blk(out, p, i));
        }
    }

    RingElement store(const std::uint64_t* x) const {
        std::vector<Polynomial> parts;
        parts.reserve(e_);
        for (unsigned p = 0; p < e_; ++p) {
            Polynomial part(curve_->base());
            part.resize_coeffs(blocks_);
            std::copy(blk(x, p, 0), blk(x, p, 0) + blocks_ * a_, part.coeff_ptr_mut(0));
            part.trim();
            parts.push_back(std::move(part));
        }
        return RingElement(curve_->shared_from_this(), std::move(parts));
    }

    void sub(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const {
        const std::size_t n = words();
        for (std::size_t w = 0; w < n; ++w) out[w] = (x[w] + l_ - y[w]) % l_;
    }

    // acc += c * x, c a field block
    void add_scaled(std::uint64_t* acc, const std::uint64_t* x, const std::uint64_t* c) const {
        const std::size_t nblocks = std::size_t(e_) * blocks_;
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::uint64_t* xb = x + b * a_;
            if (field_->is_zero_raw(xb)) continue;
            field_->mul_raw(xb, c, tmp_.data());
            field_->add_raw(acc + b * a_, tmp_.data(), acc + b * a_);
        }
    }

    struct Top {
        std::uint64_t d = 0;
        unsigned part = 0;
        std::uint64_t block = 0;
        bool found = false;
    };

    Top top(const std::uint64_t* x) const {
        Top t;
        for (unsigned p = 0; p < e_; ++p) {
            for (std::uint64_t k = blocks_; k-- > 0;) {
                if (field_->is_zero_raw(blk(x, p, k))) continue;
                const std::uint64_t d = std::uint64_t(e_) * k + std::uint64_t(p) * degf_;
                if (!t.found || d > t.d) t = {d, p, k, true};
                break;
            }
        }
        return t;
    }

    // out = x * y, full product with y^e -> f reduction; out distinct from inputs
    void mul(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) {
        std::fill(conv_.begin(), conv_.end(), 0);
        auto cblk = [&](unsigned part, std::uint64_t k) {
            return conv_.data() + (std::size_t(part) * conv_blocks_ + k) * a_;
        };
        for (unsigned px = 0; px < e_; ++px) {
            for (std::uint64_t bx = 0; bx < blocks_; ++bx) {
                const std::uint64_t* xb = blk(x, px, bx);
                if (field_->is_zero_raw(xb)) continue;
                for (unsigned py = 0; py < e_; ++py) {
                    for (std::uint64_t by = 0; by < blocks_; ++by) {
                        const std::uint64_t* yb = blk(y, py, by);
                        if (field_->is_zero_raw(yb)) continue;
                        field_->mul_raw(xb, yb, tmp_.data());
                        std::uint64_t* dst = cblk(px + py, bx + by);
                        field_->add_raw(dst, tmp_.data(), dst);
                    }
                }
            }
        }
        for (unsigned k = 2 * e_ - 2; k >= e_; --k) {
            for (std::uint64_t b = 0; b < conv_blocks_ - degf_ - 1; ++b) {
                const std::uint64_t* src = cblk(k, b);
                if (field_->is_zero_raw(src)) continue;
                for (std::uint64_t j = 0; j <= degf_; ++j) {
                    field_->mul_raw(src, fdata_.data() + j * a_, tmp_.data());
                    std::uint64_t* dst = cblk(k - e_, b + j);
                    field_->add_raw(dst, tmp_.data(), dst);
                }
            }
        }
        for (unsigned p = 0; p < e_; ++p) {
            std::copy(cblk(p, 0), cblk(p, 0) + blocks_ * a_, blk(out, p, 0));
            for (std::uint64_t b = blocks_; b < conv_blocks_; ++b)
                if (!field_->is_zero_raw(cblk(p, b))) throw std::logic_error("flat ring overflow");
        }
    }

    // out = x * c * x^{kv} y^{iv} (multiplication by a monomial times a constant)
    void mono_mul(const std::uint64_t* x, unsigned iv, std::uint64_t kv,
                  const std::uint64_t* c, std::uint64_t* out) {
        clear(out);
        for (unsigned p = 0; p < e_; ++p) {
            const unsigned tp = p + iv;
            const bool wrap = tp >= e_;
            const unsigned dest = wrap ? tp - e_ : tp;
            for (std::uint64_t k = 0; k < blocks_; ++k) {
                const std::uint64_t* xb = blk(x, p, k);
                if (field_->is_zero_raw(xb)) continue;
                field_->mul_raw(xb, c, tmp_.data());
                if (!wrap) {
                    if (k + kv >= blocks_) throw std::logic_error("flat ring overflow");
                    field_->add_raw(blk(out, dest, k + kv), tmp_.data(), blk(out, dest, k + kv));
                } else {
                    // y^{tp} = y^{dest} f(x)
                    for (std::uint64_t j = 0; j <= degf_; ++j) {
                        field_->mul_raw(tmp_.data(), fdata_.data() + j * a_, tmp2_.data());
                        const std::uint64_t kk = k + kv + j;
                        if (kk >= blocks_) {
                            if (!field_->is_zero_raw(tmp2_.data()))
                                throw std::logic_error("flat ring overflow");
                            continue;
                        }
                        field_->add_raw(blk(out, dest, kk), tmp2_.data(), blk(out, dest, kk));
                    }
                }
            }
        }
    }

    const PrimePowerField* field() const { return field_; }
    unsigned parts() const { return e_; }
    std::uint64_t blocks() const { return blocks_; }

  private:
    const CurveModel* curve_;
    const PrimePowerField* field_;
    unsigned e_;
    unsigned a_;
    std::uint64_t l_;
    std::uint64_t degf_;
    std::uint64_t blocks_;
    std::uint64_t conv_blocks_;
    std::vector<std::uint64_t> fdata_;
    std::vector<std::uint64_t> conv_;
    mutable std::vector<std::uint64_t> tmp_;
    mutable std::vector<std::uint64_t> tmp2_;
};

}  // namespace

void for_each_bounded_mth_root(
    const CurvePtr& curve, const PoleSlice& slice, std::uint64_t lo, std::uint64_t hi,
    const Polynomial& rhs, std::uint64_t m, const std::vector<char>& lc_sieve,
    const std::function<void(const RingElement&, const RingElement&)>& emit) {
    const auto& base = curve->base();
    const std::uint64_t l = base->characteristic();
    const auto r_deg = static_cast<std::uint64_t>(rhs.degree());
    const std::uint64_t dw = r_deg * slice.d;
    const std::uint64_t dx = dw / m;

    const bool fast = curve->e() >= 2 && m % l != 0 && m <= 32 && curve->order_attained(dx);
    if (!fast) {
        for (SliceIterator it(curve, slice, lo, hi); !it.done(); it.advance()) {
            if (!lc_sieve.empty() && !lc_sieve[it.leading_index()]) continue;
            const RingElement& y = it.current();
            RingElement w = curve->zero_element();
            {  // rhs(y) by Horner
                RingElement acc = curve->zero_element();
                for (std::size_t i = rhs.n_coeffs(); i-- > 0;)
                    acc = acc * y + curve->constant(rhs.coeff(i));
                w = std::move(acc);
            }
            for (const RingElement& x : ring_mth_roots(w, m)) emit(x, y);
        }
        return;
    }

    FlatEngine eng(*curve, dw);
    const unsigned a = base->extension_degree();

    // Pascal's triangle mod l
    std::vector<std::uint64_t> binom((m + 1) * (m + 1), 0);
    for (std::uint64_t j = 0; j <= m; ++j) {
        binom[j * (m + 1)] = 1;
        for (std::uint64_t i = 1; i <= j; ++i)
            binom[j * (m + 1) + i] =
                (binom[(j - 1) * (m + 1) + i - 1] + (i <= j - 1 ? binom[(j - 1) * (m + 1) + i] : 0)) % l;
    }

    // rhs coefficient blocks
    std::vector<std::uint64_t> rhs_blocks((r_deg + 1) * a, 0);
    for (std::size_t i = 0; i < rhs.n_coeffs(); ++i)
        std::copy(rhs.coeff_ptr(i), rhs.coeff_ptr(i) + a, rhs_blocks.data() + i * a);
    bool two_term = true;
    for (std::uint64_t i = 1; i < r_deg; ++i)
        if (!base->is_zero_raw(rhs_blocks.data() + i * a)) two_term = false;

    // M_dx^j for j = 0..m, fixed on the slice
    const unsigned ivx = *curve->leader_part(dx);
    const std::uint64_t kvx = (dx - ivx * curve->deg_f()) / curve->e();
    std::vector<std::vector<std::uint64_t>> mono_pow(m + 1, eng.make());
    mono_pow[0][0] = 1;
    std::vector<std::uint64_t> one_block(a, 0);
    one_block[0] = 1;
    for (std::uint64_t j = 1; j <= m; ++j)
        eng.mono_mul(mono_pow[j - 1].data(), ivx, kvx, one_block.data(), mono_pow[j].data());
    const auto top_m = eng.top(mono_pow[m].data());
    FieldElement lc_mono_m(base, std::vector<std::uint64_t>(
                                     eng.blk(mono_pow[m].data(), top_m.part, top_m.block),
                                     eng.blk(mono_pow[m].data(), top_m.part, top_m.block) + a));

    std::vector<std::uint64_t> ybuf = eng.make(), wbuf = eng.make(), acc = eng.make(),
                               swp = eng.make(), diff = eng.make(), cross = eng.make();
    std::vector<std::vector<std::uint64_t>> pows(m + 1, eng.make());
    pows[0][0] = 1;  // x^0, never touched by the per-element updates
    std::vector<std::uint64_t> cblk(a), cpow((m + 1) * a), denom(a), scale(a);

    const std::uint64_t m_mod = m % l;

    for (SliceIterator it(curve, slice, lo, hi); !it.done(); it.advance()) {
        if (!lc_sieve.empty() && !lc_sieve[it.leading_index()]) continue;
        eng.load(it.current(), ybuf.data());

        // w = rhs(y)
        if (two_term) {
            // lc * y^r + c0 by square-and-multiply
            std::uint64_t expo = r_deg;
            eng.clear(acc.data());
            acc[0] = 1;
            std::copy(ybuf.begin(), ybuf.end(), wbuf.begin());
            bool acc_is_one = true;
            while (expo > 0) {
                if (expo & 1) {
                    if (acc_is_one) {
                        std::copy(wbuf.begin(), wbuf.end(), acc.begin());
                        acc_is_one = false;
                    } else {
                        eng.mul(acc.data(), wbuf.data(), swp.data());
                        std::swap(acc, swp);
                    }
                }
                if (expo >>= 1) {
                    eng.mul(wbuf.data(), wbuf.data(), swp.data());
                    std::swap(wbuf, swp);
                }
            }
            eng.clear(wbuf.data());
            eng.add_scaled(wbuf.data(), acc.data(), rhs_blocks.data() + r_deg * a);
            base->add_raw(eng.blk(wbuf.data(), 0, 0), rhs_blocks.data(),
                          eng.blk(wbuf.data(), 0, 0));
        } else {
            eng.clear(acc.data());
            for (std::uint64_t i = r_deg + 1; i-- > 0;) {
                if (i < r_deg) {
                    eng.mul(acc.data(), ybuf.data(), swp.data());
                    std::swap(acc, swp);
                }
                base->add_raw(eng.blk(acc.data(), 0, 0), rhs_blocks.data() + i * a,
                              eng.blk(acc.data(), 0, 0));
            }
            std::copy(acc.begin(), acc.end(), wbuf.begin());
        }

        // leading coefficient of w and the scalar root
        const auto wt = eng.top(wbuf.data());
        if (!wt.found || wt.d != dw) continue;  // cannot happen for nonzero rhs lc
        FieldElement lcw(base, std::vector<std::uint64_t>(
                                   eng.blk(wbuf.data(), wt.part, wt.block),
                                   eng.blk(wbuf.data(), wt.part, wt.block) + a));
        FieldElement c0 = base->zero();
        if (!scalar_mth_root(lcw / lc_mono_m, m, c0)) continue;

        // pows[j] = (c0 * M_dx)^j
        for (std::uint64_t j = 1; j <= m; ++j) {
            base->pow_raw_u64(c0.data(), j, cblk.data());
            eng.clear(pows[j].data());
            eng.add_scaled(pows[j].data(), mono_pow[j].data(), cblk.data());
        }

        // top-down determination
        bool ok = false;
        std::uint64_t guard = dx + 2;
        while (guard-- > 0) {
            eng.sub(wbuf.data(), pows[m].data(), diff.data());
            const auto dt = eng.top(diff.data());
            if (!dt.found) {
                ok = true;
                break;
            }
            const std::uint64_t floor_d = (m - 1) * dx;
            if (dt.d < floor_d || dt.d >= dw) break;
            const std::uint64_t v = dt.d - floor_d;
            const auto iv_opt = curve->leader_part(v);
            if (!iv_opt) break;
            const unsigned iv = *iv_opt;
            const std::uint64_t kv = (v - iv * curve->deg_f()) / curve->e();

            // cross = M_v * pows[m-1]; its top block gives the denominator
            eng.mono_mul(pows[m - 1].data(), iv, kv, one_block.data(), cross.data());
            const auto ct = eng.top(cross.data());
            base->scalar_mul_raw(m_mod, eng.blk(cross.data(), ct.part, ct.block), denom.data());
            base->inv_raw(denom.data(), denom.data());
            base->mul_raw(eng.blk(diff.data(), dt.part, dt.block), denom.data(), cblk.data());

            // cpow[i] = c_v^i
            std::copy(one_block.begin(), one_block.end(), cpow.begin());
            for (std::uint64_t i = 1; i <= m; ++i)
                base->mul_raw(cpow.data() + (i - 1) * a, cblk.data(), cpow.data() + i * a);

            for (std::uint64_t j = m; j >= 1; --j) {
                for (std::uint64_t i = 1; i <= j; ++i) {
                    // pows[j] += C(j,i) c_v^i M_v^i pows[j-i]
                    base->scalar_mul_raw(binom[j * (m + 1) + i], cpow.data() + i * a, scale.data());
                    if (base->is_zero_raw(scale.data())) continue;
                    std::copy(pows[j - i].begin(), pows[j - i].end(), acc.begin());
                    for (std::uint64_t s = 0; s < i; ++s) {
                        eng.mono_mul(acc.data(), iv, kv, one_block.data(), swp.data());
                        std::swap(acc, swp);
                    }
                    eng.add_scaled(pows[j].data(), acc.data(), scale.data());
                }
            }
        }
        if (!ok) continue;

        const RingElement x0 = eng.store(pows[1].data());
        const RingElement y = it.current();
        for (const FieldElement& omega : roots_of_unity_in_field(base, m)) emit(x0 * omega, y);
    }
}

}  // namespace catff
