#ifndef BRICKWORK_RATFUN_HPP
#define BRICKWORK_RATFUN_HPP

// k(x) with a canonical form: gcd-reduced, monic denominator.  Equality of
// canonical forms is plain coefficient comparison.

#include <optional>
#include <utility>
#include <vector>

#include "brickwork/poly.hpp"

namespace brickwork {

template <class K>
class RatFun {
  public:
    RatFun() : num_(), den_(Poly<K>::one()) {}
    RatFun(long n) : num_(Poly<K>(K(n))), den_(Poly<K>::one()) {}   // NOLINT
    RatFun(const K& c) : num_(Poly<K>(c)), den_(Poly<K>::one()) {}  // NOLINT
    RatFun(const Poly<K>& p) : num_(p), den_(Poly<K>::one()) {}     // NOLINT
    RatFun(const Poly<K>& num, const Poly<K>& den) { assign(num, den); }

    static RatFun variable() { return RatFun(Poly<K>::variable()); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFun operator-() const { RatFun r; r.num_ = -num_; r.den_ = den_; return r; }

    // Sums and products keep the cross-cancellation small: with reduced
    // inputs, gcd work happens on operand-sized pieces and the results are
    // already reduced (Henrici's scheme).
    RatFun operator+(const RatFun& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        Poly<K> g0 = gcd(den_, o.den_);
        if (g0.degree() < 1) {
            return from_reduced(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
        }
        Poly<K> b1 = den_ / g0, d1 = o.den_ / g0;
        Poly<K> n = num_ * d1 + o.num_ * b1;
        if (n.is_zero()) return RatFun();
        Poly<K> h = gcd(n, g0);
        if (h.degree() >= 1) {
            n = n / h;
            g0 = g0 / h;
        }
        return from_reduced(n, b1 * d1 * g0);
    }
    RatFun operator-(const RatFun& o) const { return *this + (-o); }
    RatFun operator*(const RatFun& o) const {
        if (is_zero() || o.is_zero()) return RatFun();
        Poly<K> g1 = gcd(num_, o.den_);
        Poly<K> g2 = gcd(o.num_, den_);
        Poly<K> n = (g1.degree() >= 1 ? num_ / g1 : num_) * (g2.degree() >= 1 ? o.num_ / g2 : o.num_);
        Poly<K> d = (g2.degree() >= 1 ? den_ / g2 : den_) * (g1.degree() >= 1 ? o.den_ / g1 : o.den_);
        return from_reduced(n, d);
    }
    RatFun operator/(const RatFun& o) const {
        if (o.is_zero()) throw zero_denominator_error("division by zero in k(x)");
        return *this * o.inv();
    }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun inv() const {
        if (is_zero()) throw zero_denominator_error("inverse of zero in k(x)");
        return from_reduced(den_, num_);  // still coprime; just re-normalize monic
    }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    // Evaluation at a field point; the denominator must not vanish there.
    K operator()(const K& x) const {
        K d = den_(x);
        if (d.is_zero()) throw zero_denominator_error("evaluation at a pole");
        return num_(x) / d;
    }

    std::string str(const std::string& var = "x") const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

  private:
    // num/den already coprime; only monic-scale the denominator.
    static RatFun from_reduced(const Poly<K>& num, const Poly<K>& den) {
        RatFun r;
        if (num.is_zero()) return r;
        K lc_inv = den.leading().inv();
        r.num_ = num * lc_inv;
        r.den_ = den * lc_inv;
        return r;
    }

    void assign(const Poly<K>& num, const Poly<K>& den) {
        if (den.is_zero()) throw zero_denominator_error();
        Poly<K> n = num, d = den;
        if (num.degree() > 0 && den.degree() > 0) {  // else gcd is trivially 1
            Poly<K> g = gcd(num, den);
            if (!g.is_zero() && !g.is_one()) {
                n = num / g;
                d = den / g;
            }
        }
        K lc_inv = d.leading().inv();
        num_ = n * lc_inv;
        den_ = d * lc_inv;
        if (num_.is_zero()) den_ = Poly<K>::one();
    }

    Poly<K> num_;
    Poly<K> den_;
};

// Spec-level entry point: num/den in canonical form.
template <class K>
RatFun<K> ratfun_normalize(const Poly<K>& num, const Poly<K>& den) {
    return RatFun<K>(num, den);
}

// The rational algebra Gamma = k[x]_h, membership defined through the
// inverted element h.
template <class K>
class LocalizedRing {
  public:
    explicit LocalizedRing(Poly<K> h) : h_(std::move(h)) {
        if (h_.is_zero()) throw zero_denominator_error("cannot localize at 0");
    }

    const Poly<K>& inverted() const { return h_; }

    bool contains_lambda(const K& lambda) const { return !h_(lambda).is_zero(); }

    // r belongs to k[x]_h iff the denominator divides a power of h, i.e.
    // repeatedly cancelling gcd(den, h) exhausts the denominator.
    bool contains(const RatFun<K>& r) const {
        Poly<K> d = r.den();
        while (d.degree() > 0) {
            Poly<K> g = gcd(d, h_);
            if (g.degree() == 0) return false;
            d = d / g;
        }
        return true;
    }

  private:
    Poly<K> h_;
};

// x^r/(x-lambda)^s  =  head(x) + sum_i tail[i]/(x-lambda)^i + lambda^r/(x-lambda)^s,
// with 0 < i < s.  Verified by recombination before returning.
template <class K>
struct PartialFractionShift {
    Poly<K> head;
    std::vector<std::pair<K, int>> tail;  // (coefficient, pole order)
    K top_coeff;                          // lambda^r
};

template <class K>
PartialFractionShift<K> partial_fraction_shift(unsigned r, unsigned s, const K& lambda) {
    if (s < 1) throw error("pole order must be >= 1");
    // Expand x^r in powers of (x - lambda): coefficients mu_i with
    // x^r = sum_i mu_i (x-lambda)^i, mu_0 = lambda^r.
    std::vector<K> mu(r + 1, K(0));
    mu[0] = K(1);  // start from the constant polynomial 1 and multiply by x r times
    for (unsigned step = 0; step < r; ++step) {
        // multiply by x = (x - lambda) + lambda in the shifted basis
        std::vector<K> next(r + 1, K(0));
        for (unsigned i = 0; i <= step; ++i) {
            next[i + 1] += mu[i];
            next[i] += mu[i] * lambda;
        }
        mu = next;
    }
    PartialFractionShift<K> out;
    out.top_coeff = mu[0];
    std::vector<K> head_shifted;  // coefficients of head in the (x-lambda) basis
    for (unsigned i = 1; i <= r; ++i) {
        int pole_order = static_cast<int>(s) - static_cast<int>(i);
        if (pole_order > 0) {
            if (!mu[i].is_zero()) out.tail.emplace_back(mu[i], pole_order);
        } else {
            std::size_t deg = static_cast<std::size_t>(-pole_order);
            if (head_shifted.size() <= deg) head_shifted.resize(deg + 1, K(0));
            head_shifted[deg] += mu[i];
        }
    }
    // convert head from the (x-lambda) basis back to the x basis
    Poly<K> shift = Poly<K>::variable() - Poly<K>(lambda);
    Poly<K> head;
    for (std::size_t i = head_shifted.size(); i-- > 0;) head = head * shift + Poly<K>(head_shifted[i]);
    out.head = head;

    // exact recombination check
    Poly<K> pole = shift;
    Poly<K> pole_s = Poly<K>::one();
    for (unsigned i = 0; i < s; ++i) pole_s *= pole;
    RatFun<K> lhs(Poly<K>::monomial(K(1), r), pole_s);
    RatFun<K> rhs(out.head);
    for (auto& [c, i] : out.tail) {
        Poly<K> p = Poly<K>::one();
        for (int j = 0; j < i; ++j) p *= pole;
        rhs += RatFun<K>(Poly<K>(c), p);
    }
    rhs += RatFun<K>(Poly<K>(out.top_coeff), pole_s);
    if (lhs != rhs) throw error("partial fraction identity failed to recombine");
    return out;
}

// Deterministic sample sequence 0, 1, -1, 2, -2, 3, ... filtered by h(l) != 0.
// Over F_p the raw sequence wraps around; duplicates are skipped and the
// supply is capped by the field size, so the result may be shorter than
// requested there.
template <class K>
std::vector<K> sample_points(const Poly<K>& h, std::size_t count, const FieldSpec& fs) {
    std::vector<K> out;
    std::vector<bool> seen;
    const bool finite = fs.kind == FieldSpec::Kind::prime;
    if (finite) seen.assign(fs.p, false);
    std::size_t distinct = 0;
    long n = 0;
    while (out.size() < count) {
        if (finite && (distinct >= fs.p || n > static_cast<long>(fs.p))) break;
        for (long cand : {n, -n}) {
            K lambda = make_scalar<K>(fs, cand);
            bool fresh = true;
            if (finite) {
                auto rep = static_cast<std::size_t>(((cand % static_cast<long>(fs.p)) +
                                                     static_cast<long>(fs.p)) %
                                                    static_cast<long>(fs.p));
                fresh = !seen[rep];
                seen[rep] = true;
            }
            if (fresh) {
                ++distinct;
                if (!h(lambda).is_zero()) out.push_back(lambda);
            }
            if (out.size() >= count || cand == 0) break;
        }
        ++n;
    }
    return out;
}

}  // namespace brickwork

#endif
