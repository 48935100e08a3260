#ifndef BRICKWORK_POLY_HPP
#define BRICKWORK_POLY_HPP

// Dense univariate polynomials over a field K, coefficients stored in
// ascending degree with no trailing zeros (the zero polynomial is the empty
// list).

#include <string>
#include <vector>

#include "brickwork/errors.hpp"
#include "brickwork/scalars.hpp"

namespace brickwork {

template <class K>
class Poly {
  public:
    Poly() = default;
    Poly(long n) : Poly(K(n)) {}  // NOLINT
    Poly(const K& c) { if (!c.is_zero()) coeffs_.push_back(c); }  // NOLINT
    explicit Poly(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { prune(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(K(1)); }
    static Poly variable() { return monomial(K(1), 1); }
    static Poly monomial(const K& c, std::size_t deg) {
        Poly p;
        if (c.is_zero()) return p;
        p.coeffs_.assign(deg + 1, K(0));
        p.coeffs_[deg] = c;
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    K coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : K(0); }
    const std::vector<K>& coeffs() const { return coeffs_; }
    const K& leading() const {
        if (is_zero()) throw error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }
    K constant_term() const { return coeff(0); }

    K operator()(const K& x) const {  // Horner evaluation
        K acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    // Substitute another polynomial for the variable.
    Poly compose(const Poly& inner) const {
        Poly acc;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * inner + Poly(coeffs_[i]);
        return acc;
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    Poly operator+(const Poly& o) const {
        Poly r;
        r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), K(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = coeff(i) + o.coeff(i);
        r.prune();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        if constexpr (std::is_same_v<K, Rational>) {
            // integer path: one common denominator each, no per-term
            // canonicalization
            auto lift = [](const std::vector<K>& cs, mpz_class& den) {
                den = 1;
                for (auto& c : cs) {
                    mpz_class d = c.raw().get_den(), g;
                    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
                    den = den / g * d;
                }
                std::vector<mpz_class> v;
                v.reserve(cs.size());
                for (auto& c : cs) v.push_back(mpz_class(c.raw() * den));
                return v;
            };
            mpz_class da, db;
            std::vector<mpz_class> a = lift(coeffs_, da), b = lift(o.coeffs_, db);
            std::vector<mpz_class> prod(a.size() + b.size() - 1, mpz_class(0));
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] == 0) continue;
                for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
            }
            mpz_class den = da * db;
            Poly r;
            r.coeffs_.reserve(prod.size());
            for (auto& x : prod) r.coeffs_.push_back(Rational(x, den));
            r.prune();
            return r;
        } else {
            Poly r;
            r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, K(0));
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                    r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
            r.prune();
            return r;
        }
    }
    Poly operator*(const K& c) const {
        Poly r(*this);
        for (auto& a : r.coeffs_) a = a * c;
        r.prune();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    bool operator==(const Poly& o) const {
        if (coeffs_.size() != o.coeffs_.size()) return false;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != o.coeffs_[i]) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inv();
    }

    std::string str(const std::string& var = "x") const;

  private:
    void prune() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<K> coeffs_;
};

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw zero_denominator_error("polynomial division by zero");
    Poly<K> q, r = a;
    const K lc_inv = b.leading().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        K c = r.leading() * lc_inv;
        Poly<K> term = Poly<K>::monomial(c, shift);
        q += term;
        r -= b * term;
    }
    return {q, r};
}

template <class K>
Poly<K> operator/(const Poly<K>& a, const Poly<K>& b) { return divmod(a, b).first; }
template <class K>
Poly<K> operator%(const Poly<K>& a, const Poly<K>& b) { return divmod(a, b).second; }

// monic gcd
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

namespace detail {

// Primitive integer form of a rational polynomial: content-1 mpz vector.
inline std::vector<mpz_class> primitive_int(const Poly<Rational>& p) {
    mpz_class den_lcm = 1;
    for (auto& c : p.coeffs()) {
        mpz_class d = c.raw().get_den(), g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    std::vector<mpz_class> v;
    v.reserve(p.coeffs().size());
    mpz_class content = 0;
    for (auto& c : p.coeffs()) {
        v.push_back(mpz_class(c.raw() * den_lcm));
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.back().get_mpz_t());
    }
    if (content > 1)
        for (auto& x : v) x /= content;
    return v;
}

inline void strip_int_content(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    mpz_class content = 0;
    for (auto& x : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    if (content > 1)
        for (auto& x : v) x /= content;
}

}  // namespace detail

namespace detail {

// true iff d divides a exactly over Z (both primitive or not; division done
// by integer long division from the top)
inline bool int_poly_divides(const std::vector<mpz_class>& d, std::vector<mpz_class> a) {
    if (d.empty()) return a.empty();
    while (a.size() >= d.size()) {
        if (a.back() % d.back() != 0) return false;
        mpz_class q = a.back() / d.back();
        std::size_t shift = a.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) a[i + shift] -= q * d[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.empty()) return true;
    }
    return a.empty();
}

inline std::vector<mpz_class> primitive_prs_gcd(std::vector<mpz_class> a,
                                                std::vector<mpz_class> b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        while (a.size() >= b.size() && !a.empty()) {
            mpz_class lc_a = a.back(), lc_b = b.back();
            std::size_t shift = a.size() - b.size();
            for (auto& x : a) x *= lc_b;
            for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= lc_a * b[i];
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        strip_int_content(a);
        std::swap(a, b);
    }
    return a;
}

// gcd in F_p[x] for a word-size prime, iterative Euclid on uint64 vectors
inline std::vector<std::uint64_t> word_poly_gcd_mod(std::vector<std::uint64_t> a,
                                                    std::vector<std::uint64_t> b,
                                                    std::uint64_t p) {
    auto strip = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto inv_mod = [p](std::uint64_t x) {
        long long r0 = static_cast<long long>(p), r1 = static_cast<long long>(x % p);
        long long s0 = 0, s1 = 1;
        while (r1) {
            long long q = r0 / r1;
            long long t = r0 - q * r1; r0 = r1; r1 = t;
            t = s0 - q * s1; s0 = s1; s1 = t;
        }
        long long m = static_cast<long long>(p);
        return static_cast<std::uint64_t>(((s0 % m) + m) % m);
    };
    strip(a); strip(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t lb_inv = inv_mod(b.back());
        while (a.size() >= b.size()) {
            using u128 = unsigned __int128;
            std::uint64_t q = static_cast<std::uint64_t>(u128(a.back()) * lb_inv % p);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = static_cast<std::uint64_t>(u128(q) * b[i] % p);
                std::uint64_t& t = a[i + shift];
                t = t >= sub ? t - sub : t + p - sub;
            }
            strip(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        std::uint64_t li = inv_mod(a.back());
        for (auto& x : a)
            x = static_cast<std::uint64_t>((unsigned __int128)(x) * li % p);
    }
    return a;
}

// Modular (Brown) gcd over Z: word-prime images + CRT, verified by exact
// division; constant images prove coprimality outright.  Pseudo-remainder
// fallback keeps the routine total.
inline std::vector<mpz_class> int_poly_gcd(const std::vector<mpz_class>& a,
                                           const std::vector<mpz_class>& b) {
    static const std::uint64_t primes[] = {
        4611686018427388039ULL, 4611686018427387847ULL, 4611686018427387787ULL,
        4611686018427387631ULL, 4611686018427387613ULL, 4611686018427387527ULL,
        4611686018427387433ULL, 4611686018427387407ULL, 4611686018427387313ULL,
        4611686018427387073ULL, 4611686018427387061ULL, 4611686018427386963ULL,
        4611686018427386627ULL, 4611686018427386591ULL, 4611686018427386549ULL,
        4611686018427386423ULL, 4611686018427386399ULL, 4611686018427386357ULL,
        4611686018427386243ULL, 4611686018427386177ULL};
    mpz_class lc_gcd;
    mpz_gcd(lc_gcd.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());

    auto reduce_mod = [](const std::vector<mpz_class>& v, std::uint64_t p) {
        std::vector<std::uint64_t> out(v.size());
        mpz_class t;
        for (std::size_t i = 0; i < v.size(); ++i) {
            mpz_mod_ui(t.get_mpz_t(), v[i].get_mpz_t(), p);
            out[i] = t.get_ui();
        }
        return out;
    };

    std::vector<mpz_class> crt;     // symmetric-range CRT image of lc_gcd * monic gcd
    mpz_class modulus = 1;
    std::size_t best_deg = SIZE_MAX;
    for (std::uint64_t p : primes) {
        if (mpz_divisible_ui_p(a.back().get_mpz_t(), p) ||
            mpz_divisible_ui_p(b.back().get_mpz_t(), p))
            continue;  // unlucky prime: leading coefficient collapses
        auto g = word_poly_gcd_mod(reduce_mod(a, p), reduce_mod(b, p), p);
        if (g.size() <= 1) return {mpz_class(1)};  // coprime, certified
        if (g.size() - 1 > best_deg) continue;     // unlucky prime: degree too high
        if (g.size() - 1 < best_deg) {             // all previous images were unlucky
            best_deg = g.size() - 1;
            modulus = 1;
        }
        // scale image by lc_gcd mod p and fold into the CRT accumulator
        mpz_class t;
        mpz_mod_ui(t.get_mpz_t(), lc_gcd.get_mpz_t(), p);
        std::uint64_t scale = t.get_ui();
        std::vector<mpz_class> img(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            img[i] = mpz_class(static_cast<unsigned long>(
                (unsigned __int128)(g[i]) * scale % p));
        if (modulus == 1) {
            crt = img;
            for (auto& x : crt)
                if (x * 2 > p) x -= p;  // symmetric range
            modulus = static_cast<unsigned long>(p);
        } else {
            // combine: find y = crt + modulus * k with y = img (mod p)
            mpz_class p_mpz(static_cast<unsigned long>(p)), minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), p_mpz.get_mpz_t());
            bool changed = false;
            for (std::size_t i = 0; i < crt.size(); ++i) {
                mpz_class r = (img[i] - crt[i]) % p_mpz;
                if (r < 0) r += p_mpz;
                r = r * minv % p_mpz;
                mpz_class y = crt[i] + modulus * r;
                mpz_class full = modulus * p_mpz;
                if (2 * y > full) y -= full;
                if (y != crt[i]) changed = true;
                crt[i] = y;
            }
            modulus *= p_mpz;
            if (!changed) {
                std::vector<mpz_class> cand = crt;
                strip_int_content(cand);
                if (!cand.empty() && int_poly_divides(cand, a) && int_poly_divides(cand, b))
                    return cand;
            }
        }
    }
    return primitive_prs_gcd(a, b);
}

}  // namespace detail

// Euclid with naive rational remainders suffers exponential coefficient
// growth; over Q we reduce to a primitive integer gcd (heuristic evaluation
// gcd with a pseudo-remainder fallback).
inline Poly<Rational> gcd(const Poly<Rational>& a0, const Poly<Rational>& b0) {
    if (a0.is_zero()) return b0.monic();
    if (b0.is_zero()) return a0.monic();
    if (a0.degree() == 0 || b0.degree() == 0) return Poly<Rational>::one();
    std::vector<mpz_class> g =
        detail::int_poly_gcd(detail::primitive_int(a0), detail::primitive_int(b0));
    std::vector<Rational> out;
    out.reserve(g.size());
    for (auto& x : g) out.emplace_back(Rational(x, mpz_class(1)));
    return Poly<Rational>(out).monic();
}

// (g, s, t) with g = a*s + b*t monic
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> extended_gcd(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = Poly<K>::one(), s1;
    Poly<K> t0, t1 = Poly<K>::one();
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = r1; r1 = r;
        Poly<K> s = s0 - q * s1; s0 = s1; s1 = s;
        Poly<K> t = t0 - q * t1; t0 = t1; t1 = t;
    }
    if (!r0.is_zero()) {
        K lc_inv = r0.leading().inv();
        r0 = r0 * lc_inv; s0 = s0 * lc_inv; t0 = t0 * lc_inv;
    }
    return {r0, s0, t0};
}

template <class K>
Poly<K> lcm(const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<K>();
    return ((a * b) / gcd(a, b)).monic();
}

template <class K>
bool divides(const Poly<K>& d, const Poly<K>& a) {
    if (d.is_zero()) return a.is_zero();
    return (a % d).is_zero();
}

template <class K>
std::string Poly<K>::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string c = coeffs_[i].str();
        if (i == 0) { out += c; continue; }
        std::string xpow = (i == 1) ? var : var + "^" + std::to_string(i);
        if (coeffs_[i].is_one()) out += xpow;
        else out += c + "*" + xpow;
    }
    return out;
}

}  // namespace brickwork

#endif
