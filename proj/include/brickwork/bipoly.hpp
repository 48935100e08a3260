#ifndef BRICKWORK_BIPOLY_HPP
#define BRICKWORK_BIPOLY_HPP

// Elements of k[x,y], stored sparsely as (deg_x, deg_y) -> coefficient with
// no zero entries.  The decomposition c(x,y) = sum_j a_j(y) x^j drives the
// operator calculus, so coefficient extraction by x-power is first-class.

#include <map>
#include <string>
#include <utility>

#include "brickwork/poly.hpp"
#include "brickwork/ratfun.hpp"

namespace brickwork {

template <class K>
class BiPoly {
  public:
    using Key = std::pair<int, int>;  // (deg_x, deg_y)

    BiPoly() = default;
    BiPoly(long n) { add_term(0, 0, K(n)); }   // NOLINT
    BiPoly(const K& c) { add_term(0, 0, c); }  // NOLINT
    static BiPoly var_x() { BiPoly p; p.add_term(1, 0, K(1)); return p; }
    static BiPoly var_y() { BiPoly p; p.add_term(0, 1, K(1)); return p; }
    static BiPoly from_x_poly(const Poly<K>& p) {
        BiPoly out;
        for (int i = 0; i <= p.degree(); ++i) out.add_term(i, 0, p.coeff(i));
        return out;
    }
    static BiPoly from_y_poly(const Poly<K>& p) {
        BiPoly out;
        for (int i = 0; i <= p.degree(); ++i) out.add_term(0, i, p.coeff(i));
        return out;
    }

    void add_term(int dx, int dy, const K& c) {
        if (c.is_zero()) return;
        auto it = terms_.find({dx, dy});
        if (it == terms_.end()) {
            terms_.emplace(Key{dx, dy}, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, K>& terms() const { return terms_; }

    int deg_x() const {
        int d = -1;
        for (auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int deg_y() const {
        int d = -1;
        for (auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    BiPoly operator-() const {
        BiPoly r;
        for (auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    BiPoly operator+(const BiPoly& o) const {
        BiPoly r(*this);
        for (auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
        return r;
    }
    BiPoly operator-(const BiPoly& o) const { return *this + (-o); }
    BiPoly operator*(const BiPoly& o) const {
        BiPoly r;
        for (auto& [k1, c1] : terms_)
            for (auto& [k2, c2] : o.terms_)
                r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
        return r;
    }
    BiPoly operator*(const K& c) const {
        BiPoly r;
        for (auto& [k, v] : terms_) r.add_term(k.first, k.second, v * c);
        return r;
    }
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    // a_j(y) in c(x,y) = sum_j a_j(y) x^j
    Poly<K> x_coeff(int j) const {
        std::vector<K> cs;
        for (auto& [k, c] : terms_) {
            if (k.first != j) continue;
            if (static_cast<int>(cs.size()) <= k.second) cs.resize(k.second + 1, K(0));
            cs[k.second] = c;
        }
        return Poly<K>(cs);
    }
    Poly<K> y_coeff(int j) const {
        std::vector<K> cs;
        for (auto& [k, c] : terms_) {
            if (k.second != j) continue;
            if (static_cast<int>(cs.size()) <= k.first) cs.resize(k.first + 1, K(0));
            cs[k.first] = c;
        }
        return Poly<K>(cs);
    }

    K eval(const K& x, const K& y) const {
        K acc(0);
        for (auto& [k, c] : terms_) {
            K t = c;
            for (int i = 0; i < k.first; ++i) t *= x;
            for (int i = 0; i < k.second; ++i) t *= y;
            acc += t;
        }
        return acc;
    }

    // c(x, x): the diagonal substitution
    Poly<K> diagonal() const {
        Poly<K> out;
        for (auto& [k, c] : terms_) out += Poly<K>::monomial(c, k.first + k.second);
        return out;
    }

    // c(p(x), q(x)) for univariate p, q
    Poly<K> substitute(const Poly<K>& px, const Poly<K>& qy) const {
        Poly<K> out;
        for (auto& [k, c] : terms_) {
            Poly<K> t(c);
            for (int i = 0; i < k.first; ++i) t *= px;
            for (int i = 0; i < k.second; ++i) t *= qy;
            out += t;
        }
        return out;
    }

    // c(lambda, y) as a polynomial in y
    Poly<K> eval_x(const K& lambda) const {
        Poly<K> out;
        for (auto& [k, c] : terms_) {
            K t = c;
            for (int i = 0; i < k.first; ++i) t *= lambda;
            out += Poly<K>::monomial(t, k.second);
        }
        return out;
    }

    // c(x, beta) as a polynomial in x
    Poly<K> eval_y(const K& beta) const {
        Poly<K> out;
        for (auto& [k, c] : terms_) {
            K t = c;
            for (int i = 0; i < k.second; ++i) t *= beta;
            out += Poly<K>::monomial(t, k.first);
        }
        return out;
    }

    // View inside k(y)[x]: polynomial in x whose coefficients are rational
    // functions of y.
    Poly<RatFun<K>> as_x_poly_over_ky() const {
        std::vector<RatFun<K>> cs;
        int dx = deg_x();
        if (dx < 0) return Poly<RatFun<K>>();
        cs.resize(dx + 1, RatFun<K>());
        for (int j = 0; j <= dx; ++j) cs[j] = RatFun<K>(x_coeff(j));
        return Poly<RatFun<K>>(cs);
    }

    // Inverse of as_x_poly_over_ky for denominator-free input.
    static BiPoly from_x_poly_over_ky(const Poly<RatFun<K>>& p) {
        BiPoly out;
        for (int j = 0; j <= p.degree(); ++j) {
            RatFun<K> c = p.coeff(j);
            if (!c.is_polynomial())
                throw error("coefficient has a denominator; not in k[x,y]");
            const Poly<K>& a = c.num();
            for (int i = 0; i <= a.degree(); ++i) out.add_term(j, i, a.coeff(i));
        }
        return out;
    }

    // Canonical text form: terms sorted by (deg_x, deg_y).
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string t = c.str();
            bool coef_one = c.is_one() && (k.first > 0 || k.second > 0);
            if (coef_one) t.clear();
            if (k.first > 0) {
                if (!t.empty()) t += "*";
                t += k.first == 1 ? "x" : "x^" + std::to_string(k.first);
            }
            if (k.second > 0) {
                if (!t.empty()) t += "*";
                t += k.second == 1 ? "y" : "y^" + std::to_string(k.second);
            }
            out += t;
        }
        return out;
    }

  private:
    std::map<Key, K> terms_;
};

}  // namespace brickwork

#endif
