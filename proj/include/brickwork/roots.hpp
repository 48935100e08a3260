#ifndef BRICKWORK_ROOTS_HPP
#define BRICKWORK_ROOTS_HPP

// Exact root extraction of univariate polynomials inside the ground field.
// Over Q this is the rational-root theorem (divisor enumeration on the
// primitive integer form, trial division + Pollard rho for the coefficient
// factorizations); over F_p it is an exhaustive scan.  Roots outside the
// field are deliberately not approximated: callers see the unfactored
// remainder and decide whether that is an error.

#include <algorithm>
#include <map>
#include <vector>

#include "brickwork/poly.hpp"
#include "brickwork/ratfun.hpp"

namespace brickwork {

namespace detail {

inline void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (mpz_class d = 2; d * d <= n && d < 100000; ++d) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        ++out[n];
        return;
    }
    // Pollard rho on the remaining composite cofactor.
    mpz_class x = 2, y = 2, d = 1, c = 1;
    auto f = [&](const mpz_class& v) { return (v * v + c) % n; };
    while (true) {
        x = f(x);
        y = f(f(y));
        mpz_class diff = x > y ? x - y : y - x;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        if (d == n) {  // cycle without factor: restart with another constant
            ++c;
            x = y = 2;
            d = 1;
            continue;
        }
        if (d > 1) break;
    }
    factor_into(d, out);
    factor_into(n / d, out);
}

inline std::vector<mpz_class> divisors(const mpz_class& n) {
    std::map<mpz_class, unsigned> f;
    factor_into(n, f);
    std::vector<mpz_class> divs{1};
    for (auto& [p, e] : f) {
        std::vector<mpz_class> next;
        mpz_class pk = 1;
        for (unsigned k = 0; k <= e; ++k) {
            for (auto& d : divs) next.push_back(d * pk);
            pk *= p;
        }
        divs = std::move(next);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace detail

// Ground-field roots with multiplicity, plus the root-free cofactor:
// p = cofactor * prod (x - root_i).
template <class K>
struct RootSplit {
    std::vector<K> roots;
    Poly<K> cofactor;
};

inline RootSplit<Rational> field_roots(const Poly<Rational>& p) {
    RootSplit<Rational> out;
    out.cofactor = p;
    if (p.is_zero() || p.degree() == 0) return out;

    Poly<Rational> cur = p;
    // strip powers of x first
    while (cur.coeff(0).is_zero() && cur.degree() >= 1) {
        out.roots.push_back(Rational(0));
        std::vector<Rational> shifted(cur.coeffs().begin() + 1, cur.coeffs().end());
        cur = Poly<Rational>(shifted);
    }
    if (cur.degree() < 1) {
        out.cofactor = cur;
        return out;
    }

    // primitive integer form
    mpz_class den_lcm = 1;
    for (auto& c : cur.coeffs()) {
        mpz_class d = c.raw().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    std::vector<mpz_class> zc;
    for (auto& c : cur.coeffs()) zc.push_back(mpz_class(c.raw() * den_lcm));

    auto nums = detail::divisors(zc.front());
    auto dens = detail::divisors(zc.back());
    std::vector<Rational> candidates;
    for (auto& a : nums)
        for (auto& b : dens) {
            candidates.push_back(Rational(a, b));
            candidates.push_back(Rational(-a, b));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (auto& cand : candidates) {
        while (cur.degree() >= 1 && cur(cand).is_zero()) {
            out.roots.push_back(cand);
            cur = cur / (Poly<Rational>::variable() - Poly<Rational>(cand));
        }
    }
    out.cofactor = cur;
    return out;
}

inline RootSplit<PrimeField> field_roots(const Poly<PrimeField>& p, std::uint64_t modulus) {
    RootSplit<PrimeField> out;
    out.cofactor = p;
    if (p.is_zero() || p.degree() == 0) return out;
    Poly<PrimeField> cur = p;
    for (std::uint64_t a = 0; a < modulus && cur.degree() >= 1; ++a) {
        PrimeField cand(static_cast<long>(a), modulus);
        while (cur.degree() >= 1 && cur(cand).is_zero()) {
            out.roots.push_back(cand);
            cur = cur / (Poly<PrimeField>::variable() - Poly<PrimeField>(cand));
        }
    }
    out.cofactor = cur;
    return out;
}

template <class K>
RootSplit<K> field_roots_fs(const Poly<K>& p, const FieldSpec& fs);
template <>
inline RootSplit<Rational> field_roots_fs(const Poly<Rational>& p, const FieldSpec&) {
    return field_roots(p);
}
template <>
inline RootSplit<PrimeField> field_roots_fs(const Poly<PrimeField>& p, const FieldSpec& fs) {
    return field_roots(p, fs.p);
}

}  // namespace brickwork

#endif
