#ifndef BRICKWORK_CONVOLUTION_HPP
#define BRICKWORK_CONVOLUTION_HPP

// Operator calculus on End_k(k(x)), demand-driven.  Linear maps are defined
// on the canonical k-basis of k(x) (monomials x^i and pole powers
// 1/(x-lambda)^j with lambda in the ground field) and evaluated lazily; the
// action q |-> q_c of a bivariate polynomial c(x,y) = sum_j a_j(y) x^j is
//     q_c(z) = sum_j a_j(x) q(x^j z),
// and the convolution solver inverts it: given p and c != 0 it builds q with
// q_c = p, following the seed-and-recursion construction (monomials first,
// then pole powers of increasing order, with the x-content of c split off
// and absorbed into a multiplication twist).

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "brickwork/bipoly.hpp"
#include "brickwork/matrix.hpp"
#include "brickwork/roots.hpp"

namespace brickwork {

template <class K>
struct BasisElt {
    enum class Kind { monomial, pole };
    Kind kind = Kind::monomial;
    unsigned degree = 0;  // exponent i for x^i, order j >= 1 for poles
    K pole = K(0);        // location for poles

    static BasisElt monomial(unsigned i) { return {Kind::monomial, i, K(0)}; }
    static BasisElt pole_at(const K& lambda, unsigned j) { return {Kind::pole, j, lambda}; }

    bool operator<(const BasisElt& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (degree != o.degree) return degree < o.degree;
        if (kind == Kind::monomial) return false;
        return pole < o.pole;
    }
    bool operator==(const BasisElt& o) const {
        return kind == o.kind && degree == o.degree &&
               (kind == Kind::monomial || pole == o.pole);
    }

    RatFun<K> to_ratfun() const {
        if (kind == Kind::monomial) return RatFun<K>(Poly<K>::monomial(K(1), degree));
        Poly<K> lin = Poly<K>::variable() - Poly<K>(pole);
        Poly<K> den = Poly<K>::one();
        for (unsigned i = 0; i < degree; ++i) den *= lin;
        return RatFun<K>(Poly<K>::one(), den);
    }

    std::string str() const {
        if (kind == Kind::monomial) return degree == 0 ? "1" : "x^" + std::to_string(degree);
        return "1/(x-" + pole.str() + ")^" + std::to_string(degree);
    }
};

template <class K>
using BasisExpansion = std::vector<std::pair<BasisElt<K>, K>>;

// Exact expansion of a rational function in the canonical basis; requires
// the denominator to split into linear factors over the ground field.
template <class K>
BasisExpansion<K> expand_basis(const RatFun<K>& r, const FieldSpec& fs) {
    BasisExpansion<K> out;
    if (r.is_zero()) return out;
    auto [quot, rem] = divmod(r.num(), r.den());
    for (int i = 0; i <= quot.degree(); ++i)
        if (!quot.coeff(static_cast<std::size_t>(i)).is_zero())
            out.emplace_back(BasisElt<K>::monomial(static_cast<unsigned>(i)),
                             quot.coeff(static_cast<std::size_t>(i)));
    if (!rem.is_zero()) {
        RootSplit<K> split = field_roots_fs(r.den(), fs);
        if (split.cofactor.degree() > 0)
            throw non_split_denominator_error("denominator has a non-linear factor: " +
                                              split.cofactor.str());
        // distinct poles with multiplicities
        std::vector<std::pair<K, unsigned>> poles;
        for (auto& root : split.roots) {
            bool found = false;
            for (auto& [l, m] : poles)
                if (l == root) {
                    ++m;
                    found = true;
                }
            if (!found) poles.emplace_back(root, 1);
        }
        // solve sum c_{l,j} den/(x-l)^j = rem for the coefficients
        std::vector<std::pair<K, unsigned>> unknowns;  // (pole, order)
        for (auto& [l, m] : poles)
            for (unsigned j = 1; j <= m; ++j) unknowns.emplace_back(l, j);
        const std::size_t n = unknowns.size();
        Matrix<K> sys(static_cast<std::size_t>(r.den().degree()), n);
        for (std::size_t u = 0; u < n; ++u) {
            Poly<K> lin = Poly<K>::variable() - Poly<K>(unknowns[u].first);
            Poly<K> divisor = Poly<K>::one();
            for (unsigned i = 0; i < unknowns[u].second; ++i) divisor *= lin;
            Poly<K> cofactor = r.den() / divisor;
            for (int i = 0; i <= cofactor.degree(); ++i)
                sys(static_cast<std::size_t>(i), u) = cofactor.coeff(static_cast<std::size_t>(i));
        }
        std::vector<K> rhs(static_cast<std::size_t>(r.den().degree()), K(0));
        for (int i = 0; i <= rem.degree(); ++i) rhs[static_cast<std::size_t>(i)] =
            rem.coeff(static_cast<std::size_t>(i));
        auto sol = solve_linear(sys, rhs);
        if (!sol) throw error("partial fraction system inconsistent");
        for (std::size_t u = 0; u < n; ++u)
            if (!(*sol)[u].is_zero())
                out.emplace_back(BasisElt<K>::pole_at(unknowns[u].first, unknowns[u].second),
                                 (*sol)[u]);
    }
    // exact recombination check
    RatFun<K> back;
    for (auto& [elt, c] : out) back += elt.to_ratfun() * RatFun<K>(c);
    if (back != r) throw error("basis expansion failed to recombine");
    return out;
}

// x^j * z expanded in the basis (partial-fraction shift for poles)
template <class K>
BasisExpansion<K> shift_by_monomial(const BasisElt<K>& z, unsigned j) {
    BasisExpansion<K> out;
    if (j == 0) {
        out.emplace_back(z, K(1));
        return out;
    }
    if (z.kind == BasisElt<K>::Kind::monomial) {
        out.emplace_back(BasisElt<K>::monomial(z.degree + j), K(1));
        return out;
    }
    PartialFractionShift<K> pfs = partial_fraction_shift<K>(j, z.degree, z.pole);
    for (int i = 0; i <= pfs.head.degree(); ++i)
        if (!pfs.head.coeff(static_cast<std::size_t>(i)).is_zero())
            out.emplace_back(BasisElt<K>::monomial(static_cast<unsigned>(i)),
                             pfs.head.coeff(static_cast<std::size_t>(i)));
    for (auto& [c, order] : pfs.tail)
        out.emplace_back(BasisElt<K>::pole_at(z.pole, static_cast<unsigned>(order)), c);
    if (!pfs.top_coeff.is_zero())
        out.emplace_back(BasisElt<K>::pole_at(z.pole, z.degree), pfs.top_coeff);
    return out;
}

// Demand-driven linear endomorphism of k(x).  Instances share their memo
// through a common handle, so copies see one table; confinement to a single
// execution context is the caller's business.
template <class K>
class LazyLinearMap {
  public:
    using Rule = std::function<RatFun<K>(const BasisElt<K>&)>;

    LazyLinearMap() : impl_(std::make_shared<Impl>()) {
        impl_->rule = [](const BasisElt<K>&) { return RatFun<K>(); };
        impl_->zero_hint = true;
    }
    explicit LazyLinearMap(Rule rule, bool zero_hint = false)
        : impl_(std::make_shared<Impl>()) {
        impl_->rule = std::move(rule);
        impl_->zero_hint = zero_hint;
    }

    static LazyLinearMap zero() { return LazyLinearMap(); }
    static LazyLinearMap identity() {
        return LazyLinearMap([](const BasisElt<K>& z) { return z.to_ratfun(); });
    }
    static LazyLinearMap multiplication(const RatFun<K>& r) {
        return LazyLinearMap([r](const BasisElt<K>& z) { return r * z.to_ratfun(); },
                             r.is_zero());
    }
    static LazyLinearMap from_table(std::map<BasisElt<K>, RatFun<K>> table) {
        auto shared = std::make_shared<std::map<BasisElt<K>, RatFun<K>>>(std::move(table));
        return LazyLinearMap([shared](const BasisElt<K>& z) {
            auto it = shared->find(z);
            return it == shared->end() ? RatFun<K>() : it->second;
        });
    }

    bool is_zero_map_hint() const { return impl_->zero_hint; }

    const RatFun<K>& at(const BasisElt<K>& z) const {
        auto it = impl_->memo.find(z);
        if (it != impl_->memo.end()) return it->second;
        RatFun<K> v = impl_->rule(z);
        return impl_->memo.emplace(z, std::move(v)).first->second;
    }

    // linear extension to arbitrary rational functions
    RatFun<K> apply(const RatFun<K>& r, const FieldSpec& fs) const {
        RatFun<K> acc;
        for (auto& [elt, c] : expand_basis(r, fs)) acc += at(elt) * RatFun<K>(c);
        return acc;
    }

    const std::map<BasisElt<K>, RatFun<K>>& memo() const { return impl_->memo; }

  private:
    struct Impl {
        Rule rule;
        mutable std::map<BasisElt<K>, RatFun<K>> memo;
        bool zero_hint = false;
    };
    std::shared_ptr<Impl> impl_;
};

// q_c for c(x,y) = sum_j a_j(y) x^j:  q_c(z) = sum_j a_j(x) q(x^j z)
template <class K>
LazyLinearMap<K> apply_c(const LazyLinearMap<K>& q, const BiPoly<K>& c) {
    if (c.is_zero()) return LazyLinearMap<K>::zero();
    std::vector<std::pair<unsigned, RatFun<K>>> terms;  // (j, a_j as function of x)
    for (int j = 0; j <= c.deg_x(); ++j) {
        Poly<K> aj = c.x_coeff(j);
        if (!aj.is_zero()) terms.emplace_back(static_cast<unsigned>(j), RatFun<K>(aj));
    }
    return LazyLinearMap<K>(
        [q, terms](const BasisElt<K>& z) {
            RatFun<K> acc;
            for (auto& [j, aj] : terms) {
                RatFun<K> inner;
                for (auto& [elt, coef] : shift_by_monomial(z, j))
                    inner += q.at(elt) * RatFun<K>(coef);
                acc += aj * inner;
            }
            return acc;
        },
        q.is_zero_map_hint());
}

// q . mu_s : z -> q(s(x) z)
template <class K>
LazyLinearMap<K> precompose_multiplication(const LazyLinearMap<K>& q, const RatFun<K>& s,
                                           const FieldSpec& fs) {
    return LazyLinearMap<K>(
        [q, s, fs](const BasisElt<K>& z) { return q.apply(s * z.to_ratfun(), fs); },
        q.is_zero_map_hint());
}

// mu_s . q : z -> s(x) q(z)
template <class K>
LazyLinearMap<K> postcompose_multiplication(const LazyLinearMap<K>& q, const RatFun<K>& s) {
    return LazyLinearMap<K>(
        [q, s](const BasisElt<K>& z) { return s * q.at(z); }, q.is_zero_map_hint());
}

// c = c_t * prod (x - lambda_i) with no ground-field root left in c_t
template <class K>
struct ContentSplit {
    BiPoly<K> content_free;
    std::vector<K> roots;  // with multiplicity
};

template <class K>
ContentSplit<K> x_content_split(const BiPoly<K>& c, const FieldSpec& fs) {
    if (c.is_zero()) throw error("cannot split the zero polynomial");
    ContentSplit<K> out;
    out.content_free = c;
    // lambda annihilates c(lambda, y) iff it is a common root of the
    // coefficients of the y-powers
    while (true) {
        Poly<K> common;
        for (int j = 0; j <= out.content_free.deg_y(); ++j)
            common = gcd(common, out.content_free.y_coeff(j));
        if (common.degree() < 1) break;
        RootSplit<K> roots = field_roots_fs(common, fs);
        if (roots.roots.empty()) break;
        for (auto& lambda : roots.roots) {
            // divide by (x - lambda) as often as it stays exact
            while (out.content_free.eval_x(lambda).is_zero()) {
                Poly<RatFun<K>> as_x = out.content_free.as_x_poly_over_ky();
                Poly<RatFun<K>> lin =
                    Poly<RatFun<K>>::variable() - Poly<RatFun<K>>(RatFun<K>(lambda));
                auto [quot, rem] = divmod(as_x, lin);
                if (!rem.is_zero()) throw non_split_content_error("inexact content division");
                out.content_free = BiPoly<K>::from_x_poly_over_ky(quot);
                out.roots.push_back(lambda);
            }
        }
    }
    return out;
}

// Smallest n >= 1 with c(x^n, x) != 0; the search is bounded by the degrees.
template <class K>
std::pair<unsigned, Poly<K>> convolution_seed(const BiPoly<K>& c) {
    unsigned limit = static_cast<unsigned>(c.deg_x() + c.deg_y() + 1);
    for (unsigned n = 1; n <= limit + 1; ++n) {
        Poly<K> theta = c.substitute(Poly<K>::monomial(K(1), n), Poly<K>::variable());
        if (!theta.is_zero()) return {n, theta};
    }
    throw error("no substitution seed found below the degree bound");
}

namespace detail {

// The seed-and-recursion construction for content-free c: defines q with
// q_c = p on every basis element.
template <class K>
class ConvolutionSolver : public std::enable_shared_from_this<ConvolutionSolver<K>> {
  public:
    ConvolutionSolver(BiPoly<K> c, LazyLinearMap<K> p, FieldSpec fs)
        : c_(std::move(c)), p_(std::move(p)), fs_(fs) {
        m_ = static_cast<unsigned>(c_.deg_x());
        for (unsigned j = 0; j <= m_; ++j) coeffs_.push_back(RatFun<K>(c_.x_coeff(j)));
        auto [n, theta] = convolution_seed(c_);
        seed_power_ = n;
        seed_value_ = RatFun<K>(theta);
    }

    RatFun<K> value(const BasisElt<K>& z) {
        auto it = memo_.find(z);
        if (it != memo_.end()) return it->second;
        RatFun<K> v = compute(z);
        memo_.emplace(z, v);
        return v;
    }

  private:
    RatFun<K> value_of_poly(const Poly<K>& h) {
        RatFun<K> acc;
        for (int i = 0; i <= h.degree(); ++i) {
            K c = h.coeff(static_cast<std::size_t>(i));
            if (!c.is_zero())
                acc += value(BasisElt<K>::monomial(static_cast<unsigned>(i))) * RatFun<K>(c);
        }
        return acc;
    }

    RatFun<K> compute(const BasisElt<K>& z) {
        using Elt = BasisElt<K>;
        if (z.kind == Elt::Kind::monomial) {
            if (z.degree == 0)
                return seed_value_.inv() * p_.at(Elt::monomial(0));
            if (z.degree <= m_) {
                // q(x^j) = x^{n j} q(1)
                RatFun<K> xnj(Poly<K>::monomial(K(1), seed_power_ * z.degree));
                return xnj * value(Elt::monomial(0));
            }
            // enforce Eq(x^r) with r = degree - m
            unsigned r = z.degree - m_;
            RatFun<K> acc = p_.at(Elt::monomial(r));
            for (unsigned j = 0; j < m_; ++j)
                if (!coeffs_[j].is_zero())
                    acc -= coeffs_[j] * value(Elt::monomial(j + r));
            return coeffs_[m_].inv() * acc;
        }
        // poles: c(lambda, x) is invertible because the content is split off
        RatFun<K> clx(c_.eval_x(z.pole));
        if (clx.is_zero())
            throw non_split_content_error("content split left a vanishing substitution");
        RatFun<K> acc = p_.at(z);
        for (unsigned j = 0; j <= m_; ++j) {
            if (coeffs_[j].is_zero() || j == 0) continue;
            // x^j/(x-l)^s = head + lower-order poles + l^j/(x-l)^s; the last
            // term contributes c(lambda, x) q(z) and stays on the left side
            PartialFractionShift<K> pfs = partial_fraction_shift<K>(j, z.degree, z.pole);
            RatFun<K> inner = value_of_poly(pfs.head);
            for (auto& [coef, order] : pfs.tail)
                inner += value(BasisElt<K>::pole_at(z.pole, static_cast<unsigned>(order))) *
                         RatFun<K>(coef);
            acc -= coeffs_[j] * inner;
        }
        return clx.inv() * acc;
    }

    BiPoly<K> c_;
    LazyLinearMap<K> p_;
    FieldSpec fs_;
    unsigned m_ = 0;
    std::vector<RatFun<K>> coeffs_;
    unsigned seed_power_ = 1;
    RatFun<K> seed_value_;
    std::map<BasisElt<K>, RatFun<K>> memo_;
};

}  // namespace detail

// Solve q_c = p; the solution is verified on the demand set before it is
// returned.
template <class K>
LazyLinearMap<K> solve_convolution(const BiPoly<K>& c, const LazyLinearMap<K>& p,
                                   const std::vector<BasisElt<K>>& demands, const FieldSpec& fs) {
    if (c.is_zero()) throw error("convolution against the zero polynomial");
    ContentSplit<K> split = x_content_split(c, fs);

    LazyLinearMap<K> q;
    if (split.content_free.deg_x() == 0 && split.content_free.deg_y() == 0 &&
        split.roots.empty()) {
        // c is a nonzero constant: q = p / c
        K c0 = split.content_free.eval(K(0), K(0));
        q = postcompose_multiplication(p, RatFun<K>(c0).inv());
    } else {
        auto solver =
            std::make_shared<detail::ConvolutionSolver<K>>(split.content_free, p, fs);
        LazyLinearMap<K> q0([solver](const BasisElt<K>& z) { return solver->value(z); },
                            p.is_zero_map_hint());
        if (split.roots.empty()) {
            q = q0;
        } else {
            Poly<K> s = Poly<K>::one();
            for (auto& lambda : split.roots)
                s *= Poly<K>::variable() - Poly<K>(lambda);
            q = precompose_multiplication(q0, RatFun<K>(s).inv(), fs);
        }
    }

    LazyLinearMap<K> check = apply_c(q, c);
    for (auto& z : demands)
        if (check.at(z) != p.at(z))
            throw error("convolution solution failed verification at " + z.str());
    return q;
}

}  // namespace brickwork

#endif
