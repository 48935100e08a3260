#ifndef BRICKWORK_HERMITE_HPP
#define BRICKWORK_HERMITE_HPP

// Unimodular row triangularization over the Euclidean domain k(y)[x].
//
// The core works over F[x] for an abstract coefficient field F: columns are
// cleared by one-shot extended-gcd 2x2 combinations (determinant 1), with
// the lowest-x-degree entry as pivot (ties by row index), and the diagonal
// is made monic at the end.  Run directly with F = k(y) this is the plain
// algorithm; its intermediate Euclidean remainders over k(y) dwarf the final
// transform, so over Q larger inputs take a modular fast path:
//
//   * for a word prime p, the core runs at scalar points y = beta in F_p and
//     every coefficient of A and A*C0 is recovered by Newton/Cauchy
//     interpolation over F_p (branch traces keep the runs on the generic
//     computation);
//   * images for several primes are combined by CRT and lifted to Q by
//     rational reconstruction;
//   * the lifted result is verified exactly; any failure falls back to the
//     direct path, so the fast path never changes answers.
//
// The transform A satisfies: A*C0 upper triangular with monic nonzero
// diagonal, det A in k(y)*, and g(y) collects every denominator in A.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "brickwork/bipoly.hpp"
#include "brickwork/matrix.hpp"

namespace brickwork {

template <class K>
struct HermiteResult {
    Matrix<Poly<RatFun<K>>> transform;   // A, unimodular over k(y)[x]
    Matrix<Poly<RatFun<K>>> triangular;  // A * C0
    RatFun<K> det;                       // det A, a nonzero element of k(y)
    Poly<K> denominator_support;         // g(y): all coefficients of A lie in k[y]_g
};

namespace detail {

// Extended gcd with the remainder degree sequence logged, so that scalar
// specializations of the generic run can be recognized reliably.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> extended_gcd_traced(const Poly<F>& a, const Poly<F>& b,
                                                          std::vector<long>* trace) {
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = Poly<F>::one(), s1;
    Poly<F> t0, t1 = Poly<F>::one();
    while (!r1.is_zero()) {
        if (trace) trace->push_back(r1.degree());
        auto [q, r] = divmod(r0, r1);
        r0 = r1; r1 = r;
        Poly<F> s = s0 - q * s1; s0 = s1; s1 = s;
        Poly<F> t = t0 - q * t1; t0 = t1; t1 = t;
    }
    if (trace) trace->push_back(-3);
    if (!r0.is_zero()) {
        F lc_inv = r0.leading().inv();
        r0 = r0 * lc_inv; s0 = s0 * lc_inv; t0 = t0 * lc_inv;
    }
    return {r0, s0, t0};
}

// Deterministic triangularization core over F[x].  Returns false when the
// input is singular.  The branch trace records pivot choices and degree
// drops so specializations can be matched against the generic run.
template <class F>
bool triangularize_core(Matrix<Poly<F>>& m, Matrix<Poly<F>>& a, F& det,
                        std::vector<long>* trace) {
    const std::size_t n = m.rows();
    a = Matrix<Poly<F>>::identity(n);
    det = F(1);
    auto log = [&](long v) {
        if (trace) trace->push_back(v);
    };
    for (std::size_t col = 0; col < n; ++col) {
        while (true) {
            std::size_t pivot_row = n;
            int best_deg = -1;
            for (std::size_t i = col; i < n; ++i) {
                if (m(i, col).is_zero()) continue;
                int d = m(i, col).degree();
                if (pivot_row == n || d < best_deg) {
                    pivot_row = i;
                    best_deg = d;
                }
            }
            if (pivot_row == n) return false;
            log(static_cast<long>(pivot_row));
            log(best_deg);
            if (pivot_row != col) {
                m.swap_rows(pivot_row, col);
                a.swap_rows(pivot_row, col);
                det = -det;
            }
            bool clean = true;
            for (std::size_t i = col + 1; i < n; ++i) {
                if (m(i, col).is_zero()) continue;
                clean = false;
                const Poly<F> top = m(col, col);
                const Poly<F> low = m(i, col);
                log(static_cast<long>(i));
                log(low.degree());
                // [[s, t], [-low/g, top/g]] has determinant 1
                auto [g, s, t] = extended_gcd_traced(top, low, trace);
                Poly<F> nu = -(low / g), nv = top / g;
                for (std::size_t j = 0; j < n; ++j) {
                    Poly<F> mx = m(col, j), my = m(i, j);
                    m(col, j) = s * mx + t * my;
                    m(i, j) = nu * mx + nv * my;
                    Poly<F> ax = a(col, j), ay = a(i, j);
                    a(col, j) = s * ax + t * ay;
                    a(i, j) = nu * ax + nv * ay;
                }
            }
            if (clean) break;
            log(-1);
        }
        log(-2);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i).is_zero()) return false;
        log(m(i, i).degree());
        F lead = m(i, i).leading();
        if (!lead.is_one()) {
            F inv = lead.inv();
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = m(i, j) * inv;
                a(i, j) = a(i, j) * inv;
            }
            det *= inv;
        }
    }
    // degree profile completes the trace
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            log(m(i, j).degree());
            log(a(i, j).degree());
        }
    return true;
}

template <class F>
Poly<F> newton_interpolate(const std::vector<F>& points, const std::vector<F>& values) {
    const std::size_t n = points.size();
    std::vector<F> dd = values;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n; i-- > level;)
            dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - level]);
    Poly<F> interp, basis = Poly<F>::one();
    for (std::size_t i = 0; i < n; ++i) {
        interp += basis * Poly<F>(dd[i]);
        basis *= Poly<F>::variable() - Poly<F>(points[i]);
    }
    return interp;
}

// Cauchy interpolation: a rational function with numerator and denominator
// of degree <= (N-1)/2 through the given points, via the half-way stop of
// the extended Euclidean scheme.
template <class F>
RatFun<F> cauchy_interpolate(const std::vector<F>& points, const std::vector<F>& values) {
    const std::size_t n = points.size();
    Poly<F> interp = newton_interpolate(points, values);
    Poly<F> modulus = Poly<F>::one();
    for (auto& b : points) modulus *= Poly<F>::variable() - Poly<F>(b);
    Poly<F> r0 = modulus, r1 = interp;
    Poly<F> t0, t1 = Poly<F>::one();
    long bound = static_cast<long>(n - 1) / 2;
    while (r1.degree() > bound) {
        auto [q, r] = divmod(r0, r1);
        Poly<F> t = t0 - q * t1;
        r0 = r1; r1 = r;
        t0 = t1; t1 = t;
    }
    if (t1.is_zero()) throw error("rational reconstruction degenerated");
    return RatFun<F>(r1, t1);
}

template <class S>
S cofactor_det(const Matrix<S>& m) {
    const std::size_t n = m.rows();
    if (n == 0) return S(1);
    if (n == 1) return m(0, 0);
    S acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Matrix<S> minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        S term = m(0, j) * cofactor_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

template <class K>
HermiteResult<K> hermite_finalize(Matrix<Poly<RatFun<K>>> a, Matrix<Poly<RatFun<K>>> m,
                                  RatFun<K> det_a, const Matrix<BiPoly<K>>& c0) {
    using Entry = Poly<RatFun<K>>;
    const std::size_t n = c0.rows();
    Poly<K> g = Poly<K>::one();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (auto& coeff : a(i, j).coeffs()) g = lcm(g, coeff.den());

    Matrix<Entry> orig(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) orig(i, j) = c0(i, j).as_x_poly_over_ky();
    Matrix<Entry> prod = a * orig;
    if (prod != m) throw error("triangularization transform failed verification");
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i).is_zero() || !m(i, i).leading().is_one())
            throw error("diagonal not monic after normalization");
        for (std::size_t j = 0; j < i; ++j)
            if (!prod(i, j).is_zero()) throw error("result not upper triangular");
    }
    if (det_a.is_zero()) throw error("transform determinant vanished");
    Entry det_direct = cofactor_det(a);
    if (det_direct.degree() != 0 || det_direct.coeff(0) != det_a)
        throw error("transform determinant is not the tracked unit of k(y)");

    HermiteResult<K> out;
    out.transform = std::move(a);
    out.triangular = std::move(m);
    out.det = det_a;
    out.denominator_support = g.monic();
    return out;
}

// ---------------------------------------------------------------------------
// Modular fast path over Q.

inline constexpr std::uint64_t kHermitePrimes[] = {
    4611686018427388039ULL, 4611686018427387847ULL, 4611686018427387787ULL,
    4611686018427387631ULL, 4611686018427387613ULL, 4611686018427387527ULL,
    4611686018427387433ULL, 4611686018427387407ULL};

struct ModularHermiteImage {
    std::vector<long> trace;                          // branch trace of the generic run
    Matrix<Poly<RatFun<PrimeField>>> a, m;            // A mod p, (A*C0) mod p
    RatFun<PrimeField> det;
};

// beta-sample pool over F_p sharing one branch trace (majority-pinned).
class PrimePool {
  public:
    struct Sample {
        PrimeField beta;
        Matrix<Poly<PrimeField>> a, m;
        PrimeField det;
    };

    PrimePool(const Matrix<BiPoly<Rational>>& c0, std::uint64_t p) : p_(p) {
        const std::size_t n = c0.rows();
        c0p_ = Matrix<BiPoly<PrimeField>>(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                BiPoly<PrimeField> e;
                for (auto& [key, c] : c0(i, j).terms()) {
                    // exact image of a rational coefficient mod p
                    mpz_class num = c.raw().get_num(), den = c.raw().get_den(), t;
                    mpz_mod_ui(t.get_mpz_t(), num.get_mpz_t(), p);
                    PrimeField cn(static_cast<long>(t.get_ui()), p);
                    mpz_mod_ui(t.get_mpz_t(), den.get_mpz_t(), p);
                    PrimeField cd(static_cast<long>(t.get_ui()), p);
                    e.add_term(key.first, key.second, cn / cd);
                }
                c0p_(i, j) = e;
            }
    }

    bool ensure(std::size_t count) {
        std::size_t misses = 0;
        while (pool_.size() < count) {
            if (next_ >= static_cast<long>(p_)) return false;
            if (misses > 64 + 2 * count) return false;
            if (trace_.empty()) {
                std::map<std::vector<long>, std::vector<Sample>> groups;
                for (int i = 0; i < 12; ++i) {
                    std::vector<long> trace;
                    Sample s;
                    if (run_at(draw(), s, trace)) groups[trace].push_back(std::move(s));
                }
                std::vector<Sample>* best = nullptr;
                for (auto& [k, v] : groups)
                    if (!best || v.size() > best->size()) {
                        best = &v;
                        trace_ = k;
                    }
                if (!best) {
                    misses += 12;
                    continue;
                }
                pool_ = std::move(*best);
                continue;
            }
            Sample s;
            std::vector<long> trace;
            if (!run_at(draw(), s, trace) || trace != trace_) {
                ++misses;
                continue;
            }
            pool_.push_back(std::move(s));
        }
        return true;
    }

    const std::vector<Sample>& pool() const { return pool_; }
    const std::vector<long>& trace() const { return trace_; }
    std::uint64_t prime() const { return p_; }

  private:
    PrimeField draw() { return PrimeField(next_++, p_); }

    bool run_at(const PrimeField& beta, Sample& out, std::vector<long>& trace) {
        const std::size_t n = c0p_.rows();
        Matrix<Poly<PrimeField>> m(n, n), a;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = c0p_(i, j).eval_y(beta);
        PrimeField det;
        if (!triangularize_core<PrimeField>(m, a, det, &trace)) return false;
        out.beta = beta;
        out.a = std::move(a);
        out.m = std::move(m);
        out.det = det;
        return true;
    }

    std::uint64_t p_;
    Matrix<BiPoly<PrimeField>> c0p_;
    std::vector<Sample> pool_;
    std::vector<long> trace_;
    long next_ = 0;
};

// Reconstruct one y-rational function over F_p from sample values: Cauchy
// interpolation on a growing prefix, accepted when the remaining pool agrees
// by evaluation.
inline bool reconstruct_mod_p(PrimePool& pool_holder,
                              const std::function<PrimeField(std::size_t)>& value_at,
                              RatFun<PrimeField>& out) {
    constexpr std::size_t kMaxPoints = 1200;
    const bool dbg = std::getenv("BRICKWORK_HERMITE_DEBUG") != nullptr;
    for (std::size_t n_use = 9;; n_use = n_use * 2 - 1) {
        if (n_use > kMaxPoints) {
            if (dbg) std::fprintf(stderr, "[hermite] mod-p coefficient exceeded %zu points\n",
                                  kMaxPoints);
            return false;
        }
        if (!pool_holder.ensure(n_use + 8)) {
            if (dbg) std::fprintf(stderr, "[hermite] mod-p pool exhausted at %zu\n", n_use + 8);
            return false;
        }
        const auto& pool = pool_holder.pool();
        std::vector<PrimeField> pts(n_use), vals(n_use);
        bool all_zero = true;
        for (std::size_t l = 0; l < n_use; ++l) {
            pts[l] = pool[l].beta;
            vals[l] = value_at(l);
            all_zero = all_zero && vals[l].is_zero();
        }
        if (all_zero && n_use >= 17) {
            out = RatFun<PrimeField>();
            return true;
        }
        RatFun<PrimeField> cand;
        try {
            cand = cauchy_interpolate<PrimeField>(pts, vals);
        } catch (const error&) {
            continue;
        }
        bool ok = true;
        for (std::size_t l = n_use; l < pool.size() && ok; ++l) {
            const PrimeField& b = pool[l].beta;
            PrimeField d = cand.den()(b);
            ok = !d.is_zero() && cand.num()(b) / d == value_at(l);
        }
        if (ok) {
            out = cand;
            return true;
        }
    }
}

inline std::optional<ModularHermiteImage> hermite_image_mod_p(
    const Matrix<BiPoly<Rational>>& c0, std::uint64_t p) {
    using Entry = Poly<RatFun<PrimeField>>;
    const std::size_t n = c0.rows();
    PrimePool pool(c0, p);
    if (!pool.ensure(17)) return std::nullopt;

    ModularHermiteImage img;
    img.trace = pool.trace();
    auto rebuild = [&](auto entry_of, Matrix<Entry>& res) {
        res = Matrix<Entry>(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                int maxdeg = -1;
                for (auto& s : pool.pool())
                    maxdeg = std::max(maxdeg, entry_of(s)(i, j).degree());
                std::vector<RatFun<PrimeField>> cs(maxdeg + 1, RatFun<PrimeField>());
                for (int d = 0; d <= maxdeg; ++d) {
                    auto value_at = [&, d, i, j](std::size_t l) {
                        return entry_of(pool.pool()[l])(i, j).coeff(d);
                    };
                    if (!reconstruct_mod_p(pool, value_at, cs[d])) return false;
                }
                res(i, j) = Entry(cs);
            }
        return true;
    };
    using SampleT = PrimePool::Sample;
    const bool dbg = std::getenv("BRICKWORK_HERMITE_DEBUG") != nullptr;
    if (!rebuild([](const SampleT& s) -> const Matrix<Poly<PrimeField>>& { return s.a; }, img.a)) {
        if (dbg) std::fprintf(stderr, "[hermite] mod-%llu: transform rebuild failed\n",
                              (unsigned long long)p);
        return std::nullopt;
    }
    if (!rebuild([](const SampleT& s) -> const Matrix<Poly<PrimeField>>& { return s.m; }, img.m)) {
        if (dbg) std::fprintf(stderr, "[hermite] mod-%llu: triangular rebuild failed\n",
                              (unsigned long long)p);
        return std::nullopt;
    }
    auto det_at = [&](std::size_t l) { return pool.pool()[l].det; };
    if (!reconstruct_mod_p(pool, det_at, img.det)) return std::nullopt;
    return img;
}

// Rational reconstruction of a residue r mod M (|num|, den <= sqrt(M/2)).
inline bool rational_lift(const mpz_class& r, const mpz_class& modulus, Rational& out) {
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), mpz_class(modulus / 2).get_mpz_t());
    mpz_class r0 = modulus, r1 = r % modulus;
    if (r1 < 0) r1 += modulus;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    if (t1 == 0) return false;
    if (t1 < 0) { t1 = -t1; r1 = -r1; }
    if (t1 > bound) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1 && g != -1) {
        r1 /= g;
        t1 /= g;
    }
    out = Rational(r1, t1);
    return true;
}

// CRT accumulator over the coefficient lattice of several prime images.
class CoefficientLift {
  public:
    // positions are visited in one fixed order per image; profiles must agree
    bool fold(const std::vector<std::uint64_t>& residues, std::uint64_t p) {
        if (acc_.empty()) {
            acc_.assign(residues.size(), mpz_class(0));
            for (std::size_t i = 0; i < residues.size(); ++i)
                acc_[i] = mpz_class(static_cast<unsigned long>(residues[i]));
            modulus_ = static_cast<unsigned long>(p);
            return true;
        }
        if (residues.size() != acc_.size()) return false;
        mpz_class p_mpz(static_cast<unsigned long>(p)), minv;
        if (mpz_invert(minv.get_mpz_t(), modulus_.get_mpz_t(), p_mpz.get_mpz_t()) == 0)
            return false;
        for (std::size_t i = 0; i < acc_.size(); ++i) {
            mpz_class ri(static_cast<unsigned long>(residues[i]));
            mpz_class diff = (ri - acc_[i]) % p_mpz;
            if (diff < 0) diff += p_mpz;
            acc_[i] += modulus_ * ((diff * minv) % p_mpz);
        }
        modulus_ *= p_mpz;
        return true;
    }

    bool lift(std::vector<Rational>& out) const {
        out.resize(acc_.size());
        for (std::size_t i = 0; i < acc_.size(); ++i)
            if (!rational_lift(acc_[i], modulus_, out[i])) return false;
        return true;
    }

  private:
    std::vector<mpz_class> acc_;
    mpz_class modulus_;
};

// Flatten the canonical coefficients of a prime image in a fixed order, with
// the (num_deg, den_deg) profile recorded for cross-prime consistency.
// Coefficients that are still modulus-free literals (e.g. the 1 of a monic
// denominator) are reduced here.
inline void flatten_image(const ModularHermiteImage& img, std::uint64_t p,
                          std::vector<long>& profile, std::vector<std::uint64_t>& residues) {
    profile.clear();
    residues.clear();
    auto residue = [p](const PrimeField& c) {
        if (c.modulus()) return c.rep();
        long long v = c.raw() % static_cast<long long>(p);
        if (v < 0) v += static_cast<long long>(p);
        return static_cast<std::uint64_t>(v);
    };
    auto visit_fraction = [&](const RatFun<PrimeField>& f) {
        profile.push_back(f.num().degree());
        profile.push_back(f.den().degree());
        for (int k = 0; k <= f.num().degree(); ++k) residues.push_back(residue(f.num().coeff(k)));
        for (int k = 0; k <= f.den().degree(); ++k) residues.push_back(residue(f.den().coeff(k)));
    };
    auto visit_matrix = [&](const Matrix<Poly<RatFun<PrimeField>>>& mat) {
        for (std::size_t i = 0; i < mat.rows(); ++i)
            for (std::size_t j = 0; j < mat.cols(); ++j) {
                profile.push_back(mat(i, j).degree());
                for (int d = 0; d <= mat(i, j).degree(); ++d) visit_fraction(mat(i, j).coeff(d));
            }
    };
    visit_matrix(img.a);
    visit_matrix(img.m);
    visit_fraction(img.det);
}

// Rebuild rational matrices from the lifted coefficient stream, mirroring
// flatten_image's order.
inline void unflatten(const ModularHermiteImage& shape, const std::vector<Rational>& coeffs,
                      Matrix<Poly<RatFun<Rational>>>& a, Matrix<Poly<RatFun<Rational>>>& m,
                      RatFun<Rational>& det) {
    std::size_t pos = 0;
    auto take_fraction = [&](const RatFun<PrimeField>& ref) {
        std::vector<Rational> num(ref.num().degree() + 1), den(ref.den().degree() + 1);
        for (auto& c : num) c = coeffs[pos++];
        for (auto& c : den) c = coeffs[pos++];
        return RatFun<Rational>(Poly<Rational>(num), Poly<Rational>(den));
    };
    auto take_matrix = [&](const Matrix<Poly<RatFun<PrimeField>>>& ref,
                           Matrix<Poly<RatFun<Rational>>>& out) {
        out = Matrix<Poly<RatFun<Rational>>>(ref.rows(), ref.cols());
        for (std::size_t i = 0; i < ref.rows(); ++i)
            for (std::size_t j = 0; j < ref.cols(); ++j) {
                std::vector<RatFun<Rational>> cs(ref(i, j).degree() + 1, RatFun<Rational>());
                for (int d = 0; d <= ref(i, j).degree(); ++d)
                    cs[d] = take_fraction(ref(i, j).coeff(d));
                out(i, j) = Poly<RatFun<Rational>>(cs);
            }
    };
    take_matrix(shape.a, a);
    take_matrix(shape.m, m);
    det = take_fraction(shape.det);
}

// Cheap rejection of junk lifts: evaluate A*C0 == M at a few scalar y-points
// before paying for the full exact verification.
inline bool spot_check(const Matrix<Poly<RatFun<Rational>>>& a,
                       const Matrix<Poly<RatFun<Rational>>>& m,
                       const Matrix<BiPoly<Rational>>& c0) {
    const std::size_t n = c0.rows();
    for (long betaval : {5L, -7L}) {
        Rational beta(betaval);
        Matrix<Poly<Rational>> av(n, n), mv(n, n), cv(n, n);
        auto eval_entry = [&](const Poly<RatFun<Rational>>& e, Poly<Rational>& out_p) {
            std::vector<Rational> cs(e.degree() + 1, Rational(0));
            for (int d = 0; d <= e.degree(); ++d) {
                const RatFun<Rational>& c = e.coeff(d);
                Rational dv = c.den()(beta);
                if (dv.is_zero()) return false;
                cs[d] = c.num()(beta) / dv;
            }
            out_p = Poly<Rational>(cs);
            return true;
        };
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = eval_entry(a(i, j), av(i, j)) && eval_entry(m(i, j), mv(i, j));
                cv(i, j) = c0(i, j).eval_y(beta);
            }
        if (!ok) continue;  // pole at the probe point; try the next one
        if (av * cv != mv) return false;
    }
    return true;
}

inline bool hermite_by_modular(const Matrix<BiPoly<Rational>>& c0,
                               HermiteResult<Rational>& out) {
    std::optional<ModularHermiteImage> shape;
    std::vector<long> profile;
    CoefficientLift lift;
    std::size_t folded = 0;
    const bool dbg = std::getenv("BRICKWORK_HERMITE_DEBUG") != nullptr;
    for (std::uint64_t p : kHermitePrimes) {
        if (dbg) std::fprintf(stderr, "[hermite] image for prime %llu...\n", (unsigned long long)p);
        auto img = hermite_image_mod_p(c0, p);
        if (dbg) std::fprintf(stderr, "[hermite] image %s\n", img ? "ok" : "failed");
        if (!img) continue;
        std::vector<long> prof;
        std::vector<std::uint64_t> residues;
        flatten_image(*img, p, prof, residues);
        if (!shape) {
            shape = std::move(img);
            profile = prof;
        } else if (prof != profile || img->trace != shape->trace) {
            continue;  // unlucky prime
        }
        if (!lift.fold(residues, p)) continue;
        ++folded;
        if (folded < 2) continue;
        std::vector<Rational> coeffs;
        if (!lift.lift(coeffs)) continue;  // needs more primes
        try {
            Matrix<Poly<RatFun<Rational>>> a, m;
            RatFun<Rational> det;
            unflatten(*shape, coeffs, a, m, det);
            if (!spot_check(a, m, c0)) continue;  // junk from an unstable lift
            out = hermite_finalize<Rational>(std::move(a), std::move(m), det, c0);
            return true;
        } catch (const error& e) {
            if (std::getenv("BRICKWORK_HERMITE_DEBUG"))
                std::fprintf(stderr, "[hermite] lift after %zu primes rejected: %s\n", folded,
                             e.what());
            continue;  // more primes may fix it
        }
    }
    return false;
}

}  // namespace detail

template <class K>
HermiteResult<K> hermite_triangularize(const Matrix<BiPoly<K>>& c0) {
    using Entry = Poly<RatFun<K>>;
    const std::size_t n = c0.rows();
    if (c0.cols() != n) throw error("triangularization expects a square matrix");

    if constexpr (std::is_same_v<K, Rational>) {
        if (n >= 3) {
            HermiteResult<Rational> out;
            if (detail::hermite_by_modular(c0, out)) return out;
        }
    }

    Matrix<Entry> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = c0(i, j).as_x_poly_over_ky();
    Matrix<Entry> a;
    RatFun<K> det_a;
    if (!detail::triangularize_core<RatFun<K>>(m, a, det_a, nullptr))
        throw singular_input_error("matrix has zero determinant");
    return detail::hermite_finalize<K>(std::move(a), std::move(m), det_a, c0);
}

}  // namespace brickwork

#endif
