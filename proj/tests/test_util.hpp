#ifndef BRICKWORK_TEST_UTIL_HPP
#define BRICKWORK_TEST_UTIL_HPP

// Deterministic generators for the randomized suites.  SplitMix64 keeps the
// streams identical across platforms and standard library versions.

#include <cstdint>
#include <vector>

#include "brickwork/bipoly.hpp"
#include "brickwork/matrix.hpp"
#include "brickwork/poly.hpp"
#include "brickwork/ratfun.hpp"
#include "brickwork/scalars.hpp"

namespace bwtest {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(unsigned percent) { return next() % 100 < percent; }

  private:
    std::uint64_t state_;
};

inline brickwork::Rational rand_rational(Rng& rng, long bound = 5) {
    return brickwork::Rational(rng.range(-bound, bound));
}

template <class K>
brickwork::Poly<K> rand_poly(Rng& rng, int maxdeg, long bound = 3) {
    std::vector<K> cs;
    int d = static_cast<int>(rng.range(0, maxdeg));
    for (int i = 0; i <= d; ++i) cs.push_back(K(rng.range(-bound, bound)));
    return brickwork::Poly<K>(cs);
}

template <class K>
brickwork::BiPoly<K> rand_bipoly(Rng& rng, int maxdeg_each, long bound = 3, unsigned density = 60) {
    brickwork::BiPoly<K> p;
    for (int i = 0; i <= maxdeg_each; ++i)
        for (int j = 0; j <= maxdeg_each; ++j)
            if (rng.chance(density)) p.add_term(i, j, K(rng.range(-bound, bound)));
    return p;
}

template <class K>
brickwork::RatFun<K> rand_ratfun(Rng& rng, int maxdeg = 2, long bound = 3) {
    brickwork::Poly<K> den;
    while (den.is_zero()) den = rand_poly<K>(rng, maxdeg, bound);
    return brickwork::RatFun<K>(rand_poly<K>(rng, maxdeg, bound), den);
}

template <class S, class Gen>
brickwork::Matrix<S> rand_matrix(Rng& rng, std::size_t rows, std::size_t cols, Gen gen) {
    brickwork::Matrix<S> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = gen(rng);
    return m;
}

}  // namespace bwtest

#endif
