#include "doctest.h"

#include "brickwork/hermite.hpp"
#include "brickwork/matrix.hpp"
#include "brickwork/roots.hpp"
#include "brickwork/scalar_io.hpp"
#include "test_util.hpp"

using namespace brickwork;

namespace {
const FieldSpec Q = FieldSpec::rationals();

Matrix<RatFun<Rational>> rmat(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    Matrix<RatFun<Rational>> m(r, c);
    std::size_t i = 0;
    for (auto& row : rows) {
        std::size_t j = 0;
        for (auto* s : row) m(i, j++) = parse_ratfun<Rational>(s, Q);
        ++i;
    }
    return m;
}

Matrix<BiPoly<Rational>> bmat(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    Matrix<BiPoly<Rational>> m(r, c);
    std::size_t i = 0;
    for (auto& row : rows) {
        std::size_t j = 0;
        for (auto* s : row) m(i, j++) = parse_bipoly<Rational>(s, Q);
        ++i;
    }
    return m;
}

// division-free cofactor determinant; independent oracle for small matrices
BiPoly<Rational> det_cofactor(const Matrix<BiPoly<Rational>>& m) {
    std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    BiPoly<Rational> acc;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<BiPoly<Rational>> minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        BiPoly<Rational> term = m(0, j) * det_cofactor(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}
}  // namespace

TEST_CASE("exact rank over k(x)") {
    CHECK(mat_rank(rmat({{"x"}})) == 1);
    CHECK(mat_rank(rmat({{"x", "1"}, {"x^2", "x"}})) == 1);  // det = 0
    CHECK(mat_rank(Matrix<RatFun<Rational>>(3, 4)) == 0);
    CHECK(mat_rank(rmat({{"1/x", "1"}, {"1", "x"}})) == 1);  // denominators cleared
}

TEST_CASE("rank agrees with transpose and minor oracle") {
    bwtest::Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = static_cast<std::size_t>(rng.range(1, 5));
        std::size_t c = static_cast<std::size_t>(rng.range(1, 5));
        auto m = bwtest::rand_matrix<Rational>(
            rng, r, c, [](bwtest::Rng& g) { return bwtest::rand_rational(g); });
        std::size_t rk = mat_rank(m);
        CHECK(rk == mat_rank(m.transpose()));
        CHECK(rk == rank_by_minors(m));
        CHECK(rk == rank_field(m));
    }
}

TEST_CASE("left inverse") {
    SUBCASE("identity") {
        auto i2 = Matrix<RatFun<Rational>>::identity(2);
        auto d = solve_left_inverse(i2);
        REQUIRE(d.has_value());
        CHECK(*d == i2);
    }
    SUBCASE("2x1 column over k(x)") {
        auto c = rmat({{"x"}, {"1"}});
        auto d = solve_left_inverse(c);
        REQUIRE(d.has_value());
        CHECK((*d * c) == Matrix<RatFun<Rational>>::identity(1));
    }
    SUBCASE("wide matrix cannot have full column rank") {
        auto c = rmat({{"x", "x^2"}});
        CHECK_FALSE(solve_left_inverse(c).has_value());
    }
    SUBCASE("rank-deficient tall matrix") {
        auto c = rmat({{"x", "x^2"}, {"1", "x"}, {"0", "0"}});
        CHECK_FALSE(solve_left_inverse(c).has_value());
    }
}

TEST_CASE("hermite triangularization over k(y)[x]") {
    SUBCASE("permutation") {
        auto res = hermite_triangularize(bmat({{"0", "1"}, {"1", "0"}}));
        CHECK(res.det == RatFun<Rational>(Rational(-1)));
        CHECK(res.denominator_support.is_one());
        CHECK(res.transform(0, 0).is_zero());
        CHECK(res.transform(0, 1) == Poly<RatFun<Rational>>(RatFun<Rational>(1)));
    }
    SUBCASE("euclidean row reduction") {
        auto res = hermite_triangularize(bmat({{"x", "1"}, {"1", "0"}}));
        CHECK(res.det == RatFun<Rational>(Rational(-1)));
        CHECK(res.denominator_support.is_one());
        // A*C0 is upper triangular with monic diagonal; here it is I_2
        CHECK(res.triangular == Matrix<Poly<RatFun<Rational>>>::identity(2));
    }
    SUBCASE("localization appears") {
        auto res = hermite_triangularize(bmat({{"y*x", "0"}, {"0", "1"}}));
        CHECK(res.det == RatFun<Rational>(parse_poly<Rational>("1", Q), parse_poly<Rational>("x", Q)));
        CHECK(res.denominator_support == parse_poly<Rational>("x", Q));  // g(y) = y
        CHECK(res.triangular(0, 0) == Poly<RatFun<Rational>>::variable());
    }
    SUBCASE("singular input rejected") {
        CHECK_THROWS_AS(hermite_triangularize(bmat({{"x", "x"}, {"x", "x"}})),
                        singular_input_error);
    }
}

TEST_CASE("hermite triangularization on random nonsingular matrices") {
    bwtest::Rng rng(37);
    int done = 0;
    while (done < 50) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
        auto c0 = bwtest::rand_matrix<BiPoly<Rational>>(
            rng, n, n, [](bwtest::Rng& g) { return bwtest::rand_bipoly<Rational>(g, 2, 2); });
        if (det_cofactor(c0).is_zero()) continue;  // skip singular draws
        auto res = hermite_triangularize(c0);
        CHECK_FALSE(res.det.is_zero());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK_FALSE(res.triangular(i, i).is_zero());
            for (std::size_t j = 0; j < i; ++j) CHECK(res.triangular(i, j).is_zero());
        }
        ++done;
    }
}

TEST_CASE("sampling rank law over k(x)") {
    // A(x) invertible iff A(lambda) invertible away from finitely many points,
    // every failure being a root of the determinant.
    bwtest::Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
        auto m = bwtest::rand_matrix<RatFun<Rational>>(rng, n, n, [&](bwtest::Rng& g) {
            return g.chance(75) ? RatFun<Rational>(bwtest::rand_poly<Rational>(g, 1))
                                : bwtest::rand_ratfun<Rational>(g, 1);
        });
        bool invertible = mat_rank(m) == n;

        // avoid denominator roots when sampling
        Poly<Rational> dens = Poly<Rational>::one();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dens = lcm(dens, m(i, j).den());
        auto pts = sample_points<Rational>(dens, 20, Q);

        RatFun<Rational> det = determinant(m);
        int agree = 0;
        for (auto& l : pts) {
            auto ml = m.map<Rational>([&](const RatFun<Rational>& e) { return e(l); });
            bool inv_l = mat_rank(ml) == n;
            if (inv_l == invertible) {
                ++agree;
            } else {
                // disagreement must be a root of the determinant
                CHECK(invertible);
                CHECK(det.num()(l).is_zero());
            }
        }
        CHECK(agree >= 18);
    }
}
