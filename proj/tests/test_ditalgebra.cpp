#include "doctest.h"

#include "brickwork/ditalgebra.hpp"
#include "test_util.hpp"

using namespace brickwork;

namespace {

const FieldSpec Q = FieldSpec::rationals();
using Dit = MinDitData<Rational>;
using Elt = BasisElt<Rational>;

BiPoly<Rational> bp(const std::string& s) { return parse_bipoly<Rational>(s, Q); }

// single designated non-marked point z, one basis symbol in each of
// B_{f0,f0}, B_{fz,f0}, B_{f0,fz}; delta(v) = c * (v2 (x) v1)
Dit one_cell_fixture(const BiPoly<Rational>& c) {
    Dit d;
    d.points = {"z"};
    d.symbols = {{"v", 0, 0}, {"v1", 1, 0}, {"v2", 0, 1}};
    d.delta.resize(3);
    d.delta[0].push_back({2, 1, c});
    d.z_designated = {1};
    return load_ditalgebra(d);
}

// two marked-block symbols against the same pair column:
// delta(va) = ca * tau, delta(vb) = cb * tau
Dit two_generator_fixture(const BiPoly<Rational>& ca, const BiPoly<Rational>& cb) {
    Dit d;
    d.points = {"z"};
    d.symbols = {{"va", 0, 0}, {"vb", 0, 0}, {"v1", 1, 0}, {"v2", 0, 1}};
    d.delta.resize(4);
    d.delta[0].push_back({3, 2, ca});
    d.delta[1].push_back({3, 2, cb});
    d.z_designated = {1};
    return load_ditalgebra(d);
}

// c0 = 2 with two pair columns; coefficient matrix [[c11, c12], [0, c22]]
Dit two_by_two_fixture(const BiPoly<Rational>& c11, const BiPoly<Rational>& c12,
                       const BiPoly<Rational>& c21, const BiPoly<Rational>& c22) {
    Dit d;
    d.points = {"z"};
    d.symbols = {{"va", 0, 0}, {"vb", 0, 0}, {"a1", 1, 0}, {"a2", 1, 0}, {"b1", 0, 1}};
    d.delta.resize(5);
    d.delta[0].push_back({4, 2, c11});
    d.delta[0].push_back({4, 3, c12});
    d.delta[1].push_back({4, 2, c21});
    d.delta[1].push_back({4, 3, c22});
    d.z_designated = {1};
    return load_ditalgebra(d);
}

// random fixture with supplied triples: designated z point(s) and one gamma
Dit random_fixture(bwtest::Rng& rng, std::size_t max_c0 = 3) {
    Dit d;
    d.points = {"z1", "lv", "rv"};
    d.z_designated = {1};
    std::size_t c0 = static_cast<std::size_t>(rng.range(1, static_cast<long>(max_c0)));
    for (std::size_t i = 0; i < c0; ++i) d.symbols.push_back({"v" + std::to_string(i), 0, 0});
    int a1 = static_cast<int>(d.symbols.size());
    d.symbols.push_back({"a1", 1, 0});
    int a2 = -1;
    if (rng.chance(50)) {
        a2 = static_cast<int>(d.symbols.size());
        d.symbols.push_back({"a2", 1, 0});
    }
    int b1 = static_cast<int>(d.symbols.size());
    d.symbols.push_back({"b1", 0, 1});
    int u = static_cast<int>(d.symbols.size());
    d.symbols.push_back({"u", 3, 2});  // from lv to rv
    int ga = static_cast<int>(d.symbols.size());
    d.symbols.push_back({"ga", 2, 0});  // B_{f_l, f0}
    int gb = static_cast<int>(d.symbols.size());
    d.symbols.push_back({"gb", 0, 3});  // B_{f0, f_r}
    d.gammas.push_back({2, 3, u});

    d.delta.resize(d.symbols.size());
    d.triples.resize(c0);
    d.triples_supplied = true;
    for (std::size_t i = 0; i < c0; ++i) {
        for (int w1 : a2 >= 0 ? std::vector<int>{a1, a2} : std::vector<int>{a1}) {
            auto c = bwtest::rand_bipoly<Rational>(rng, 2, 2, 55);
            if (!c.is_zero()) d.delta[i].push_back({b1, w1, c});
        }
        auto c = bwtest::rand_bipoly<Rational>(rng, 2, 2, 45);
        if (!c.is_zero()) d.triples[i].push_back({gb, u, ga, c});
    }
    return load_ditalgebra(d);
}

}  // namespace

TEST_CASE("loading and validation") {
    SUBCASE("smallest instances load") {
        auto d1 = one_cell_fixture(bp("x - y"));
        CHECK(d1.c0() == 1);
        CHECK(coefficient_matrices(d1).columns.size() == 1);
        auto d2 = one_cell_fixture(bp("x*y"));
        CHECK(d2.c0() == 1);
    }
    SUBCASE("u element outside its block is rejected") {
        Dit d;
        d.points = {"l", "r"};
        d.symbols = {{"v", 0, 0}, {"u", 1, 1}};  // not in B_{f_r, f_l}
        d.delta.resize(2);
        d.gammas.push_back({1, 2, 1});
        CHECK_THROWS_AS(load_ditalgebra(d), malformed_spec_error);
    }
    SUBCASE("two marked legs are rejected") {
        Dit d;
        d.points = {"z"};
        d.symbols = {{"v", 0, 0}, {"w", 0, 0}};
        d.delta.resize(2);
        d.delta[0].push_back({1, 1, bp("1")});  // w (x) w with both legs marked
        CHECK_THROWS_AS(load_ditalgebra(d), malformed_spec_error);
    }
    SUBCASE("bimodule action constraints on coefficients") {
        Dit d;
        d.points = {"z", "w"};
        d.symbols = {{"v1", 1, 0}, {"m", 1, 2}, {"a", 2, 0}};
        d.delta.resize(3);
        d.delta[0].push_back({1, 2, bp("x")});  // x-action on a non-marked left end
        CHECK_THROWS_AS(load_ditalgebra(d), malformed_spec_error);
    }
}

TEST_CASE("triple derivation and coassociativity") {
    auto make = [&](const char* cb) {
        Dit d;
        d.points = {"z", "w"};
        // v in B00; v3 in B_{f0,fz}; w_mid in B_{fz,fw}; v1 in B_{fw,f0};
        // w1 in B_{fz,f0}; w2 in B_{f0,fw}
        d.symbols = {{"v", 0, 0},  {"v3", 0, 1}, {"wm", 1, 2},
                     {"v1", 2, 0}, {"w1", 1, 0}, {"w2", 0, 2}};
        d.delta.resize(6);
        d.delta[0].push_back({1, 4, bp("x")});   // x * (v3 (x) w1)
        d.delta[0].push_back({5, 3, bp(cb)});    // cb * (w2 (x) v1)
        d.delta[4].push_back({2, 3, bp("y")});   // delta(w1) = y * (wm (x) v1)
        d.delta[5].push_back({1, 2, bp("x")});   // delta(w2) = x * (v3 (x) wm)
        d.z_designated = {1};
        return d;
    };
    SUBCASE("consistent data derives the product coefficient") {
        auto d = load_ditalgebra(make("y"));
        CHECK(d.triple_coeff(0, 1, 2, 3) == bp("x*y"));
        CHECK(d.warnings.empty());
    }
    SUBCASE("inconsistent data is a hard error when triples are derived") {
        CHECK_THROWS_AS(load_ditalgebra(make("1")), malformed_spec_error);
    }
    SUBCASE("supplied triples downgrade the mismatch to a warning") {
        auto d = make("1");
        d.triples_supplied = true;
        d.triples.resize(1);
        d.triples[0].push_back({1, 2, 3, bp("x*y + 1")});
        auto loaded = load_ditalgebra(d);
        CHECK_FALSE(loaded.warnings.empty());
        CHECK(loaded.triple_coeff(0, 1, 2, 3) == bp("x*y + 1"));
    }
}

TEST_CASE("composition coefficients") {
    SUBCASE("the diagonal kills x - y") {
        auto d = one_cell_fixture(bp("x - y"));
        auto col = coefficient_matrices(d).columns[0];
        for (long l : {0L, 1L, 2L, -3L})
            CHECK(composition_coefficients(d, col, Rational(l))[0].is_zero());
        CHECK(composition_coefficients_x(d, col)[0].is_zero());
    }
    SUBCASE("evaluation and substitution agree") {
        auto d = one_cell_fixture(bp("x*y"));
        auto col = coefficient_matrices(d).columns[0];
        CHECK(composition_coefficients(d, col, Rational(2))[0] == Rational(4));
        CHECK(composition_coefficients_x(d, col)[0] == parse_ratfun<Rational>("x^2", Q));
        // the x-form evaluated at lambda is the lambda-form
        for (long l = -10; l <= 9; ++l) {
            auto xform = composition_coefficients_x(d, col)[0];
            CHECK(xform(Rational(l)) == composition_coefficients(d, col, Rational(l))[0]);
        }
    }
    SUBCASE("points outside D(h) are rejected") {
        auto d = one_cell_fixture(bp("x*y"));
        d.h = Poly<Rational>::variable();
        auto col = coefficient_matrices(d).columns[0];
        CHECK_THROWS_AS(composition_coefficients(d, col, Rational(0)), outside_dh_error);
    }
}

TEST_CASE("coefficient matrices") {
    SUBCASE("orientations") {
        auto d = two_generator_fixture(bp("1"), bp("x"));
        auto cm = coefficient_matrices(d);
        CHECK(cm.c_xy.rows() == 2);   // c0 rows
        CHECK(cm.c_xy.cols() == 1);   // c1 columns
        CHECK(cm.c_x.rows() == 1);    // equation orientation: c1 x c0
        CHECK(cm.c_x.cols() == 2);
        CHECK(cm.c_x(0, 0) == parse_ratfun<Rational>("1", Q));
        CHECK(cm.c_x(0, 1) == parse_ratfun<Rational>("x", Q));
        CHECK(mat_rank(cm.c_x) == 1);  // rank 1 < c0 = 2
    }
    SUBCASE("diagonal substitution and evaluation") {
        auto d = one_cell_fixture(bp("x*y"));
        auto cm = coefficient_matrices(d);
        CHECK(cm.c_x(0, 0) == parse_ratfun<Rational>("x^2", Q));
        CHECK(cm.evaluate(Rational(2))(0, 0) == Rational(4));
    }
}

TEST_CASE("brick equation systems") {
    SUBCASE("solvable instance") {
        auto d = one_cell_fixture(bp("x*y"));
        auto dl = solve_brick_equations(d, Rational(2));
        REQUIRE(dl.has_value());
        CHECK((*dl)(0, 0) == Rational(1, 4));
        auto dx = solve_brick_equations_symbolic(d);
        REQUIRE(dx.has_value());
        CHECK((*dx)(0, 0) == parse_ratfun<Rational>("1/x^2", Q));
    }
    SUBCASE("unsolvable instance") {
        auto d = one_cell_fixture(bp("x - y"));
        for (long l : {0L, 1L, 5L}) CHECK_FALSE(solve_brick_equations(d, Rational(l)).has_value());
        CHECK_FALSE(solve_brick_equations_symbolic(d).has_value());
    }
}

TEST_CASE("rank criterion") {
    SUBCASE("positive with finitely many exceptional points") {
        auto d = one_cell_fixture(bp("x*y"));
        auto report = rank_criterion(d, 20, Q);
        CHECK(report.exact_rank == 1);
        CHECK(report.generic_brick_flag);
        for (auto& l : report.exceptional) CHECK(l == Rational(0));
        CHECK(report.exceptional.size() <= 1);
    }
    SUBCASE("negative") {
        auto d = one_cell_fixture(bp("x - y"));
        auto report = rank_criterion(d, 20, Q);
        CHECK(report.exact_rank == 0);
        CHECK_FALSE(report.generic_brick_flag);
    }
    SUBCASE("rank deficit") {
        auto d = two_generator_fixture(bp("1"), bp("x"));
        auto report = rank_criterion(d, 10, Q);
        CHECK(report.exact_rank == 1);
        CHECK(report.c0 == 2);
        CHECK_FALSE(report.generic_brick_flag);
    }
}

TEST_CASE("equation chain on random fixtures") {
    // E(x) solvable <=> rank C(x) = c0 <=> E(lambda) solvable away from the
    // listed exceptional points
    bwtest::Rng rng(53);
    int done = 0;
    while (done < 50) {
        Dit d = random_fixture(rng);
        auto report = rank_criterion(d, 12, Q);
        bool symbolic = solve_brick_equations_symbolic(d).has_value();
        CHECK(symbolic == report.generic_brick_flag);
        for (std::size_t i = 0; i < report.sampled.size(); ++i) {
            bool point_solvable = solve_brick_equations(d, report.sampled[i]).has_value();
            bool exceptional =
                std::find(report.exceptional.begin(), report.exceptional.end(),
                          report.sampled[i]) != report.exceptional.end();
            if (report.generic_brick_flag)
                CHECK(point_solvable == !exceptional);
            else
                CHECK_FALSE(point_solvable);
        }
        ++done;
    }
}

TEST_CASE("normality") {
    SUBCASE("literal checks") {
        Matrix<BiPoly<Rational>> one(1, 1);
        one(0, 0) = bp("x*y");
        CHECK(check_normal(one));
        Matrix<BiPoly<Rational>> wide(2, 3);
        wide(0, 0) = bp("1");
        wide(1, 1) = bp("x");
        wide(0, 2) = bp("y");
        CHECK(check_normal(wide));
        Matrix<BiPoly<Rational>> swapped(2, 2);
        swapped(0, 1) = bp("1");
        swapped(1, 0) = bp("1");
        CHECK_FALSE(check_normal(swapped));
    }
    SUBCASE("already-normal data is returned untouched") {
        auto d = one_cell_fixture(bp("x*y"));
        auto res = normalize_by_localization(d);
        CHECK(res.transform == Matrix<Poly<RatFun<Rational>>>::identity(1));
        CHECK(res.localized_at.is_one());
        CHECK(res.column_permutation == std::vector<std::size_t>{0});
        CHECK(is_normal(res.data));
    }
    SUBCASE("a swap suffices for the antidiagonal pattern") {
        auto d = two_by_two_fixture(bp("0"), bp("1"), bp("1"), bp("0"));
        auto res = normalize_by_localization(d);
        CHECK(is_normal(res.data));
        CHECK(res.localized_at.is_one());
        // realized either by permuting the columns or by swapping the rows
        Matrix<Poly<RatFun<Rational>>> swap(2, 2);
        swap(0, 1) = Poly<RatFun<Rational>>(RatFun<Rational>(1));
        swap(1, 0) = Poly<RatFun<Rational>>(RatFun<Rational>(1));
        bool by_columns = res.column_permutation == std::vector<std::size_t>{1, 0};
        bool by_rows = res.transform == swap;
        CHECK(by_columns != by_rows);
    }
    SUBCASE("rank-deficient input is rejected") {
        auto d = two_generator_fixture(bp("1"), bp("x"));
        CHECK_THROWS_AS(normalize_by_localization(d), rank_deficient_error);
    }
    SUBCASE("random rank-c0 fixtures normalize") {
        bwtest::Rng rng(59);
        int done = 0;
        while (done < 50) {
            Dit d = random_fixture(rng);
            auto cm = coefficient_matrices(d);
            bool full_rank = true;
            try {
                full_rank = mat_rank(cm.c_x) == cm.rows.size();
            } catch (...) {
                full_rank = false;
            }
            if (!full_rank) continue;
            auto res = normalize_by_localization(d);
            CHECK(is_normal(res.data));
            // transform determinant is a unit of k(y): verified inside the
            // triangularization; double-check x-degree here
            auto det = detail::cofactor_det(res.transform);
            CHECK(det.degree() == 0);
            CHECK_FALSE(det.is_zero());
            ++done;
        }
    }
}

TEST_CASE("factorization of generic radical endomorphisms") {
    SUBCASE("single-row fixture with the identity target") {
        auto d = one_cell_fixture(bp("x*y"));
        std::vector<Elt> demands{Elt::monomial(0)};
        auto expr =
            factor_radical_generic(d, 0, LazyLinearMap<Rational>::identity(), demands, Q);
        REQUIRE(expr.terms.size() == 1);
        CHECK_FALSE(expr.terms[0].column.is_triple);
    }
    SUBCASE("zero target gives the empty expression") {
        auto d = one_cell_fixture(bp("x*y"));
        auto expr = factor_radical_generic(d, 0, LazyLinearMap<Rational>::zero(),
                                           {Elt::monomial(0)}, Q);
        CHECK(expr.terms.empty());
    }
    SUBCASE("non-normal data is rejected") {
        auto d = two_by_two_fixture(bp("0"), bp("1"), bp("1"), bp("0"));
        CHECK_THROWS_AS(
            factor_radical_generic(d, 0, LazyLinearMap<Rational>::identity(),
                                   {Elt::monomial(0)}, Q),
            not_normal_error);
    }
    SUBCASE("the second row needs a lower-row correction") {
        auto d = two_by_two_fixture(bp("x + 1"), bp("x*y"), bp("0"), bp("y + 2"));
        REQUIRE(is_normal(d));
        std::vector<Elt> demands{Elt::monomial(0), Elt::pole_at(Rational(1), 1)};
        auto expr =
            factor_radical_generic(d, 1, LazyLinearMap<Rational>::identity(), demands, Q);
        CHECK(expr.terms.size() == 2);  // the row term plus one correction
    }
    SUBCASE("factorization through the designated morphism") {
        // triple column on the diagonal
        Dit d;
        d.points = {"z", "lv", "rv"};
        d.symbols = {{"v", 0, 0}, {"u", 2, 1}, {"ga", 1, 0}, {"gb", 0, 2}};
        d.delta.resize(4);
        d.gammas.push_back({1, 2, 1});
        d.triples_supplied = true;
        d.triples.resize(1);
        d.triples[0].push_back({3, 1, 2, bp("x*y + 2")});
        auto loaded = load_ditalgebra(d);
        REQUIRE(is_normal(loaded));
        auto expr = factor_radical_generic(loaded, 0, LazyLinearMap<Rational>::identity(),
                                           {Elt::monomial(1)}, Q);
        REQUIRE(expr.terms.size() == 1);
        CHECK(expr.terms[0].column.is_triple);
    }
    SUBCASE("randomized normalized fixtures recompose") {
        bwtest::Rng rng(61);
        std::uint64_t seed = 2000;
        int done = 0;
        while (done < 12) {
            Dit d = random_fixture(rng, 2);
            auto cm = coefficient_matrices(d);
            if (mat_rank(cm.c_x) != cm.rows.size()) continue;
            auto res = normalize_by_localization(d);
            std::vector<Elt> demands{Elt::monomial(0),
                                     Elt::pole_at(Rational(rng.range(1, 3)), 1)};
            LazyLinearMap<Rational> q(
                [seed](const Elt& z) {
                    return RatFun<Rational>(Rational(static_cast<long>(
                        (seed + z.degree * 7 + static_cast<unsigned>(z.kind)) % 11)));
                });
            std::size_t row = static_cast<std::size_t>(
                rng.range(0, static_cast<long>(res.data.c0()) - 1));
            // factor_radical_generic verifies the recomposition internally
            CHECK_NOTHROW(factor_radical_generic(res.data, row, q, demands, Q));
            ++done;
            ++seed;
        }
    }
}

TEST_CASE("hom dimensions match block sizes") {
    // the radical morphism vectors are indexed by the matching block; the
    // indexing is consistent with the stored symbols
    auto d = two_by_two_fixture(bp("1"), bp("x"), bp("0"), bp("y"));
    CHECK(d.block(0, 0).size() == 2);
    CHECK(d.block(1, 0).size() == 2);
    CHECK(d.block(0, 1).size() == 1);
    std::size_t total = 0;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) total += d.block(a, b).size();
    CHECK(total == d.symbols.size());
}
