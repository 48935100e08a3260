#ifndef BRICKWORK_TEST_FIXTURES_HPP
#define BRICKWORK_TEST_FIXTURES_HPP

// Shared desk-scale fixtures: the Kronecker algebra, the dual numbers, and
// the radical-square-zero algebra on 1 --g--> 2 ==a,b==> 3.

#include "brickwork/algebra.hpp"
#include "brickwork/representation.hpp"

namespace bwtest {

using brickwork::AlgebraBasis;
using brickwork::AlgebraPresentation;
using brickwork::Matrix;
using brickwork::Quiver;
using brickwork::Rational;
using brickwork::Representation;

inline AlgebraPresentation<Rational> kronecker_presentation() {
    AlgebraPresentation<Rational> p;
    p.quiver.num_vertices = 2;
    p.quiver.arrows = {{"a", 1, 2}, {"b", 1, 2}};
    p.nilpotency_bound = 2;
    return p;
}

inline AlgebraBasis<Rational> kronecker() {
    return AlgebraBasis<Rational>::build(kronecker_presentation());
}

inline AlgebraPresentation<Rational> dual_numbers_presentation() {
    AlgebraPresentation<Rational> p;
    p.quiver.num_vertices = 1;
    p.quiver.arrows = {{"alpha", 1, 1}};
    brickwork::Relation<Rational> sq;
    sq.push_back({Rational(1), brickwork::QuiverPath{1, 1, {0, 0}}});
    p.relations.push_back(sq);
    p.nilpotency_bound = 2;
    return p;
}

// 1 --g--> 2 with a, b : 2 -> 3 and radical square zero
inline AlgebraPresentation<Rational> example25_presentation() {
    AlgebraPresentation<Rational> p;
    p.quiver.num_vertices = 3;
    p.quiver.arrows = {{"g", 1, 2}, {"a", 2, 3}, {"b", 2, 3}};
    p.nilpotency_bound = 2;  // rad^2 = 0 without explicit relations
    return p;
}

inline AlgebraBasis<Rational> example25() {
    return AlgebraBasis<Rational>::build(example25_presentation());
}

// Kronecker module with a = id, b = lambda (the one-parameter family member)
inline Representation<Rational> kronecker_point_module(const Rational& lambda) {
    Representation<Rational> rep;
    rep.dims = {1, 1};
    Matrix<Rational> ma(1, 1), mb(1, 1);
    ma(0, 0) = Rational(1);
    mb(0, 0) = lambda;
    rep.arrow_maps = {ma, mb};
    return rep;
}

// Jordan-block member: a = I_2, b = [[lambda, 1], [0, lambda]]
inline Representation<Rational> jordan_module(const Rational& lambda) {
    Representation<Rational> rep;
    rep.dims = {2, 2};
    Matrix<Rational> ma = Matrix<Rational>::identity(2);
    Matrix<Rational> mb(2, 2);
    mb(0, 0) = lambda;
    mb(0, 1) = Rational(1);
    mb(1, 1) = lambda;
    rep.arrow_maps = {ma, mb};
    return rep;
}

}  // namespace bwtest

#endif
