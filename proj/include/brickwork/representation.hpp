#ifndef BRICKWORK_REPRESENTATION_HPP
#define BRICKWORK_REPRESENTATION_HPP

// Quiver representations of Lambda = kQ/I over a scalar ring S (the ground
// field, or k(x) for the generic fibre).  A representation is a per-vertex
// dimension vector with one matrix per arrow; relations must evaluate to
// zero.

#include <vector>

#include "brickwork/algebra.hpp"
#include "brickwork/matrix.hpp"

namespace brickwork {

template <class S>
struct Representation {
    std::vector<std::size_t> dims;   // indexed by vertex-1
    std::vector<Matrix<S>> arrow_maps;  // aligned with quiver.arrows

    std::size_t dim_at(int vertex) const { return dims[static_cast<std::size_t>(vertex - 1)]; }
    std::size_t total_dim() const {
        std::size_t d = 0;
        for (auto x : dims) d += x;
        return d;
    }
    bool is_zero_module() const { return total_dim() == 0; }
};

template <class S>
void check_shapes(const Quiver& q, const Representation<S>& rep) {
    if (rep.dims.size() != static_cast<std::size_t>(q.num_vertices))
        throw malformed_spec_error("dimension vector length mismatch");
    if (rep.arrow_maps.size() != q.arrows.size())
        throw malformed_spec_error("arrow map count mismatch");
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        auto& m = rep.arrow_maps[i];
        if (m.rows() != rep.dim_at(q.arrows[i].target) ||
            m.cols() != rep.dim_at(q.arrows[i].source))
            throw malformed_spec_error("arrow map shape mismatch: " + q.arrows[i].name);
    }
}

// matrix of a path acting on the representation (application order).
template <class S>
Matrix<S> path_matrix(const Quiver& q, const Representation<S>& rep, const QuiverPath& p) {
    Matrix<S> acc = Matrix<S>::identity(rep.dim_at(p.source));
    for (int ai : p.arrows) acc = rep.arrow_maps[static_cast<std::size_t>(ai)] * acc;
    return acc;
}

template <class K, class S>
bool relations_hold(const AlgebraBasis<K>& alg, const std::vector<Relation<K>>& relations,
                    const Representation<S>& rep) {
    for (auto& rel : relations) {
        Matrix<S> acc(rep.dim_at(rel.front().path.target), rep.dim_at(rel.front().path.source));
        for (auto& term : rel)
            acc = acc + path_matrix(alg.quiver(), rep, term.path) * scalar_cast<S>(term.coef);
        if (!acc.is_zero()) return false;
    }
    // paths of length >= m act as zero
    std::vector<QuiverPath> frontier;
    for (int v = 1; v <= alg.quiver().num_vertices; ++v) frontier.push_back(QuiverPath{v, v, {}});
    for (unsigned len = 0; len < alg.nilpotency_bound(); ++len) {
        std::vector<QuiverPath> next;
        for (auto& p : frontier)
            for (std::size_t ai = 0; ai < alg.quiver().arrows.size(); ++ai) {
                if (alg.quiver().arrows[ai].source != p.target) continue;
                QuiverPath ext = p;
                ext.arrows.push_back(static_cast<int>(ai));
                ext.target = alg.quiver().arrows[ai].target;
                next.push_back(ext);
            }
        frontier = std::move(next);
    }
    for (auto& p : frontier)
        if (!path_matrix(alg.quiver(), rep, p).is_zero()) return false;
    return true;
}

// A morphism of representations: one matrix per vertex commuting with every
// arrow action.
template <class S>
struct RepMorphism {
    std::vector<Matrix<S>> vertex_maps;  // indexed by vertex-1

    bool is_zero() const {
        for (auto& m : vertex_maps)
            if (!m.is_zero()) return false;
        return true;
    }
};

template <class S>
bool commutes(const Quiver& q, const Representation<S>& x, const Representation<S>& y,
              const RepMorphism<S>& f) {
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        auto& a = q.arrows[ai];
        auto lhs = f.vertex_maps[a.target - 1] * x.arrow_maps[ai];
        auto rhs = y.arrow_maps[ai] * f.vertex_maps[a.source - 1];
        if (lhs != rhs) return false;
    }
    return true;
}

// The indecomposable projective Lambda e_t as a representation: the space at
// vertex v has the basis classes of e_v Lambda e_t, arrows act by left
// multiplication.
template <class K, class S = K>
Representation<S> projective_module(const AlgebraBasis<K>& alg, int t) {
    const Quiver& q = alg.quiver();
    if (t < 1 || t > q.num_vertices) throw malformed_spec_error("vertex out of range");
    Representation<S> rep;
    rep.dims.resize(static_cast<std::size_t>(q.num_vertices));
    std::vector<std::vector<std::size_t>> vertex_basis(q.num_vertices);
    for (int v = 1; v <= q.num_vertices; ++v) {
        vertex_basis[v - 1] = alg.block(v, t);
        rep.dims[v - 1] = vertex_basis[v - 1].size();
    }
    rep.arrow_maps.resize(q.arrows.size());
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        auto& a = q.arrows[ai];
        const auto& src = vertex_basis[a.source - 1];
        const auto& tgt = vertex_basis[a.target - 1];
        Matrix<S> m(tgt.size(), src.size());
        AlgebraElement<S> alpha = alg.template arrow_element<S>(a.name);
        for (std::size_t j = 0; j < src.size(); ++j) {
            AlgebraElement<S> img = alg.mul(alpha, alg.template basis_element<S>(src[j]));
            for (auto& [k, c] : img.coords) {
                auto pos = std::find(tgt.begin(), tgt.end(), k);
                m(static_cast<std::size_t>(pos - tgt.begin()), j) = c;
            }
        }
        rep.arrow_maps[ai] = std::move(m);
    }
    return rep;
}

// Per-vertex matrices of right multiplication rho_a : Lambda e_{tgt(a)} ->
// Lambda e_{src(a)} by an element a of e_{tgt} Lambda e_{src}; a morphism of
// left modules.
template <class K, class S>
RepMorphism<S> right_multiplication(const AlgebraBasis<K>& alg, const AlgebraElement<S>& a) {
    auto [blk_target, blk_source] = alg.element_block(a);  // a in e_s Lambda e_t
    int from = blk_target;                                 // acts on Lambda e_{target of a}
    int to = blk_source;                                   // lands in Lambda e_{source of a}
    const Quiver& q = alg.quiver();
    RepMorphism<S> f;
    f.vertex_maps.resize(static_cast<std::size_t>(q.num_vertices));
    for (int v = 1; v <= q.num_vertices; ++v) {
        auto dom = alg.block(v, from);
        auto cod = alg.block(v, to);
        Matrix<S> m(cod.size(), dom.size());
        for (std::size_t j = 0; j < dom.size(); ++j) {
            AlgebraElement<S> img = alg.mul(alg.template basis_element<S>(dom[j]), a);
            for (auto& [k, c] : img.coords) {
                auto pos = std::find(cod.begin(), cod.end(), k);
                m(static_cast<std::size_t>(pos - cod.begin()), j) = c;
            }
        }
        f.vertex_maps[static_cast<std::size_t>(v - 1)] = std::move(m);
    }
    return f;
}

// simple module at a vertex
template <class K, class S = K>
Representation<S> simple_module(const AlgebraBasis<K>& alg, int t) {
    const Quiver& q = alg.quiver();
    Representation<S> rep;
    rep.dims.assign(static_cast<std::size_t>(q.num_vertices), 0);
    rep.dims[static_cast<std::size_t>(t - 1)] = 1;
    rep.arrow_maps.resize(q.arrows.size());
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        auto& a = q.arrows[ai];
        rep.arrow_maps[ai] = Matrix<S>(rep.dim_at(a.target), rep.dim_at(a.source));
    }
    return rep;
}

template <class S>
Representation<S> direct_sum(const Quiver& q, const Representation<S>& x,
                             const Representation<S>& y) {
    Representation<S> r;
    r.dims.resize(x.dims.size());
    for (std::size_t i = 0; i < x.dims.size(); ++i) r.dims[i] = x.dims[i] + y.dims[i];
    r.arrow_maps.resize(q.arrows.size());
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        auto& a = q.arrows[ai];
        Matrix<S> m(r.dim_at(a.target), r.dim_at(a.source));
        auto& mx = x.arrow_maps[ai];
        auto& my = y.arrow_maps[ai];
        for (std::size_t i = 0; i < mx.rows(); ++i)
            for (std::size_t j = 0; j < mx.cols(); ++j) m(i, j) = mx(i, j);
        for (std::size_t i = 0; i < my.rows(); ++i)
            for (std::size_t j = 0; j < my.cols(); ++j) m(mx.rows() + i, mx.cols() + j) = my(i, j);
        r.arrow_maps[ai] = std::move(m);
    }
    return r;
}

}  // namespace brickwork

#endif
