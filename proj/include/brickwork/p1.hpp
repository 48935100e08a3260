#ifndef BRICKWORK_P1_HPP
#define BRICKWORK_P1_HPP

// The category of projective presentations: triples (P1, P2, phi) with
// phi(P1) inside rad(Lambda) P2, morphisms being commuting pairs.
//
// Morphisms between direct sums of indecomposable projectives are encoded
// as matrices over Lambda: the component Lambda e_a -> Lambda e_b is right
// multiplication by its value on e_a, an element of e_a Lambda e_b.  With
// this encoding a commuting square is a bilinear identity in structure
// constants, so hom spaces, liftings and factorizations are exact linear
// algebra over the scalar ring (ground field or k(x)).

#include <optional>
#include <vector>

#include "brickwork/homs.hpp"
#include "brickwork/representation.hpp"

namespace brickwork {

struct ProjSum {
    std::vector<int> vertices;  // ⊕ Lambda e_v

    std::size_t size() const { return vertices.size(); }
    bool operator==(const ProjSum& o) const { return vertices == o.vertices; }

    // multiset equality (Krull-Schmidt invariance)
    bool same_summands(const ProjSum& o) const {
        auto a = vertices, b = o.vertices;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
};

// Morphism ⊕_j Lambda e_{src_j} -> ⊕_i Lambda e_{tgt_i}; entry (i, j) lies
// in e_{src_j} Lambda e_{tgt_i}.
template <class K, class S>
class LambdaMatrix {
  public:
    LambdaMatrix() = default;
    LambdaMatrix(const AlgebraBasis<K>* alg, ProjSum source, ProjSum target)
        : alg_(alg), source_(std::move(source)), target_(std::move(target)),
          entries_(source_.size() * target_.size()) {}

    static LambdaMatrix identity(const AlgebraBasis<K>& alg, const ProjSum& p) {
        LambdaMatrix m(&alg, p, p);
        for (std::size_t i = 0; i < p.size(); ++i)
            m.at(i, i) = alg.template idempotent<S>(p.vertices[i]);
        return m;
    }

    const ProjSum& source() const { return source_; }
    const ProjSum& target() const { return target_; }
    const AlgebraBasis<K>& algebra() const { return *alg_; }

    AlgebraElement<S>& at(std::size_t i, std::size_t j) {
        return entries_[i * source_.size() + j];
    }
    const AlgebraElement<S>& at(std::size_t i, std::size_t j) const {
        return entries_[i * source_.size() + j];
    }

    bool is_zero() const {
        for (auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    // every entry lies in the span of length >= 1 classes
    bool entries_in_radical() const {
        for (auto& e : entries_)
            for (auto& [idx, c] : e.coords)
                if (alg_->length_of(idx) == 0) return false;
        return true;
    }

    void validate_blocks() const {
        for (std::size_t i = 0; i < target_.size(); ++i)
            for (std::size_t j = 0; j < source_.size(); ++j)
                for (auto& [idx, c] : at(i, j).coords)
                    if (alg_->target_of(idx) != source_.vertices[j] ||
                        alg_->source_of(idx) != target_.vertices[i])
                        throw wrong_idempotents_error("entry outside its idempotent block");
    }

    LambdaMatrix operator+(const LambdaMatrix& o) const {
        LambdaMatrix r = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] + o.entries_[k];
        return r;
    }
    LambdaMatrix operator-(const LambdaMatrix& o) const {
        LambdaMatrix r = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] - o.entries_[k];
        return r;
    }
    LambdaMatrix operator-() const {
        LambdaMatrix r = *this;
        for (auto& e : r.entries_) e = -e;
        return r;
    }
    LambdaMatrix operator*(const S& c) const {
        LambdaMatrix r = *this;
        for (auto& e : r.entries_) e = e * c;
        return r;
    }
    bool operator==(const LambdaMatrix& o) const {
        return source_ == o.source_ && target_ == o.target_ && entries_ == o.entries_;
    }
    bool operator!=(const LambdaMatrix& o) const { return !(*this == o); }

    // restriction to one source summand (a column) or target summand (a row)
    LambdaMatrix column(std::size_t j) const {
        LambdaMatrix r(alg_, ProjSum{{source_.vertices[j]}}, target_);
        for (std::size_t i = 0; i < target_.size(); ++i) r.at(i, 0) = at(i, j);
        return r;
    }
    LambdaMatrix row(std::size_t i) const {
        LambdaMatrix r(alg_, source_, ProjSum{{target_.vertices[i]}});
        for (std::size_t j = 0; j < source_.size(); ++j) r.at(0, j) = at(i, j);
        return r;
    }

    // canonical injection of summand j and projection onto summand i
    static LambdaMatrix injection(const AlgebraBasis<K>& alg, const ProjSum& p, std::size_t j) {
        LambdaMatrix m(&alg, ProjSum{{p.vertices[j]}}, p);
        m.at(j, 0) = alg.template idempotent<S>(p.vertices[j]);
        return m;
    }
    static LambdaMatrix projection(const AlgebraBasis<K>& alg, const ProjSum& p, std::size_t i) {
        LambdaMatrix m(&alg, p, ProjSum{{p.vertices[i]}});
        m.at(0, i) = alg.template idempotent<S>(p.vertices[i]);
        return m;
    }

  private:
    const AlgebraBasis<K>* alg_ = nullptr;
    ProjSum source_, target_;
    std::vector<AlgebraElement<S>> entries_;
};

// composition second(first(x)); entry (k, j) = sum_i first(i,j) * second(k,i)
template <class K, class S>
LambdaMatrix<K, S> compose(const LambdaMatrix<K, S>& second, const LambdaMatrix<K, S>& first) {
    const AlgebraBasis<K>& alg = first.algebra();
    LambdaMatrix<K, S> out(&alg, first.source(), second.target());
    for (std::size_t k = 0; k < second.target().size(); ++k)
        for (std::size_t j = 0; j < first.source().size(); ++j) {
            AlgebraElement<S> acc;
            for (std::size_t i = 0; i < first.target().size(); ++i)
                acc = acc + alg.mul(first.at(i, j), second.at(k, i));
            out.at(k, j) = acc;
        }
    return out;
}

// projective representation of a direct sum, with the per-vertex basis
// layout used by the matrix conversion
template <class K, class S>
Representation<S> projective_of_sum(const AlgebraBasis<K>& alg, const ProjSum& p) {
    Representation<S> acc;
    const Quiver& q = alg.quiver();
    acc.dims.assign(static_cast<std::size_t>(q.num_vertices), 0);
    acc.arrow_maps.resize(q.arrows.size());
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
        acc.arrow_maps[ai] = Matrix<S>(0, 0);
    bool first = true;
    for (int v : p.vertices) {
        auto next = projective_module<K, S>(alg, v);
        acc = first ? next : direct_sum(q, acc, next);
        first = false;
    }
    if (p.vertices.empty()) {
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
            auto& a = q.arrows[ai];
            acc.arrow_maps[ai] = Matrix<S>(acc.dim_at(a.target), acc.dim_at(a.source));
        }
    }
    return acc;
}

// per-vertex matrices of the right-multiplication morphism the matrix encodes
template <class K, class S>
RepMorphism<S> to_rep_morphism(const LambdaMatrix<K, S>& m) {
    const AlgebraBasis<K>& alg = m.algebra();
    const Quiver& q = alg.quiver();
    RepMorphism<S> f;
    f.vertex_maps.resize(static_cast<std::size_t>(q.num_vertices));
    for (int v = 1; v <= q.num_vertices; ++v) {
        // vertex-v basis: concatenation over summands of block(v, summand)
        std::vector<std::pair<std::size_t, std::size_t>> dom, cod;  // (summand, class idx)
        for (std::size_t j = 0; j < m.source().size(); ++j)
            for (auto idx : alg.block(v, m.source().vertices[j])) dom.emplace_back(j, idx);
        for (std::size_t i = 0; i < m.target().size(); ++i)
            for (auto idx : alg.block(v, m.target().vertices[i])) cod.emplace_back(i, idx);
        Matrix<S> mat(cod.size(), dom.size());
        for (std::size_t c = 0; c < dom.size(); ++c) {
            auto [j, cls] = dom[c];
            for (std::size_t i = 0; i < m.target().size(); ++i) {
                AlgebraElement<S> img =
                    alg.mul(alg.template basis_element<S>(cls), m.at(i, j));
                for (auto& [k, coef] : img.coords) {
                    for (std::size_t r = 0; r < cod.size(); ++r)
                        if (cod[r].first == i && cod[r].second == k) {
                            mat(r, c) += coef;
                            break;
                        }
                }
            }
        }
        f.vertex_maps[static_cast<std::size_t>(v - 1)] = std::move(mat);
    }
    return f;
}

// An object of P(Lambda); the radical condition marks membership in the
// full subcategory P^1(Lambda).
template <class K, class S>
struct P1Object {
    ProjSum p1, p2;
    LambdaMatrix<K, S> phi;

    bool in_radical_subcategory() const { return phi.entries_in_radical(); }
    void require_p1() const {
        if (!in_radical_subcategory())
            throw not_in_radical_error("presentation map image not inside the radical");
    }
};

template <class K, class S>
struct P1Morphism {
    LambdaMatrix<K, S> u1, u2;

    bool is_zero() const { return u1.is_zero() && u2.is_zero(); }

    P1Morphism operator+(const P1Morphism& o) const { return {u1 + o.u1, u2 + o.u2}; }
    P1Morphism operator-(const P1Morphism& o) const { return {u1 - o.u1, u2 - o.u2}; }
    P1Morphism operator*(const S& c) const { return {u1 * c, u2 * c}; }
    bool operator==(const P1Morphism& o) const { return u1 == o.u1 && u2 == o.u2; }
    bool operator!=(const P1Morphism& o) const { return !(*this == o); }
};

template <class K, class S>
bool is_morphism(const P1Object<K, S>& x, const P1Object<K, S>& y, const P1Morphism<K, S>& u) {
    return compose(u.u2, x.phi) == compose(y.phi, u.u1);
}

template <class K, class S>
P1Morphism<K, S> compose(const P1Morphism<K, S>& second, const P1Morphism<K, S>& first) {
    return {compose(second.u1, first.u1), compose(second.u2, first.u2)};
}

template <class K, class S>
P1Morphism<K, S> identity_morphism(const AlgebraBasis<K>& alg, const P1Object<K, S>& x) {
    return {LambdaMatrix<K, S>::identity(alg, x.p1), LambdaMatrix<K, S>::identity(alg, x.p2)};
}

namespace detail {

// Coordinates of a LambdaMatrix over the basis classes of its blocks, and
// the block layout used to linearize hom equations.
template <class K>
struct BlockLayout {
    std::vector<std::vector<std::size_t>> classes;  // per (i, j): basis class indices
    std::vector<std::size_t> offset;                // running offsets, one per (i, j)
    std::size_t total = 0;
    std::size_t rows = 0, cols = 0;

    static BlockLayout make(const AlgebraBasis<K>& alg, const ProjSum& src, const ProjSum& tgt) {
        BlockLayout l;
        l.rows = tgt.size();
        l.cols = src.size();
        l.classes.resize(l.rows * l.cols);
        l.offset.resize(l.rows * l.cols + 1, 0);
        for (std::size_t i = 0; i < l.rows; ++i)
            for (std::size_t j = 0; j < l.cols; ++j) {
                std::size_t cell = i * l.cols + j;
                l.classes[cell] = alg.block(src.vertices[j], tgt.vertices[i]);
                l.offset[cell + 1] = l.offset[cell] + l.classes[cell].size();
            }
        l.total = l.offset.back();
        return l;
    }
};

template <class K, class S>
std::vector<S> coordinates_of(const LambdaMatrix<K, S>& m, const BlockLayout<K>& layout) {
    std::vector<S> v(layout.total, S(0));
    for (std::size_t i = 0; i < layout.rows; ++i)
        for (std::size_t j = 0; j < layout.cols; ++j) {
            std::size_t cell = i * layout.cols + j;
            const auto& classes = layout.classes[cell];
            for (auto& [idx, c] : m.at(i, j).coords) {
                auto pos = std::find(classes.begin(), classes.end(), idx);
                if (pos == classes.end())
                    throw wrong_idempotents_error("entry outside its idempotent block");
                v[layout.offset[cell] + static_cast<std::size_t>(pos - classes.begin())] = c;
            }
        }
    return v;
}

template <class K, class S>
LambdaMatrix<K, S> matrix_from_coordinates(const AlgebraBasis<K>& alg, const ProjSum& src,
                                           const ProjSum& tgt, const BlockLayout<K>& layout,
                                           const std::vector<S>& v) {
    LambdaMatrix<K, S> m(&alg, src, tgt);
    for (std::size_t i = 0; i < layout.rows; ++i)
        for (std::size_t j = 0; j < layout.cols; ++j) {
            std::size_t cell = i * layout.cols + j;
            const auto& classes = layout.classes[cell];
            for (std::size_t k = 0; k < classes.size(); ++k)
                m.at(i, j).add(classes[k], v[layout.offset[cell] + k]);
        }
    return m;
}

// rows of the linear map  U |-> compose(post, U)  (or compose(U, pre)) in
// block coordinates, stacked into `sys` starting at column col0
template <class K, class S>
void add_left_compose_terms(Matrix<S>& sys, std::size_t row0, std::size_t col0,
                            const LambdaMatrix<K, S>& post, const BlockLayout<K>& u_layout,
                            const BlockLayout<K>& out_layout, const ProjSum& u_src,
                            const ProjSum& u_tgt, const S& sign) {
    // out = compose(post, U): out(k, j) = sum_i U(i, j) * post(k, i)
    const AlgebraBasis<K>& alg = post.algebra();
    for (std::size_t i = 0; i < u_tgt.size(); ++i)
        for (std::size_t j = 0; j < u_src.size(); ++j) {
            std::size_t cell = i * u_layout.cols + j;
            for (std::size_t b = 0; b < u_layout.classes[cell].size(); ++b) {
                AlgebraElement<S> unit;
                unit.add(u_layout.classes[cell][b], S(1));
                for (std::size_t k = 0; k < post.target().size(); ++k) {
                    AlgebraElement<S> img = alg.mul(unit, post.at(k, i));
                    std::size_t out_cell = k * out_layout.cols + j;
                    const auto& out_classes = out_layout.classes[out_cell];
                    for (auto& [idx, c] : img.coords) {
                        auto pos = std::find(out_classes.begin(), out_classes.end(), idx);
                        sys(row0 + out_layout.offset[out_cell] +
                                static_cast<std::size_t>(pos - out_classes.begin()),
                            col0 + u_layout.offset[cell] + b) += c * sign;
                    }
                }
            }
        }
}

template <class K, class S>
void add_right_compose_terms(Matrix<S>& sys, std::size_t row0, std::size_t col0,
                             const LambdaMatrix<K, S>& pre, const BlockLayout<K>& u_layout,
                             const BlockLayout<K>& out_layout, const ProjSum& u_src,
                             const ProjSum& u_tgt, const S& sign) {
    // out = compose(U, pre): out(k, j) = sum_i pre(i, j) * U(k, i)
    const AlgebraBasis<K>& alg = pre.algebra();
    for (std::size_t k = 0; k < u_tgt.size(); ++k)
        for (std::size_t i = 0; i < u_src.size(); ++i) {
            std::size_t cell = k * u_layout.cols + i;
            for (std::size_t b = 0; b < u_layout.classes[cell].size(); ++b) {
                AlgebraElement<S> unit;
                unit.add(u_layout.classes[cell][b], S(1));
                for (std::size_t j = 0; j < pre.source().size(); ++j) {
                    AlgebraElement<S> img = alg.mul(pre.at(i, j), unit);
                    std::size_t out_cell = k * out_layout.cols + j;
                    const auto& out_classes = out_layout.classes[out_cell];
                    for (auto& [idx, c] : img.coords) {
                        auto pos = std::find(out_classes.begin(), out_classes.end(), idx);
                        sys(row0 + out_layout.offset[out_cell] +
                                static_cast<std::size_t>(pos - out_classes.begin()),
                            col0 + u_layout.offset[cell] + b) += c * sign;
                    }
                }
            }
        }
}

}  // namespace detail

// Exact basis of Hom_{P(Lambda)}(X, X'): pairs (u1, u2) with
// u2 . phi = phi' . u1.
template <class K, class S>
std::vector<P1Morphism<K, S>> p1_hom(const AlgebraBasis<K>& alg, const P1Object<K, S>& x,
                                     const P1Object<K, S>& xp) {
    using detail::BlockLayout;
    BlockLayout<K> l1 = BlockLayout<K>::make(alg, x.p1, xp.p1);
    BlockLayout<K> l2 = BlockLayout<K>::make(alg, x.p2, xp.p2);
    BlockLayout<K> lout = BlockLayout<K>::make(alg, x.p1, xp.p2);

    Matrix<S> sys(lout.total, l1.total + l2.total);
    // compose(u2, phi) - compose(phi', u1) = 0
    detail::add_right_compose_terms(sys, 0, l1.total, x.phi, l2, lout, x.p2, xp.p2, S(1));
    detail::add_left_compose_terms(sys, 0, 0, xp.phi, l1, lout, x.p1, xp.p1, S(-1));

    std::vector<P1Morphism<K, S>> out;
    for (auto& v : kernel_basis(sys)) {
        std::vector<S> v1(v.begin(), v.begin() + l1.total);
        std::vector<S> v2(v.begin() + l1.total, v.end());
        P1Morphism<K, S> u{detail::matrix_from_coordinates(alg, x.p1, xp.p1, l1, v1),
                           detail::matrix_from_coordinates(alg, x.p2, xp.p2, l2, v2)};
        out.push_back(std::move(u));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cokernel functor.

template <class S>
struct QuotientSpace {
    // reduced row echelon basis of the image subspace, with pivot columns
    Matrix<S> image_rref;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_cols;  // quotient coordinates
    std::size_t ambient = 0;

    std::vector<S> project(std::vector<S> v) const {
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            S c = v[pivots[r]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < ambient; ++j) v[j] -= c * image_rref(r, j);
        }
        std::vector<S> out;
        out.reserve(free_cols.size());
        for (auto j : free_cols) out.push_back(v[j]);
        return out;
    }
};

template <class K, class S>
struct CokernelData {
    Representation<S> rep;                 // the quotient representation
    Representation<S> ambient;             // P(P2) it was cut from
    std::vector<QuotientSpace<S>> spaces;  // per vertex
};

template <class K, class S>
CokernelData<K, S> cokernel_data(const AlgebraBasis<K>& alg, const P1Object<K, S>& x) {
    const Quiver& q = alg.quiver();
    Representation<S> amb = projective_of_sum<K, S>(alg, x.p2);
    RepMorphism<S> phi = to_rep_morphism(x.phi);

    CokernelData<K, S> out;
    out.ambient = amb;
    out.spaces.resize(static_cast<std::size_t>(q.num_vertices));
    out.rep.dims.resize(static_cast<std::size_t>(q.num_vertices));
    for (int v = 1; v <= q.num_vertices; ++v) {
        std::size_t vi = static_cast<std::size_t>(v - 1);
        Matrix<S> img = phi.vertex_maps[vi].transpose();  // rows span the image
        QuotientSpace<S>& qs = out.spaces[vi];
        qs.ambient = amb.dims[vi];
        qs.pivots = rref(img);
        qs.image_rref = Matrix<S>(qs.pivots.size(), qs.ambient);
        for (std::size_t r = 0; r < qs.pivots.size(); ++r)
            for (std::size_t j = 0; j < qs.ambient; ++j) qs.image_rref(r, j) = img(r, j);
        std::vector<bool> is_pivot(qs.ambient, false);
        for (auto p : qs.pivots) is_pivot[p] = true;
        for (std::size_t j = 0; j < qs.ambient; ++j)
            if (!is_pivot[j]) qs.free_cols.push_back(j);
        out.rep.dims[vi] = qs.free_cols.size();
    }
    out.rep.arrow_maps.resize(q.arrows.size());
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        auto& a = q.arrows[ai];
        auto& src = out.spaces[static_cast<std::size_t>(a.source - 1)];
        auto& tgt = out.spaces[static_cast<std::size_t>(a.target - 1)];
        Matrix<S> m(tgt.free_cols.size(), src.free_cols.size());
        for (std::size_t c = 0; c < src.free_cols.size(); ++c) {
            std::vector<S> lifted(src.ambient, S(0));
            lifted[src.free_cols[c]] = S(1);
            std::vector<S> mapped(tgt.ambient, S(0));
            const Matrix<S>& am = amb.arrow_maps[ai];
            for (std::size_t r = 0; r < tgt.ambient; ++r)
                for (std::size_t k = 0; k < src.ambient; ++k)
                    if (!lifted[k].is_zero()) mapped[r] += am(r, k) * lifted[k];
            auto proj = tgt.project(std::move(mapped));
            for (std::size_t r = 0; r < proj.size(); ++r) m(r, c) = proj[r];
        }
        out.rep.arrow_maps[ai] = std::move(m);
    }
    return out;
}

template <class K, class S>
Representation<S> cokernel(const AlgebraBasis<K>& alg, const P1Object<K, S>& x) {
    return cokernel_data(alg, x).rep;
}

// induced map on the quotients
template <class K, class S>
RepMorphism<S> cokernel_map(const AlgebraBasis<K>& alg, const P1Object<K, S>& x,
                            const P1Object<K, S>& y, const P1Morphism<K, S>& u) {
    CokernelData<K, S> cx = cokernel_data(alg, x);
    CokernelData<K, S> cy = cokernel_data(alg, y);
    RepMorphism<S> u2 = to_rep_morphism(u.u2);
    RepMorphism<S> out;
    for (std::size_t vi = 0; vi < cx.spaces.size(); ++vi) {
        auto& sx = cx.spaces[vi];
        auto& sy = cy.spaces[vi];
        Matrix<S> m(sy.free_cols.size(), sx.free_cols.size());
        for (std::size_t c = 0; c < sx.free_cols.size(); ++c) {
            std::vector<S> lifted(sx.ambient, S(0));
            lifted[sx.free_cols[c]] = S(1);
            std::vector<S> mapped(sy.ambient, S(0));
            for (std::size_t r = 0; r < sy.ambient; ++r)
                for (std::size_t k = 0; k < sx.ambient; ++k)
                    if (!lifted[k].is_zero()) mapped[r] += u2.vertex_maps[vi](r, k) * lifted[k];
            auto proj = sy.project(std::move(mapped));
            for (std::size_t r = 0; r < proj.size(); ++r) m(r, c) = proj[r];
        }
        out.vertex_maps.push_back(std::move(m));
    }
    return out;
}

template <class K, class S>
bool is_zero_coker(const AlgebraBasis<K>& alg, const P1Object<K, S>& x, const P1Object<K, S>& y,
                   const P1Morphism<K, S>& u) {
    return cokernel_map(alg, x, y, u).is_zero();
}

// ---------------------------------------------------------------------------
// Special objects and morphisms.

template <class K, class S>
struct SpecialAtVertex {
    P1Object<K, S> left;         // L(Lambda e_t): ⊕_{α: t→s} Lambda e_s -> Lambda e_t
    P1Object<K, S> right;        // R(Lambda e_t): Lambda e_t -> ⊕_{β: s→t} Lambda e_s
    P1Object<K, S> zero_target;  // S(Lambda e_t) = (Lambda e_t, 0, 0)
    P1Object<K, S> unit;         // U(Lambda e_t) = (Lambda e_t, Lambda e_t, id); not in P^1
    P1Morphism<K, S> alpha;      // L -> U
    P1Morphism<K, S> beta;       // U -> R
    P1Morphism<K, S> gamma;      // L -> R, gamma = beta . alpha
};

template <class K, class S = K>
SpecialAtVertex<K, S> build_special(const AlgebraBasis<K>& alg, int t) {
    const Quiver& q = alg.quiver();
    SpecialAtVertex<K, S> out;

    ProjSum outgoing, incoming, et{{t}};
    std::vector<std::size_t> out_arrows, in_arrows;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        if (q.arrows[ai].source == t) {
            outgoing.vertices.push_back(q.arrows[ai].target);
            out_arrows.push_back(ai);
        }
        if (q.arrows[ai].target == t) {
            incoming.vertices.push_back(q.arrows[ai].source);
            in_arrows.push_back(ai);
        }
    }

    // phi_t = (rho_alpha)_{alpha: t->s} : row over the outgoing arrows
    LambdaMatrix<K, S> phi(&alg, outgoing, et);
    for (std::size_t j = 0; j < out_arrows.size(); ++j)
        phi.at(0, j) = alg.template arrow_element<S>(q.arrows[out_arrows[j]].name);
    out.left = P1Object<K, S>{outgoing, et, phi};

    // psi_t = (rho_beta)^t : column over the incoming arrows
    LambdaMatrix<K, S> psi(&alg, et, incoming);
    for (std::size_t i = 0; i < in_arrows.size(); ++i)
        psi.at(i, 0) = alg.template arrow_element<S>(q.arrows[in_arrows[i]].name);
    out.right = P1Object<K, S>{et, incoming, psi};

    out.zero_target = P1Object<K, S>{et, ProjSum{}, LambdaMatrix<K, S>(&alg, et, ProjSum{})};
    out.unit = P1Object<K, S>{et, et, LambdaMatrix<K, S>::identity(alg, et)};

    out.alpha = P1Morphism<K, S>{phi, LambdaMatrix<K, S>::identity(alg, et)};
    out.beta = P1Morphism<K, S>{LambdaMatrix<K, S>::identity(alg, et), psi};
    out.gamma = compose(out.beta, out.alpha);
    return out;
}

// ---------------------------------------------------------------------------
// Constructive factorizations.

// Solve phi' . s = u2 for s : P2 -> P1' when Coker(u) = 0 and split u into a
// part through S(P1) and a part through U(P2).
template <class K, class S>
struct LiftSplit {
    LambdaMatrix<K, S> section;  // s with phi' . s = u2
    P1Morphism<K, S> through_zero;  // v = (u1 - s phi, 0)
    P1Morphism<K, S> through_unit;  // w = (s phi, u2)
};

template <class K, class S>
LiftSplit<K, S> lift_and_split(const AlgebraBasis<K>& alg, const P1Object<K, S>& x,
                               const P1Object<K, S>& y, const P1Morphism<K, S>& u) {
    if (!is_zero_coker(alg, x, y, u)) throw not_zero_cokernel_error();
    using detail::BlockLayout;
    BlockLayout<K> ls = BlockLayout<K>::make(alg, x.p2, y.p1);
    BlockLayout<K> lout = BlockLayout<K>::make(alg, x.p2, y.p2);
    Matrix<S> sys(lout.total, ls.total);
    detail::add_left_compose_terms(sys, 0, 0, y.phi, ls, lout, x.p2, y.p1, S(1));
    std::vector<S> rhs = detail::coordinates_of(u.u2, lout);
    auto sol = solve_linear(sys, rhs);
    if (!sol) throw lift_failed_error("projective lifting system inconsistent");
    LambdaMatrix<K, S> s = detail::matrix_from_coordinates(alg, x.p2, y.p1, ls, *sol);
    if (compose(y.phi, s) != u.u2) throw lift_failed_error("lift verification failed");

    LambdaMatrix<K, S> sphi = compose(s, x.phi);
    LiftSplit<K, S> out{
        s,
        P1Morphism<K, S>{u.u1 - sphi, LambdaMatrix<K, S>(&alg, x.p2, y.p2)},
        P1Morphism<K, S>{sphi, u.u2}};
    return out;
}

// u : X -> U(Lambda e_t) factors as alpha_t . zeta (Lemma-style lифting)
template <class K, class S>
P1Morphism<K, S> factor_alpha(const AlgebraBasis<K>& alg, const P1Object<K, S>& x,
                              const SpecialAtVertex<K, S>& sp, const P1Morphism<K, S>& u) {
    x.require_p1();
    using detail::BlockLayout;
    const P1Object<K, S>& l = sp.left;
    BlockLayout<K> lh = BlockLayout<K>::make(alg, x.p1, l.p1);
    BlockLayout<K> lout = BlockLayout<K>::make(alg, x.p1, l.p2);
    Matrix<S> sys(lout.total, lh.total);
    detail::add_left_compose_terms(sys, 0, 0, l.phi, lh, lout, x.p1, l.p1, S(1));
    std::vector<S> rhs = detail::coordinates_of(u.u1, lout);
    auto sol = solve_linear(sys, rhs);
    if (!sol) throw lift_failed_error("alpha factorization system inconsistent");
    LambdaMatrix<K, S> h = detail::matrix_from_coordinates(alg, x.p1, l.p1, lh, *sol);
    if (compose(l.phi, h) != u.u1) throw lift_failed_error("alpha factorization failed");
    return P1Morphism<K, S>{h, u.u2};  // zeta : X -> L(Lambda e_t), u = alpha_t . zeta
}

// v : U(Lambda e_t) -> X factors as xi . beta_t by splitting the leading
// arrow off each path in v2(e_t)
template <class K, class S>
P1Morphism<K, S> factor_beta(const AlgebraBasis<K>& alg, const P1Object<K, S>& x,
                             const SpecialAtVertex<K, S>& sp, const P1Morphism<K, S>& v) {
    x.require_p1();
    const Quiver& q = alg.quiver();
    const P1Object<K, S>& r = sp.right;
    int t = r.p1.vertices[0];
    std::vector<std::size_t> in_arrows;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
        if (q.arrows[ai].target == t) in_arrows.push_back(ai);

    LambdaMatrix<K, S> g(&alg, r.p2, x.p2);
    for (std::size_t jrow = 0; jrow < x.p2.size(); ++jrow) {
        const AlgebraElement<S>& c = v.u2.at(jrow, 0);
        for (auto& [idx, coef] : c.coords) {
            const QuiverPath& p = alg.basis()[idx].path;
            if (p.length() == 0)
                throw not_in_radical_error("component of length zero cannot split an arrow");
            int last = p.arrows.back();
            QuiverPath rest{p.source, q.arrows[static_cast<std::size_t>(last)].source,
                            std::vector<int>(p.arrows.begin(), p.arrows.end() - 1)};
            AlgebraElement<S> rest_elt = alg.template path_element<S>(rest);
            auto pos = std::find(in_arrows.begin(), in_arrows.end(),
                                 static_cast<std::size_t>(last));
            std::size_t beta_idx = static_cast<std::size_t>(pos - in_arrows.begin());
            g.at(jrow, beta_idx) = g.at(jrow, beta_idx) + rest_elt * coef;
        }
    }
    if (compose(g, r.phi) != v.u2) throw error("beta factorization failed to recompose");
    return P1Morphism<K, S>{v.u1, g};  // xi : R(Lambda e_t) -> X, v = xi . beta_t
}

// The full decomposition of a zero-cokernel morphism into pieces through
// gamma_t and through S(Lambda e_t).
template <class K, class S>
struct CanonicalDecomposition {
    struct ThroughGamma {
        int vertex;
        P1Morphism<K, S> pre;   // X -> L(Lambda e_t)
        P1Morphism<K, S> post;  // R(Lambda e_t) -> X'
    };
    struct ThroughZero {
        int vertex;
        P1Morphism<K, S> pre;   // X -> S(Lambda e_t)
        P1Morphism<K, S> post;  // S(Lambda e_t) -> X'
    };
    std::vector<ThroughGamma> gamma_terms;
    std::vector<ThroughZero> zero_terms;
};

template <class K, class S>
CanonicalDecomposition<K, S> canonical_decomposition(const AlgebraBasis<K>& alg,
                                                     const P1Object<K, S>& x,
                                                     const P1Object<K, S>& y,
                                                     const P1Morphism<K, S>& u) {
    x.require_p1();
    y.require_p1();
    LiftSplit<K, S> split = lift_and_split(alg, x, y, u);
    CanonicalDecomposition<K, S> out;

    // v = (u1 - s phi, 0) factors through S(P1) summand by summand
    for (std::size_t j = 0; j < x.p1.size(); ++j) {
        int t = x.p1.vertices[j];
        typename CanonicalDecomposition<K, S>::ThroughZero term{
            t,
            // X -> S(Lambda e_t): first component projects P1 onto summand j
            P1Morphism<K, S>{LambdaMatrix<K, S>::projection(alg, x.p1, j),
                             LambdaMatrix<K, S>(&alg, x.p2, ProjSum{})},
            // S(Lambda e_t) -> X': first component is column j of u1 - s phi
            P1Morphism<K, S>{split.through_zero.u1.column(j),
                             LambdaMatrix<K, S>(&alg, ProjSum{}, y.p2)}};
        if (!term.post.u1.is_zero()) out.zero_terms.push_back(std::move(term));
    }

    // w = (s phi, u2) factors through U(P2) summand by summand, then each
    // piece through gamma via the alpha/beta factorizations
    for (std::size_t i = 0; i < x.p2.size(); ++i) {
        int t = x.p2.vertices[i];
        SpecialAtVertex<K, S> sp = build_special<K, S>(alg, t);
        // pi_i . (phi, id) : X -> U(Lambda e_t)
        P1Morphism<K, S> into_unit{x.phi.row(i), LambdaMatrix<K, S>::projection(alg, x.p2, i)};
        // (s, u2) . sigma_i : U(Lambda e_t) -> X'
        P1Morphism<K, S> from_unit{split.section.column(i), u.u2.column(i)};
        if (into_unit.is_zero() || from_unit.is_zero()) continue;
        typename CanonicalDecomposition<K, S>::ThroughGamma term{
            t, factor_alpha(alg, x, sp, into_unit), factor_beta(alg, y, sp, from_unit)};
        out.gamma_terms.push_back(std::move(term));
    }
    return out;
}

// exact recomposition of a decomposition
template <class K, class S>
P1Morphism<K, S> recompose(const AlgebraBasis<K>& alg, const P1Object<K, S>& x,
                           const P1Object<K, S>& y, const CanonicalDecomposition<K, S>& dec) {
    P1Morphism<K, S> acc{LambdaMatrix<K, S>(&alg, x.p1, y.p1),
                         LambdaMatrix<K, S>(&alg, x.p2, y.p2)};
    for (auto& term : dec.gamma_terms) {
        SpecialAtVertex<K, S> sp = build_special<K, S>(alg, term.vertex);
        acc = acc + compose(term.post, compose(sp.gamma, term.pre));
    }
    for (auto& term : dec.zero_terms) acc = acc + compose(term.post, term.pre);
    return acc;
}

template <class K, class S>
P1Object<K, S> p1_direct_sum(const AlgebraBasis<K>& alg, const P1Object<K, S>& x,
                             const P1Object<K, S>& y) {
    ProjSum p1, p2;
    p1.vertices = x.p1.vertices;
    p1.vertices.insert(p1.vertices.end(), y.p1.vertices.begin(), y.p1.vertices.end());
    p2.vertices = x.p2.vertices;
    p2.vertices.insert(p2.vertices.end(), y.p2.vertices.begin(), y.p2.vertices.end());
    LambdaMatrix<K, S> phi(&alg, p1, p2);
    for (std::size_t i = 0; i < x.p2.size(); ++i)
        for (std::size_t j = 0; j < x.p1.size(); ++j) phi.at(i, j) = x.phi.at(i, j);
    for (std::size_t i = 0; i < y.p2.size(); ++i)
        for (std::size_t j = 0; j < y.p1.size(); ++j)
            phi.at(x.p2.size() + i, x.p1.size() + j) = y.phi.at(i, j);
    return P1Object<K, S>{p1, p2, phi};
}

// Basis of the subspace of Hom(X, Y) killed by the cokernel functor.
template <class K, class S>
std::vector<P1Morphism<K, S>> zero_coker_subspace(const AlgebraBasis<K>& alg,
                                                  const P1Object<K, S>& x,
                                                  const P1Object<K, S>& y) {
    auto homs = p1_hom(alg, x, y);
    if (homs.empty()) return {};
    std::vector<std::vector<S>> flat;
    for (auto& h : homs) {
        RepMorphism<S> c = cokernel_map(alg, x, y, h);
        flat.push_back(detail::flatten_morphism(c));
    }
    Matrix<S> sys(flat.front().size(), homs.size());
    for (std::size_t j = 0; j < homs.size(); ++j)
        for (std::size_t i = 0; i < flat[j].size(); ++i) sys(i, j) = flat[j][i];
    std::vector<P1Morphism<K, S>> out;
    for (auto& v : kernel_basis(sys)) {
        P1Morphism<K, S> acc{LambdaMatrix<K, S>(&alg, x.p1, y.p1),
                             LambdaMatrix<K, S>(&alg, x.p2, y.p2)};
        for (std::size_t j = 0; j < homs.size(); ++j) {
            if (v[j].is_zero()) continue;
            acc = acc + homs[j] * v[j];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

// Radical dimension of an abstract finite-dimensional algebra given by the
// composition table of a basis, via the trace form of the regular
// representation (characteristic zero).
template <class S>
std::size_t abstract_radical_dim(const std::vector<std::vector<std::vector<S>>>& table) {
    const std::size_t n = table.size();
    if (n == 0) return 0;
    // left multiplication matrices
    auto lmul = [&](std::size_t i) {
        Matrix<S> m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m(k, j) = table[i][j][k];
        return m;
    };
    std::vector<Matrix<S>> left;
    for (std::size_t i = 0; i < n; ++i) left.push_back(lmul(i));
    Matrix<S> gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix<S> prod = left[i] * left[j];
            S tr(0);
            for (std::size_t k = 0; k < n; ++k) tr += prod(k, k);
            gram(i, j) = tr;
        }
    return kernel_basis(gram).size();
}

// Composition table of End_{P(Lambda)}(X) in the computed hom basis.
template <class K, class S>
std::vector<std::vector<std::vector<S>>> p1_end_table(const AlgebraBasis<K>& alg,
                                                      const P1Object<K, S>& x) {
    auto homs = p1_hom(alg, x, x);
    const std::size_t n = homs.size();
    detail::BlockLayout<K> l1 = detail::BlockLayout<K>::make(alg, x.p1, x.p1);
    detail::BlockLayout<K> l2 = detail::BlockLayout<K>::make(alg, x.p2, x.p2);
    auto flatten = [&](const P1Morphism<K, S>& u) {
        auto v1 = detail::coordinates_of(u.u1, l1);
        auto v2 = detail::coordinates_of(u.u2, l2);
        v1.insert(v1.end(), v2.begin(), v2.end());
        return v1;
    };
    Matrix<S> basis_mat(l1.total + l2.total, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto col = flatten(homs[j]);
        for (std::size_t i = 0; i < col.size(); ++i) basis_mat(i, j) = col[i];
    }
    std::vector<std::vector<std::vector<S>>> table(
        n, std::vector<std::vector<S>>(n, std::vector<S>(n, S(0))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto comp = compose(homs[i], homs[j]);
            auto sol = solve_linear(basis_mat, flatten(comp));
            if (!sol) throw error("composition left the endomorphism span");
            table[i][j] = *sol;
        }
    return table;
}

// ---------------------------------------------------------------------------
// Isomorphism testing.

// Search for a mutually inverse pair through the hom bases.  Pairwise
// composition invertibility finds candidates; each candidate is certified by
// solving for an exact two-sided inverse.  For objects with local
// endomorphism rings the pairwise scan is complete.
template <class K, class S>
bool p1_isomorphic(const AlgebraBasis<K>& alg, const P1Object<K, S>& x, const P1Object<K, S>& y) {
    if (!x.p1.same_summands(y.p1) || !x.p2.same_summands(y.p2)) return false;
    auto fwd = p1_hom(alg, x, y);
    auto bwd = p1_hom(alg, y, x);
    auto invertible = [&](const P1Morphism<K, S>& f) {
        RepMorphism<S> m1 = to_rep_morphism(f.u1), m2 = to_rep_morphism(f.u2);
        for (auto& m : m1.vertex_maps)
            if (m.rows() != m.cols() || !inverse(m)) return false;
        for (auto& m : m2.vertex_maps)
            if (m.rows() != m.cols() || !inverse(m)) return false;
        return true;
    };
    for (auto& f : fwd)
        for (auto& g : bwd) {
            auto gf = compose(g, f);
            if (!invertible(gf)) continue;
            // certify: some morphism equivalent to f is invertible; since
            // g.f is invertible, f itself is a split mono, and the composite
            // test below settles it
            if (invertible(f)) return true;
            auto fg = compose(f, g);
            if (invertible(fg)) return true;
        }
    return false;
}

}  // namespace brickwork

#endif
