#ifndef BRICKWORK_HOMS_HPP
#define BRICKWORK_HOMS_HPP

// Hom and End computation between representations, over the ground field or
// over k(x).  Bricks are detected by a one-dimensional endomorphism space;
// the radical of an endomorphism algebra comes from the kernel of the trace
// bilinear form (characteristic zero only).

#include <vector>

#include "brickwork/representation.hpp"

namespace brickwork {

// k(x) over a characteristic-zero field still has characteristic zero.
template <class K>
struct field_traits<RatFun<K>> {
    static constexpr bool char_zero = field_traits<K>::char_zero;
};

template <class S>
struct HomBasis {
    std::vector<RepMorphism<S>> basis;

    std::size_t dim() const { return basis.size(); }
};

namespace detail {

template <class S>
std::vector<S> flatten_morphism(const RepMorphism<S>& f) {
    std::vector<S> out;
    for (auto& m : f.vertex_maps)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

template <class S>
RepMorphism<S> unflatten_morphism(const Representation<S>& x, const Representation<S>& y,
                                  const std::vector<S>& v) {
    RepMorphism<S> f;
    std::size_t pos = 0;
    for (std::size_t vert = 0; vert < x.dims.size(); ++vert) {
        Matrix<S> m(y.dims[vert], x.dims[vert]);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = v[pos++];
        f.vertex_maps.push_back(std::move(m));
    }
    return f;
}

}  // namespace detail

// Exact basis of Hom(X, Y): the solution space of the commuting-square
// system f_{tgt(a)} X_a = Y_a f_{src(a)}.
template <class S>
HomBasis<S> hom_basis(const Quiver& q, const Representation<S>& x, const Representation<S>& y) {
    if (x.dims.size() != y.dims.size()) throw scalar_mismatch_error("representation size mismatch");
    // unknown layout: per vertex, row-major f_v of shape dimY x dimX
    std::vector<std::size_t> offset(x.dims.size() + 1, 0);
    for (std::size_t v = 0; v < x.dims.size(); ++v)
        offset[v + 1] = offset[v] + x.dims[v] * y.dims[v];
    const std::size_t unknowns = offset.back();

    std::size_t equations = 0;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
        equations += y.dim_at(q.arrows[ai].target) * x.dim_at(q.arrows[ai].source);

    Matrix<S> sys(equations, unknowns);
    std::size_t row = 0;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        auto& a = q.arrows[ai];
        std::size_t sv = static_cast<std::size_t>(a.source - 1);
        std::size_t tv = static_cast<std::size_t>(a.target - 1);
        const Matrix<S>& xa = x.arrow_maps[ai];
        const Matrix<S>& ya = y.arrow_maps[ai];
        // (f_t X_a - Y_a f_s)(r, c) = 0
        for (std::size_t r = 0; r < y.dims[tv]; ++r)
            for (std::size_t c = 0; c < x.dims[sv]; ++c) {
                for (std::size_t k = 0; k < x.dims[tv]; ++k)
                    sys(row, offset[tv] + r * x.dims[tv] + k) += xa(k, c);
                for (std::size_t k = 0; k < y.dims[sv]; ++k)
                    sys(row, offset[sv] + k * x.dims[sv] + c) -= ya(r, k);
                ++row;
            }
    }
    HomBasis<S> out;
    for (auto& v : kernel_basis(sys)) out.basis.push_back(detail::unflatten_morphism(x, y, v));
    return out;
}

template <class S>
RepMorphism<S> compose(const RepMorphism<S>& g, const RepMorphism<S>& f) {
    RepMorphism<S> h;
    for (std::size_t v = 0; v < f.vertex_maps.size(); ++v)
        h.vertex_maps.push_back(g.vertex_maps[v] * f.vertex_maps[v]);
    return h;
}

template <class S>
RepMorphism<S> identity_morphism(const Representation<S>& x) {
    RepMorphism<S> f;
    for (auto d : x.dims) f.vertex_maps.push_back(Matrix<S>::identity(d));
    return f;
}

template <class S>
S morphism_trace(const RepMorphism<S>& f) {
    S t(0);
    for (auto& m : f.vertex_maps)
        for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// X is a brick iff End(X) is one-dimensional over the scalar ring.
template <class S>
bool is_brick(const Quiver& q, const Representation<S>& x) {
    if (x.is_zero_module()) throw zero_module_error();
    return hom_basis(q, x, x).dim() == 1;
}

// The endomorphism algebra with composition in coordinates and (in
// characteristic zero) its radical.
template <class S>
class EndAlgebra {
  public:
    static EndAlgebra compute(const Quiver& q, const Representation<S>& x) {
        EndAlgebra e;
        e.rep_ = x;
        e.hom_ = hom_basis(q, x, x);
        for (auto& b : e.hom_.basis) e.flat_.push_back(detail::flatten_morphism(b));
        return e;
    }

    std::size_t dim() const { return hom_.dim(); }
    const HomBasis<S>& hom() const { return hom_; }

    // coordinates of an endomorphism in the computed basis
    std::vector<S> coordinates(const RepMorphism<S>& f) const {
        std::vector<S> target = detail::flatten_morphism(f);
        Matrix<S> sys(target.size(), flat_.size());
        for (std::size_t j = 0; j < flat_.size(); ++j)
            for (std::size_t i = 0; i < target.size(); ++i) sys(i, j) = flat_[j][i];
        auto sol = solve_linear(sys, target);
        if (!sol) throw error("endomorphism outside the computed span");
        return *sol;
    }

    // radical basis via the kernel of the trace form; characteristic 0 only
    std::vector<RepMorphism<S>> radical_basis() const {
        static_assert(std::is_same_v<S, S>);
        if constexpr (!is_char_zero_v<S>) {
            throw unsupported_characteristic_error(
                "radical computation requires characteristic zero");
        } else {
            const std::size_t n = dim();
            Matrix<S> gram(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    gram(i, j) = morphism_trace(compose(hom_.basis[i], hom_.basis[j]));
            std::vector<RepMorphism<S>> rad;
            for (auto& v : kernel_basis(gram)) {
                RepMorphism<S> r;
                for (std::size_t vert = 0; vert < rep_.dims.size(); ++vert)
                    r.vertex_maps.push_back(
                        Matrix<S>(rep_.dims[vert], rep_.dims[vert]));
                for (std::size_t i = 0; i < n; ++i) {
                    if (v[i].is_zero()) continue;
                    for (std::size_t vert = 0; vert < r.vertex_maps.size(); ++vert)
                        r.vertex_maps[vert] =
                            r.vertex_maps[vert] + hom_.basis[i].vertex_maps[vert] * v[i];
                }
                // each radical element is nilpotent
                RepMorphism<S> pow = r;
                bool vanished = false;
                for (std::size_t step = 0; step <= rep_.total_dim(); ++step) {
                    if (pow.is_zero()) {
                        vanished = true;
                        break;
                    }
                    pow = compose(pow, r);
                }
                if (!vanished) throw error("trace-form kernel element is not nilpotent");
                rad.push_back(std::move(r));
            }
            return rad;
        }
    }

    // local iff End/rad is one-dimensional
    bool is_local() const { return dim() == radical_basis().size() + 1; }

  private:
    Representation<S> rep_;
    HomBasis<S> hom_;
    std::vector<std::vector<S>> flat_;
};

template <class S>
std::vector<RepMorphism<S>> rad_end_basis(const Quiver& q, const Representation<S>& x) {
    return EndAlgebra<S>::compute(q, x).radical_basis();
}

// flat base change to k(x)
template <class K>
Representation<RatFun<K>> to_generic_scalars(const Representation<K>& x) {
    Representation<RatFun<K>> out;
    out.dims = x.dims;
    for (auto& m : x.arrow_maps)
        out.arrow_maps.push_back(
            m.template map<RatFun<K>>([](const K& c) { return RatFun<K>(c); }));
    return out;
}

}  // namespace brickwork

#endif
