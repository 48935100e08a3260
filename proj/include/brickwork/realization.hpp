#ifndef BRICKWORK_REALIZATION_HPP
#define BRICKWORK_REALIZATION_HPP

// Realizations of generic modules over rational algebras Gamma = k[x]_h:
// matrix representations with entries in Gamma, free over Gamma by
// construction.  Specializing x to a point of D(h) yields the one-parameter
// family M(lambda); reading the entries in k(x) yields the generic module.
// The verdict compares the two sides of the brick equivalence.

#include <string>
#include <vector>

#include "brickwork/homs.hpp"

namespace brickwork {

template <class K>
struct Realization {
    Poly<K> h = Poly<K>::one();              // inverted polynomial of Gamma
    std::vector<std::size_t> dims;           // per-vertex rank
    std::vector<Matrix<RatFun<K>>> arrow_maps;  // entries in k[x]_h
};

template <class K>
void validate_realization(const AlgebraBasis<K>& alg, const std::vector<Relation<K>>& relations,
                          const Realization<K>& m) {
    Representation<RatFun<K>> rep{m.dims, m.arrow_maps};
    check_shapes(alg.quiver(), rep);
    LocalizedRing<K> gamma(m.h);
    for (auto& mat : m.arrow_maps)
        for (std::size_t i = 0; i < mat.rows(); ++i)
            for (std::size_t j = 0; j < mat.cols(); ++j)
                if (!gamma.contains(mat(i, j)))
                    throw malformed_spec_error("entry not in the localized ring k[x]_h");
    if (!relations_hold(alg, relations, rep))
        throw malformed_spec_error("relations fail over the rational algebra");
}

template <class K>
Representation<K> specialize(const Realization<K>& m, const K& lambda) {
    if (m.h(lambda).is_zero()) throw outside_dh_error("h vanishes at the sample point");
    Representation<K> out;
    out.dims = m.dims;
    for (auto& mat : m.arrow_maps)
        out.arrow_maps.push_back(
            mat.template map<K>([&](const RatFun<K>& e) { return e(lambda); }));
    return out;
}

// the generic fibre: the same matrices read over k(x)
template <class K>
Representation<RatFun<K>> genericize(const Realization<K>& m) {
    if (Representation<RatFun<K>>{m.dims, m.arrow_maps}.is_zero_module())
        throw zero_module_error("zero-rank realization");
    return Representation<RatFun<K>>{m.dims, m.arrow_maps};
}

template <class K>
bool is_constant_family(const Realization<K>& m) {
    for (auto& mat : m.arrow_maps)
        for (std::size_t i = 0; i < mat.rows(); ++i)
            for (std::size_t j = 0; j < mat.cols(); ++j)
                if (mat(i, j).num().degree() > 0 || mat(i, j).den().degree() > 0) return false;
    return true;
}

enum class Verdict { consistent_positive, consistent_negative, inconsistent };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::consistent_positive: return "CONSISTENT-positive";
        case Verdict::consistent_negative: return "CONSISTENT-negative";
        default: return "INCONSISTENT";
    }
}

template <class K>
struct FamilyReport {
    std::vector<K> lambdas;
    std::vector<std::size_t> end_dims;
    std::vector<bool> bricks;
    bool constant_family = false;
    std::size_t module_dim = 0;  // dim_k M(lambda) = rank over Gamma

    // filled by the verdict pass
    bool has_generic_side = false;
    std::size_t generic_end_dim = 0;
    bool generic_brick = false;
    Verdict verdict = Verdict::consistent_negative;

    std::size_t brick_count() const {
        std::size_t n = 0;
        for (bool b : bricks) n += b;
        return n;
    }
    bool all_sampled_bricks() const { return brick_count() == bricks.size() && !bricks.empty(); }
    bool some_sampled_brick() const { return brick_count() > 0; }
};

template <class K>
FamilyReport<K> brick_scan(const AlgebraBasis<K>& alg, const Realization<K>& m, std::size_t count,
                           const FieldSpec& fs) {
    if (count < 1) throw malformed_spec_error("sample count must be >= 1");
    FamilyReport<K> out;
    out.constant_family = is_constant_family(m);
    Representation<RatFun<K>> gen{m.dims, m.arrow_maps};
    out.module_dim = gen.total_dim();
    for (auto& lambda : sample_points<K>(m.h, count, fs)) {
        Representation<K> fibre = specialize(m, lambda);
        std::size_t d = hom_basis(alg.quiver(), fibre, fibre).dim();
        out.lambdas.push_back(lambda);
        out.end_dims.push_back(d);
        out.bricks.push_back(d == 1);
    }
    return out;
}

// Both sides of the equivalence: the generic brick flag against the sampled
// family.  The all-sampled criterion decides; a disagreement flags the input
// (or the library) as broken.
template <class K>
FamilyReport<K> theorem_verdict(const AlgebraBasis<K>& alg, const Realization<K>& m,
                                std::size_t count, const FieldSpec& fs) {
    FamilyReport<K> out = brick_scan(alg, m, count, fs);
    Representation<RatFun<K>> gen = genericize(m);
    out.has_generic_side = true;
    out.generic_end_dim = hom_basis(alg.quiver(), gen, gen).dim();
    out.generic_brick = out.generic_end_dim == 1;
    if (out.generic_brick == out.all_sampled_bricks())
        out.verdict = out.generic_brick ? Verdict::consistent_positive
                                        : Verdict::consistent_negative;
    else
        out.verdict = Verdict::inconsistent;
    return out;
}

template <class K>
Realization<K> realization_direct_sum(const Quiver& q, const Realization<K>& a,
                                      const Realization<K>& b) {
    Realization<K> out;
    out.h = lcm(a.h, b.h);
    Representation<RatFun<K>> ra{a.dims, a.arrow_maps};
    Representation<RatFun<K>> rb{b.dims, b.arrow_maps};
    auto sum = direct_sum(q, ra, rb);
    out.dims = sum.dims;
    out.arrow_maps = sum.arrow_maps;
    return out;
}

}  // namespace brickwork

#endif
