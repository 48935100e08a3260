#ifndef BRICKWORK_ALGEBRA_HPP
#define BRICKWORK_ALGEBRA_HPP

// Finite-dimensional path algebras kQ/I.  The user supplies a quiver, the
// admissible relations, and a nilpotency bound m with R^m inside I; the
// quotient is then a finite linear-algebra computation on the paths of
// length < m.
//
// Conventions (left modules): a path p from t to s lies in e_s * Lambda *
// e_t; the product a*b applies b first, so a*b != 0 needs source(a) =
// target(b).  Arrows in a stored path are listed in application order.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "brickwork/matrix.hpp"
#include "brickwork/scalars.hpp"

namespace brickwork {

struct Arrow {
    std::string name;
    int source;
    int target;
};

struct Quiver {
    int num_vertices = 0;
    std::vector<Arrow> arrows;

    void validate() const {
        std::vector<std::string> names;
        for (auto& a : arrows) {
            if (a.source < 1 || a.source > num_vertices || a.target < 1 ||
                a.target > num_vertices)
                throw malformed_spec_error("arrow endpoint out of range: " + a.name);
            names.push_back(a.name);
        }
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw malformed_spec_error("duplicate arrow name");
    }

    int arrow_index(const std::string& name) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        throw malformed_spec_error("unknown arrow: " + name);
    }

    bool is_connected() const {
        if (num_vertices == 0) return true;
        std::vector<bool> seen(num_vertices + 1, false);
        std::vector<int> stack{1};
        seen[1] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto& a : arrows) {
                for (int w : {a.source == v ? a.target : 0, a.target == v ? a.source : 0}) {
                    if (w && !seen[w]) {
                        seen[w] = true;
                        stack.push_back(w);
                    }
                }
            }
        }
        for (int v = 1; v <= num_vertices; ++v)
            if (!seen[v]) return false;
        return true;
    }
};

// Arrows listed in application order (first applied first).
struct QuiverPath {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }
    bool operator<(const QuiverPath& o) const {
        return std::tie(source, target, arrows) < std::tie(o.source, o.target, o.arrows);
    }
    bool operator==(const QuiverPath& o) const {
        return source == o.source && target == o.target && arrows == o.arrows;
    }
};

template <class K>
struct RelationTerm {
    K coef;
    QuiverPath path;
};
template <class K>
using Relation = std::vector<RelationTerm<K>>;

template <class K>
struct AlgebraPresentation {
    Quiver quiver;
    std::vector<Relation<K>> relations;
    unsigned nilpotency_bound = 0;  // m with R^m inside I
};

// Sparse element in the coordinates of an AlgebraBasis; no zero entries.
template <class S>
struct AlgebraElement {
    std::map<std::size_t, S> coords;

    bool is_zero() const { return coords.empty(); }
    void add(std::size_t i, const S& c) {
        if (c.is_zero()) return;
        auto it = coords.find(i);
        if (it == coords.end()) {
            coords.emplace(i, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coords.erase(it);
        }
    }
    AlgebraElement operator+(const AlgebraElement& o) const {
        AlgebraElement r = *this;
        for (auto& [i, c] : o.coords) r.add(i, c);
        return r;
    }
    AlgebraElement operator-() const {
        AlgebraElement r;
        for (auto& [i, c] : coords) r.coords.emplace(i, -c);
        return r;
    }
    AlgebraElement operator-(const AlgebraElement& o) const { return *this + (-o); }
    AlgebraElement operator*(const S& c) const {
        AlgebraElement r;
        for (auto& [i, v] : coords) r.add(i, v * c);
        return r;
    }
    bool operator==(const AlgebraElement& o) const { return coords == o.coords; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }
};

template <class S, class K>
struct scalar_cast_impl;
template <class K>
struct scalar_cast_impl<K, K> {
    static K cast(const K& c) { return c; }
};
template <class K>
struct scalar_cast_impl<RatFun<K>, K> {
    static RatFun<K> cast(const K& c) { return RatFun<K>(c); }
};
template <class S, class K>
S scalar_cast(const K& c) {
    return scalar_cast_impl<S, K>::cast(c);
}

// The finite-dimensional algebra Lambda = kQ/I, as a basis of path classes
// with structure constants.
template <class K>
class AlgebraBasis {
  public:
    struct BasisClass {
        QuiverPath path;  // chosen representative
    };

    static AlgebraBasis build(const AlgebraPresentation<K>& pres) {
        pres.quiver.validate();
        if (pres.nilpotency_bound < 1) throw not_admissible_error("nilpotency bound must be >= 1");
        for (auto& rel : pres.relations)
            for (auto& term : rel) {
                if (term.path.length() < 2)
                    throw not_admissible_error("relation term of length < 2");
                validate_path(pres.quiver, term.path);
            }

        AlgebraBasis alg;
        alg.quiver_ = pres.quiver;
        alg.bound_ = pres.nilpotency_bound;
        alg.enumerate_paths();
        alg.reduce_relations(pres.relations);
        alg.collect_basis();
        alg.build_table();
        return alg;
    }

    const Quiver& quiver() const { return quiver_; }
    unsigned nilpotency_bound() const { return bound_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisClass>& basis() const { return basis_; }

    int source_of(std::size_t i) const { return basis_[i].path.source; }
    int target_of(std::size_t i) const { return basis_[i].path.target; }
    std::size_t length_of(std::size_t i) const { return basis_[i].path.length(); }

    // basis indices of e_s Lambda e_t (paths t -> s)
    std::vector<std::size_t> block(int s, int t) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (target_of(i) == s && source_of(i) == t) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> radical_basis() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (length_of(i) >= 1) out.push_back(i);
        return out;
    }

    template <class S>
    AlgebraElement<S> idempotent(int vertex) const {
        AlgebraElement<S> e;
        e.add(idem_index_.at(vertex), S(1));
        return e;
    }
    template <class S>
    AlgebraElement<S> unit() const {
        AlgebraElement<S> e;
        for (auto& [v, idx] : idem_index_) e.add(idx, S(1));
        return e;
    }
    template <class S>
    AlgebraElement<S> arrow_element(const std::string& name) const {
        int ai = quiver_.arrow_index(name);
        QuiverPath p{quiver_.arrows[ai].source, quiver_.arrows[ai].target, {ai}};
        AlgebraElement<S> e;
        e.add(path_class_index(p), S(1));
        return e;
    }
    template <class S>
    AlgebraElement<S> basis_element(std::size_t i) const {
        AlgebraElement<S> e;
        e.add(i, S(1));
        return e;
    }

    // product of two basis classes as ground-field coordinates
    const std::vector<std::pair<std::size_t, K>>& table(std::size_t i, std::size_t j) const {
        return table_[i * basis_.size() + j];
    }

    template <class S>
    AlgebraElement<S> mul(const AlgebraElement<S>& a, const AlgebraElement<S>& b) const {
        AlgebraElement<S> out;
        for (auto& [i, ca] : a.coords)
            for (auto& [j, cb] : b.coords)
                for (auto& [k, c] : table(i, j)) out.add(k, ca * cb * scalar_cast<S>(c));
        return out;
    }

    // class of an arbitrary path (zero element when the class vanishes)
    template <class S>
    AlgebraElement<S> path_element(const QuiverPath& p) const {
        AlgebraElement<S> out;
        if (p.length() >= bound_) return out;
        auto it = path_index_.find(p);
        if (it == path_index_.end()) throw malformed_spec_error("path not composable");
        for (auto& [k, c] : normal_forms_[it->second]) out.add(k, scalar_cast<S>(c));
        return out;
    }

    // index of a path that is itself a basis class
    std::size_t path_class_index(const QuiverPath& p) const {
        auto it = path_index_.find(p);
        if (it == path_index_.end()) throw malformed_spec_error("path not found");
        auto& nf = normal_forms_[it->second];
        if (nf.size() == 1 && nf[0].second.is_one() &&
            basis_[nf[0].first].path == p)
            return nf[0].first;
        throw malformed_spec_error("path is not a basis class");
    }

    // block (source, target) of a nonzero element concentrated in one
    // e_s Lambda e_t; throws otherwise
    template <class S>
    std::pair<int, int> element_block(const AlgebraElement<S>& a) const {
        if (a.is_zero()) throw wrong_idempotents_error("zero element has no block");
        int s = -1, t = -1;
        for (auto& [i, c] : a.coords) {
            if (s == -1) {
                s = target_of(i);
                t = source_of(i);
            } else if (s != target_of(i) || t != source_of(i)) {
                throw wrong_idempotents_error("element spans several idempotent blocks");
            }
        }
        return {s, t};  // element of e_s Lambda e_t
    }

    // associativity on all basis triples; radical ideal property
    void verify() const {
        const std::size_t n = basis_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    auto a = basis_element<K>(i), b = basis_element<K>(j), c = basis_element<K>(k);
                    if (mul<K>(mul<K>(a, b), c) != mul<K>(a, mul<K>(b, c)))
                        throw error("structure constants are not associative");
                }
        for (std::size_t i : radical_basis())
            for (std::size_t j = 0; j < n; ++j) {
                for (auto& [k, c] : table(i, j))
                    if (length_of(k) == 0) throw error("radical is not a right ideal");
                for (auto& [k, c] : table(j, i))
                    if (length_of(k) == 0) throw error("radical is not a left ideal");
            }
    }

  private:
    static void validate_path(const Quiver& q, const QuiverPath& p) {
        int at = p.source;
        for (int ai : p.arrows) {
            if (ai < 0 || ai >= static_cast<int>(q.arrows.size()))
                throw malformed_spec_error("bad arrow index in path");
            if (q.arrows[ai].source != at) throw malformed_spec_error("path is not composable");
            at = q.arrows[ai].target;
        }
        if (at != p.target) throw malformed_spec_error("path target mismatch");
    }

    void enumerate_paths() {
        // breadth-first by length; order within a length follows vertex and
        // arrow enumeration order, which keeps everything deterministic
        for (int v = 1; v <= quiver_.num_vertices; ++v) {
            QuiverPath p{v, v, {}};
            path_index_.emplace(p, paths_.size());
            paths_.push_back(p);
        }
        std::size_t level_start = 0;
        for (unsigned len = 1; len < bound_; ++len) {
            std::size_t level_end = paths_.size();
            for (std::size_t i = level_start; i < level_end; ++i) {
                QuiverPath base = paths_[i];
                if (base.length() != len - 1) continue;
                for (std::size_t ai = 0; ai < quiver_.arrows.size(); ++ai) {
                    if (quiver_.arrows[ai].source != base.target) continue;
                    QuiverPath ext = base;
                    ext.arrows.push_back(static_cast<int>(ai));
                    ext.target = quiver_.arrows[ai].target;
                    path_index_.emplace(ext, paths_.size());
                    paths_.push_back(ext);
                }
            }
            level_start = level_end;
        }
    }

    void reduce_relations(const std::vector<Relation<K>>& relations) {
        // span of p * r * q truncated below length m
        std::vector<std::vector<K>> span;
        const std::size_t np = paths_.size();
        for (auto& rel : relations) {
            int rel_src = rel.front().path.source;
            int rel_tgt = rel.front().path.target;
            for (auto& term : rel)
                if (term.path.source != rel_src || term.path.target != rel_tgt)
                    throw not_admissible_error("relation terms differ in source or target");
            for (auto& left : paths_) {
                if (left.source != rel_tgt) continue;  // left factor applied after
                for (auto& right : paths_) {
                    if (right.target != rel_src) continue;  // right factor applied first
                    std::vector<K> vec(np, K(0));
                    bool nonzero = false;
                    for (auto& term : rel) {
                        QuiverPath prod;
                        prod.source = right.source;
                        prod.target = left.target;
                        prod.arrows = right.arrows;
                        prod.arrows.insert(prod.arrows.end(), term.path.arrows.begin(),
                                           term.path.arrows.end());
                        prod.arrows.insert(prod.arrows.end(), left.arrows.begin(),
                                           left.arrows.end());
                        if (prod.length() >= bound_) continue;  // declared zero
                        vec[path_index_.at(prod)] += term.coef;
                        nonzero = true;
                    }
                    if (nonzero) span.push_back(std::move(vec));
                }
            }
        }
        // reduced row echelon form of the span
        Matrix<K> mat(span.size(), np);
        for (std::size_t i = 0; i < span.size(); ++i)
            for (std::size_t j = 0; j < np; ++j) mat(i, j) = span[i][j];
        std::vector<std::size_t> pivots = rref(mat);
        rref_rows_ = Matrix<K>(pivots.size(), np);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            for (std::size_t j = 0; j < np; ++j) rref_rows_(r, j) = mat(r, j);
        pivot_cols_ = pivots;
    }

    void collect_basis() {
        std::vector<bool> is_pivot(paths_.size(), false);
        for (auto p : pivot_cols_) is_pivot[p] = true;
        basis_index_of_path_.assign(paths_.size(), SIZE_MAX);
        for (std::size_t i = 0; i < paths_.size(); ++i) {
            if (is_pivot[i]) continue;
            basis_index_of_path_[i] = basis_.size();
            basis_.push_back(BasisClass{paths_[i]});
            if (paths_[i].length() == 0) idem_index_[paths_[i].source] = basis_.size() - 1;
        }
        // normal form of each path as a combination of basis classes
        normal_forms_.resize(paths_.size());
        for (std::size_t i = 0; i < paths_.size(); ++i) {
            std::vector<K> vec(paths_.size(), K(0));
            vec[i] = K(1);
            for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
                K c = vec[pivot_cols_[r]];
                if (c.is_zero()) continue;
                for (std::size_t j = 0; j < paths_.size(); ++j)
                    vec[j] -= c * rref_rows_(r, j);
            }
            for (std::size_t j = 0; j < paths_.size(); ++j)
                if (!vec[j].is_zero()) normal_forms_[i].emplace_back(basis_index_of_path_[j], vec[j]);
        }
    }

    void build_table() {
        const std::size_t n = basis_.size();
        table_.assign(n * n, {});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const QuiverPath& a = basis_[i].path;
                const QuiverPath& b = basis_[j].path;
                if (b.target != a.source) continue;  // a*b applies b first
                QuiverPath prod;
                prod.source = b.source;
                prod.target = a.target;
                prod.arrows = b.arrows;
                prod.arrows.insert(prod.arrows.end(), a.arrows.begin(), a.arrows.end());
                if (prod.length() >= bound_) continue;
                table_[i * n + j] = normal_forms_[path_index_.at(prod)];
            }
    }

    Quiver quiver_;
    unsigned bound_ = 0;
    std::vector<QuiverPath> paths_;
    std::map<QuiverPath, std::size_t> path_index_;
    Matrix<K> rref_rows_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<BasisClass> basis_;
    std::vector<std::size_t> basis_index_of_path_;
    std::map<int, std::size_t> idem_index_;
    std::vector<std::vector<std::pair<std::size_t, K>>> normal_forms_;
    std::vector<std::vector<std::pair<std::size_t, K>>> table_;
};

// Convenience: the product a*b over the ground field, spec name.
template <class K, class S>
AlgebraElement<S> algebra_mul(const AlgebraBasis<K>& alg, const AlgebraElement<S>& a,
                              const AlgebraElement<S>& b) {
    return alg.mul(a, b);
}

}  // namespace brickwork

#endif
