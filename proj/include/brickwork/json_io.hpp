#ifndef BRICKWORK_JSON_IO_HPP
#define BRICKWORK_JSON_IO_HPP

// JSON schemas for the config files: algebra presentations, module and
// realization specs, presentation objects, and ditalgebra data.  Parsing is
// strict about structure and delegates scalar syntax to the expression
// parser; emission uses the canonical serializations so identical inputs
// produce byte-identical files.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "brickwork/ditalgebra.hpp"
#include "brickwork/p1.hpp"
#include "brickwork/realization.hpp"

namespace brickwork {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw malformed_spec_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw malformed_spec_error(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << text;
}

namespace detail {

inline std::string scalar_string(const Json& j, const std::string& what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw malformed_spec_error(what + " must be a string or integer");
}

}  // namespace detail

// --------------------------------------------------------------------------
// algebra spec: {field, vertices, arrows, relations, nilpotency_bound}

inline FieldSpec field_of_algebra_file(const Json& j) {
    if (!j.contains("field")) return FieldSpec::rationals();
    return FieldSpec::parse(j.at("field").get<std::string>());
}

template <class K>
AlgebraPresentation<K> parse_algebra_spec(const Json& j, const FieldSpec& fs) {
    AlgebraPresentation<K> p;
    const Json& verts = j.at("vertices");
    if (verts.is_number_integer()) {
        p.quiver.num_vertices = verts.get<int>();
    } else {
        p.quiver.num_vertices = static_cast<int>(verts.size());
        int expect = 1;
        for (auto& v : verts)
            if (v.get<int>() != expect++)
                throw malformed_spec_error("vertices must be 1..n in order");
    }
    for (auto& a : j.at("arrows"))
        p.quiver.arrows.push_back(
            {a.at("name").get<std::string>(), a.at("src").get<int>(), a.at("tgt").get<int>()});
    if (j.contains("relations"))
        for (auto& rel : j.at("relations")) {
            Relation<K> r;
            for (auto& term : rel) {
                RelationTerm<K> t;
                t.coef = parse_scalar<K>(detail::scalar_string(term.at("coef"), "coef"), fs);
                QuiverPath path;
                bool first = true;
                for (auto& name : term.at("path")) {
                    int ai = p.quiver.arrow_index(name.get<std::string>());
                    if (first) path.source = p.quiver.arrows[ai].source;
                    path.target = p.quiver.arrows[ai].target;
                    path.arrows.push_back(ai);
                    first = false;
                }
                t.path = path;
                r.push_back(std::move(t));
            }
            p.relations.push_back(std::move(r));
        }
    p.nilpotency_bound = j.at("nilpotency_bound").get<unsigned>();
    return p;
}

// --------------------------------------------------------------------------
// module spec: {dims:{vertex:dim}, maps:{arrow:[[entries]]}}

template <class K, class S>
Matrix<S> parse_matrix(const Json& rows, const FieldSpec& fs, std::size_t nrows,
                       std::size_t ncols) {
    Matrix<S> m(nrows, ncols);
    if (rows.size() != nrows) throw malformed_spec_error("matrix row count mismatch");
    for (std::size_t i = 0; i < nrows; ++i) {
        const Json& row = rows.at(i);
        if (row.size() != ncols) throw malformed_spec_error("matrix column count mismatch");
        for (std::size_t j = 0; j < ncols; ++j) {
            std::string s = detail::scalar_string(row.at(j), "matrix entry");
            if constexpr (std::is_same_v<S, RatFun<K>>) {
                m(i, j) = parse_ratfun<K>(s, fs);
            } else {
                m(i, j) = parse_scalar<K>(s, fs);
            }
        }
    }
    return m;
}

template <class K, class S>
Representation<S> parse_module_spec(const Json& j, const Quiver& q, const FieldSpec& fs) {
    Representation<S> rep;
    rep.dims.assign(static_cast<std::size_t>(q.num_vertices), 0);
    for (auto& [key, val] : j.at("dims").items())
        rep.dims.at(static_cast<std::size_t>(std::stoi(key) - 1)) = val.template get<std::size_t>();
    rep.arrow_maps.resize(q.arrows.size());
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        auto& a = q.arrows[ai];
        std::size_t nr = rep.dim_at(a.target), nc = rep.dim_at(a.source);
        if (j.at("maps").contains(a.name)) {
            rep.arrow_maps[ai] = parse_matrix<K, S>(j.at("maps").at(a.name), fs, nr, nc);
        } else {
            rep.arrow_maps[ai] = Matrix<S>(nr, nc);
        }
    }
    return rep;
}

// --------------------------------------------------------------------------
// realization spec: {h, dims:{v:rank}, maps:{arrow:[[poly or ratfun strings]]}}

template <class K>
Realization<K> parse_realization_spec(const Json& j, const Quiver& q, const FieldSpec& fs) {
    Realization<K> m;
    if (j.contains("h")) m.h = parse_poly<K>(detail::scalar_string(j.at("h"), "h"), fs);
    auto rep = parse_module_spec<K, RatFun<K>>(j, q, fs);
    m.dims = rep.dims;
    m.arrow_maps = rep.arrow_maps;
    return m;
}

// --------------------------------------------------------------------------
// algebra elements and P1 objects

// linear combinations of path products: terms like "2*b*a - e1"; products
// apply right to left, names are arrows or idempotents e<k>
template <class K, class S>
AlgebraElement<S> parse_algebra_element(const std::string& src, const AlgebraBasis<K>& alg,
                                        const FieldSpec& fs) {
    AlgebraElement<S> acc;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    };
    bool first_term = true;
    while (true) {
        skip_ws();
        if (pos >= src.size()) break;
        K coef(1);
        bool negative = false;
        if (src[pos] == '+' || src[pos] == '-') {
            negative = src[pos] == '-';
            ++pos;
        } else if (!first_term) {
            throw parse_error("expected '+' or '-' in element: " + src);
        }
        first_term = false;
        skip_ws();
        AlgebraElement<S> term = alg.template unit<S>();
        bool saw_factor = false;
        while (true) {
            skip_ws();
            if (pos < src.size() &&
                (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '(')) {
                // numeric factor, possibly a fraction in parentheses
                std::size_t start = pos;
                if (src[pos] == '(') {
                    while (pos < src.size() && src[pos] != ')') ++pos;
                    if (pos >= src.size()) throw parse_error("unterminated '(' in: " + src);
                    ++pos;
                    coef = coef * parse_scalar<K>(src.substr(start + 1, pos - start - 2), fs);
                } else {
                    while (pos < src.size() &&
                           (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '/'))
                        ++pos;
                    coef = coef * parse_scalar<K>(src.substr(start, pos - start), fs);
                }
            } else if (pos < src.size() &&
                       (std::isalpha(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                std::size_t start = pos;
                while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                            src[pos] == '_'))
                    ++pos;
                std::string name = src.substr(start, pos - start);
                AlgebraElement<S> factor;
                if (name.size() > 1 && name[0] == 'e' &&
                    std::all_of(name.begin() + 1, name.end(),
                                [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                    factor = alg.template idempotent<S>(std::stoi(name.substr(1)));
                } else {
                    factor = alg.template arrow_element<S>(name);
                }
                term = alg.mul(term, factor);
            } else {
                throw parse_error("unexpected character in element: " + src);
            }
            saw_factor = true;
            skip_ws();
            if (pos < src.size() && src[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!saw_factor) throw parse_error("empty term in element: " + src);
        S scaled = scalar_cast<S>(negative ? -coef : coef);
        acc = acc + term * scaled;
    }
    return acc;
}

// {P1:[vertices], P2:[vertices], phi:[[algebra-element strings]]}
template <class K, class S>
P1Object<K, S> parse_p1_object(const Json& j, const AlgebraBasis<K>& alg, const FieldSpec& fs) {
    P1Object<K, S> x;
    for (auto& v : j.at("P1")) x.p1.vertices.push_back(v.get<int>());
    for (auto& v : j.at("P2")) x.p2.vertices.push_back(v.get<int>());
    x.phi = LambdaMatrix<K, S>(&alg, x.p1, x.p2);
    const Json& rows = j.at("phi");
    if (rows.size() != x.p2.size()) throw malformed_spec_error("phi row count mismatch");
    for (std::size_t i = 0; i < x.p2.size(); ++i) {
        if (rows.at(i).size() != x.p1.size())
            throw malformed_spec_error("phi column count mismatch");
        for (std::size_t jj = 0; jj < x.p1.size(); ++jj) {
            std::string s = detail::scalar_string(rows.at(i).at(jj), "phi entry");
            x.phi.at(i, jj) = parse_algebra_element<K, S>(s, alg, fs);
        }
    }
    x.phi.validate_blocks();
    x.require_p1();
    return x;
}

// --------------------------------------------------------------------------
// ditalgebra spec

template <class K>
MinDitData<K> parse_dit_spec(const Json& j, const FieldSpec& fs) {
    MinDitData<K> d;
    if (j.contains("h")) d.h = parse_poly<K>(detail::scalar_string(j.at("h"), "h"), fs);
    d.marked = j.at("points").at("marked").get<std::string>();
    for (auto& p : j.at("points").at("unmarked")) d.points.push_back(p.get<std::string>());

    // basis: {"f'|f": [names]}
    for (auto& [key, names] : j.at("basis").items()) {
        auto sep = key.find('|');
        if (sep == std::string::npos)
            throw malformed_spec_error("basis key must look like \"f'|f\": " + key);
        int to = d.point_index(key.substr(0, sep));
        int from = d.point_index(key.substr(sep + 1));
        for (auto& n : names)
            d.symbols.push_back({n.template get<std::string>(), to, from});
    }
    d.delta.resize(d.symbols.size());
    if (j.contains("delta"))
        for (auto& [vname, comps] : j.at("delta").items()) {
            int v = d.symbol_index(vname);
            for (auto& [pairkey, coeff] : comps.items()) {
                auto sep = pairkey.find(',');
                if (sep == std::string::npos)
                    throw malformed_spec_error("delta key must look like \"w2,w1\": " + pairkey);
                int w2 = d.symbol_index(pairkey.substr(0, sep));
                int w1 = d.symbol_index(pairkey.substr(sep + 1));
                d.delta[static_cast<std::size_t>(v)].push_back(
                    {w2, w1, parse_bipoly<K>(detail::scalar_string(coeff, "delta"), fs)});
            }
        }

    if (j.contains("designated")) {
        const Json& des = j.at("designated");
        if (des.contains("z"))
            for (auto& z : des.at("z")) d.z_designated.push_back(d.point_index(z.get<std::string>()));
        if (des.contains("l")) {
            const Json& l = des.at("l");
            const Json& r = des.at("r");
            const Json& u = des.at("u");
            if (l.size() != r.size() || l.size() != u.size())
                throw malformed_spec_error("designated l/r/u lists must have equal length");
            for (std::size_t t = 0; t < l.size(); ++t)
                d.gammas.push_back({d.point_index(l.at(t).get<std::string>()),
                                    d.point_index(r.at(t).get<std::string>()),
                                    d.symbol_index(u.at(t).get<std::string>())});
        }
    }

    if (j.contains("triples") && !j.at("triples").is_null()) {
        d.triples_supplied = true;
        std::map<int, std::vector<typename MinDitData<K>::TripleComponent>> collected;
        for (auto& [vname, comps] : j.at("triples").items()) {
            int v = d.symbol_index(vname);
            for (auto& [key, coeff] : comps.items()) {
                auto s1 = key.find(',');
                auto s2 = key.find(',', s1 + 1);
                if (s1 == std::string::npos || s2 == std::string::npos)
                    throw malformed_spec_error("triple key must look like \"v3,v2,v1\": " + key);
                collected[v].push_back({d.symbol_index(key.substr(0, s1)),
                                        d.symbol_index(key.substr(s1 + 1, s2 - s1 - 1)),
                                        d.symbol_index(key.substr(s2 + 1)),
                                        parse_bipoly<K>(detail::scalar_string(coeff, "triple"), fs)});
            }
        }
        for (int v : d.marked_block()) d.triples.push_back(collected[v]);
    }
    if (j.contains("column_order"))
        for (auto& c : j.at("column_order")) d.preferred_columns.push_back(c.get<std::size_t>());
    return load_ditalgebra(std::move(d));
}

template <class K>
Json emit_dit_spec(const MinDitData<K>& d) {
    Json j;
    j["h"] = BiPoly<K>::from_x_poly(d.h).str();
    j["points"]["marked"] = d.marked;
    j["points"]["unmarked"] = d.points;
    auto point_name = [&](int i) { return i == 0 ? d.marked : d.points[static_cast<std::size_t>(i - 1)]; };
    Json basis = Json::object();
    for (auto& s : d.symbols) {
        std::string key = point_name(s.to) + "|" + point_name(s.from);
        basis[key].push_back(s.name);
    }
    j["basis"] = basis;
    Json delta = Json::object();
    for (std::size_t v = 0; v < d.symbols.size(); ++v) {
        if (d.delta[v].empty()) continue;
        Json comps = Json::object();
        for (auto& c : d.delta[v])
            comps[d.symbols[static_cast<std::size_t>(c.w2)].name + "," +
                  d.symbols[static_cast<std::size_t>(c.w1)].name] = c.coeff.str();
        delta[d.symbols[v].name] = comps;
    }
    j["delta"] = delta;
    Json des = Json::object();
    Json zl = Json::array();
    for (int z : d.z_designated) zl.push_back(point_name(z));
    des["z"] = zl;
    Json l = Json::array(), r = Json::array(), u = Json::array();
    for (auto& g : d.gammas) {
        l.push_back(point_name(g.l));
        r.push_back(point_name(g.r));
        u.push_back(d.symbols[static_cast<std::size_t>(g.u)].name);
    }
    des["l"] = l;
    des["r"] = r;
    des["u"] = u;
    j["designated"] = des;
    if (d.triples_supplied) {
        Json triples = Json::object();
        auto b00 = d.marked_block();
        for (std::size_t i = 0; i < b00.size(); ++i) {
            if (d.triples[i].empty()) continue;
            Json comps = Json::object();
            for (auto& t : d.triples[i])
                comps[d.symbols[static_cast<std::size_t>(t.v3)].name + "," +
                      d.symbols[static_cast<std::size_t>(t.v2)].name + "," +
                      d.symbols[static_cast<std::size_t>(t.v1)].name] = t.coeff.str();
            triples[d.symbols[static_cast<std::size_t>(b00[i])].name] = comps;
        }
        j["triples"] = triples;
    }
    if (!d.preferred_columns.empty()) j["column_order"] = d.preferred_columns;
    return j;
}

}  // namespace brickwork

#endif
