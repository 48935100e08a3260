// Command line front end: configuration loading, dispatch, and report
// emission for the whole pipeline.
//
//   brickwork algebra check    --algebra a.json
//   brickwork p1 decompose     --algebra a.json --source x.json [--target y.json]
//   brickwork family scan      --algebra a.json --realization m.json --count 20
//   brickwork family verdict   --algebra a.json --realization m.json --count 20
//   brickwork dit analyze      spec.json --samples 20
//   brickwork dit normalize    spec.json [--emit out.json]
//   brickwork dit factor       spec.json --row i [--demand "x^2"]
//
// Exit codes: 0 success (and CONSISTENT verdicts), 1 validation or usage
// errors, 2 an INCONSISTENT verdict.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brickwork/json_io.hpp"

using namespace brickwork;

namespace {

struct Options {
    std::string field = "Q";
    std::string algebra_path;
    std::string realization_path;
    std::string source_path;
    std::string target_path;
    std::string dit_path;
    std::string out_path;
    std::string emit_path;
    std::string format = "json";
    std::size_t count = 20;
    std::size_t samples = 20;
    std::size_t row = 0;
    std::uint64_t seed = 1;
    std::vector<std::string> demands;
};

void emit_report(const Options& opt, const Json& report, const std::string& summary) {
    std::string payload = opt.format == "json" ? report.dump(2) + "\n" : summary;
    if (opt.out_path.empty()) {
        std::cout << payload;
    } else {
        write_text_file(opt.out_path, payload);
    }
}

template <class K>
std::pair<AlgebraBasis<K>, std::vector<Relation<K>>> load_algebra(const Options& opt,
                                                                  const FieldSpec& fs) {
    Json j = read_json_file(opt.algebra_path);
    auto pres = parse_algebra_spec<K>(j, fs);
    return {AlgebraBasis<K>::build(pres), pres.relations};
}

template <class K>
int run_algebra_check(const Options& opt, const FieldSpec& fs) {
    auto [alg, relations] = load_algebra<K>(opt, fs);
    alg.verify();
    Json report;
    report["command"] = "algebra check";
    report["field"] = fs.str();
    report["input"] = opt.algebra_path;
    report["dimension"] = alg.dim();
    report["radical_dimension"] = alg.radical_basis().size();
    report["connected"] = alg.quiver().is_connected();
    Json blocks = Json::object();
    for (int s = 1; s <= alg.quiver().num_vertices; ++s)
        for (int t = 1; t <= alg.quiver().num_vertices; ++t) {
            auto blk = alg.block(s, t);
            if (!blk.empty())
                blocks["e" + std::to_string(s) + ".e" + std::to_string(t)] = blk.size();
        }
    report["hom_blocks"] = blocks;
    report["associative"] = true;  // verify() would have thrown
    Json projectives = Json::object();
    for (int t = 1; t <= alg.quiver().num_vertices; ++t) {
        auto p = projective_module(alg, t);
        Json dims = Json::array();
        for (auto d : p.dims) dims.push_back(d);
        projectives["P" + std::to_string(t)] = dims;
    }
    report["projective_dims"] = projectives;

    std::ostringstream text;
    text << "algebra check: dim " << alg.dim() << ", radical dim " << alg.radical_basis().size()
         << "\n";
    emit_report(opt, report, text.str());
    if (!alg.quiver().is_connected())
        std::cerr << "warning: quiver is not connected (the theory assumes it)\n";
    return 0;
}

template <class K>
int run_p1_decompose(const Options& opt, const FieldSpec& fs) {
    auto [alg, relations] = load_algebra<K>(opt, fs);
    auto x = parse_p1_object<K, K>(read_json_file(opt.source_path), alg, fs);
    auto y = opt.target_path.empty()
                 ? x
                 : parse_p1_object<K, K>(read_json_file(opt.target_path), alg, fs);

    auto homs = p1_hom(alg, x, y);
    auto zc = zero_coker_subspace(alg, x, y);
    Json report;
    report["command"] = "p1 decompose";
    report["field"] = fs.str();
    report["hom_dimension"] = homs.size();
    report["zero_cokernel_dimension"] = zc.size();
    Json items = Json::array();
    for (std::size_t i = 0; i < zc.size(); ++i) {
        auto dec = canonical_decomposition(alg, x, y, zc[i]);
        bool ok = recompose(alg, x, y, dec) == zc[i];
        Json item;
        item["basis_index"] = i;
        item["gamma_terms"] = dec.gamma_terms.size();
        item["zero_object_terms"] = dec.zero_terms.size();
        item["recomposes"] = ok;
        items.push_back(item);
        if (!ok) throw error("decomposition failed to recompose");
    }
    report["decompositions"] = items;

    std::ostringstream text;
    text << "p1 decompose: hom dim " << homs.size() << ", zero-cokernel subspace dim "
         << zc.size() << ", all decompositions recompose exactly\n";
    emit_report(opt, report, text.str());
    return 0;
}

template <class K>
Json family_report_json(const FamilyReport<K>& report) {
    Json samples = Json::array();
    for (std::size_t i = 0; i < report.lambdas.size(); ++i) {
        Json s;
        s["lambda"] = report.lambdas[i].str();
        s["end_dim"] = report.end_dims[i];
        s["brick"] = static_cast<bool>(report.bricks[i]);
        samples.push_back(s);
    }
    Json j;
    j["module_dim"] = report.module_dim;
    j["constant_family"] = report.constant_family;
    j["samples"] = samples;
    j["brick_count"] = report.brick_count();
    j["all_sampled_bricks"] = report.all_sampled_bricks();
    j["some_sampled_brick"] = report.some_sampled_brick();
    if (report.has_generic_side) {
        j["generic_end_dim"] = report.generic_end_dim;
        j["generic_brick"] = report.generic_brick;
        j["verdict"] = verdict_name(report.verdict);
    }
    return j;
}

template <class K>
int run_family(const Options& opt, const FieldSpec& fs, bool want_verdict) {
    auto [alg, relations] = load_algebra<K>(opt, fs);
    auto m = parse_realization_spec<K>(read_json_file(opt.realization_path), alg.quiver(), fs);
    validate_realization(alg, relations, m);
    FamilyReport<K> report = want_verdict ? theorem_verdict(alg, m, opt.count, fs)
                                          : brick_scan(alg, m, opt.count, fs);
    Json j = family_report_json(report);
    j["command"] = want_verdict ? "family verdict" : "family scan";
    j["field"] = fs.str();
    j["sample_count"] = opt.count;

    std::ostringstream text;
    text << (want_verdict ? "family verdict: " : "family scan: ") << report.brick_count() << "/"
         << report.lambdas.size() << " sampled fibres are bricks";
    if (report.constant_family) text << " (constant family: all fibres isomorphic)";
    if (report.has_generic_side) {
        text << "; generic End dimension " << report.generic_end_dim << "; "
             << verdict_name(report.verdict);
    }
    text << "\n";
    emit_report(opt, j, text.str());
    return want_verdict && report.verdict == Verdict::inconsistent ? 2 : 0;
}

template <class K>
int run_dit_analyze(const Options& opt, const FieldSpec& fs) {
    auto d = parse_dit_spec<K>(read_json_file(opt.dit_path), fs);
    auto cm = coefficient_matrices(d);
    auto rank = rank_criterion(d, opt.samples, fs);
    bool symbolic = solve_brick_equations_symbolic(d).has_value();

    Json j;
    j["command"] = "dit analyze";
    j["field"] = fs.str();
    j["c0"] = rank.c0;
    j["c1"] = cm.columns.size();
    j["exact_rank"] = rank.exact_rank;
    j["generic_brick_flag"] = rank.generic_brick_flag;
    j["symbolic_system_solvable"] = symbolic;
    Json samples = Json::array();
    for (std::size_t i = 0; i < rank.sampled.size(); ++i) {
        Json s;
        s["lambda"] = rank.sampled[i].str();
        s["rank"] = rank.sampled_ranks[i];
        samples.push_back(s);
    }
    j["samples"] = samples;
    Json exc = Json::array();
    for (auto& l : rank.exceptional) exc.push_back(l.str());
    j["exceptional"] = exc;
    j["normal"] = is_normal(d);
    j["warnings"] = d.warnings;

    std::ostringstream text;
    text << "dit analyze: rank " << rank.exact_rank << " of c0 = " << rank.c0
         << "; generic brick flag " << (rank.generic_brick_flag ? "true" : "false") << "; "
         << rank.exceptional.size() << " exceptional sample points\n";
    emit_report(opt, j, text.str());
    return 0;
}

template <class K>
int run_dit_normalize(const Options& opt, const FieldSpec& fs) {
    auto d = parse_dit_spec<K>(read_json_file(opt.dit_path), fs);
    auto res = normalize_by_localization(d);
    Json j;
    j["command"] = "dit normalize";
    j["field"] = fs.str();
    j["already_normal"] =
        res.localized_at.is_one() &&
        res.transform == Matrix<Poly<RatFun<K>>>::identity(res.transform.rows());
    j["localized_at"] = BiPoly<K>::from_x_poly(res.localized_at).str();
    j["column_permutation"] = res.column_permutation;
    j["rescaling_exponents"] = res.rescaling_exponents;
    Json transform = Json::array();
    for (std::size_t i = 0; i < res.transform.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t jj = 0; jj < res.transform.cols(); ++jj)
            row.push_back(res.transform(i, jj).str());
        transform.push_back(row);
    }
    j["transform"] = transform;
    j["normal"] = is_normal(res.data);
    j["data"] = emit_dit_spec(res.data);

    if (!opt.emit_path.empty()) write_text_file(opt.emit_path, j["data"].dump(2) + "\n");

    std::ostringstream text;
    text << "dit normalize: localized at g = " << BiPoly<K>::from_x_poly(res.localized_at).str()
         << "; coefficient matrix is now normal\n";
    emit_report(opt, j, text.str());
    return 0;
}

template <class K>
BasisElt<K> parse_demand(const std::string& s, const FieldSpec& fs) {
    auto expansion = expand_basis(parse_ratfun<K>(s, fs), fs);
    if (expansion.size() != 1 || !expansion[0].second.is_one())
        throw malformed_spec_error("demand must be a single basis element: " + s);
    return expansion[0].first;
}

template <class K>
int run_dit_factor(const Options& opt, const FieldSpec& fs) {
    auto d = parse_dit_spec<K>(read_json_file(opt.dit_path), fs);
    std::vector<BasisElt<K>> demands;
    for (auto& s : opt.demands) demands.push_back(parse_demand<K>(s, fs));
    if (demands.empty()) demands.push_back(BasisElt<K>::monomial(0));

    auto expr = factor_radical_generic(d, opt.row, LazyLinearMap<K>::identity(), demands, fs);
    auto cm = coefficient_matrices(d);
    Json j;
    j["command"] = "dit factor";
    j["field"] = fs.str();
    j["row"] = opt.row;
    j["row_symbol"] = d.symbols[static_cast<std::size_t>(cm.rows[opt.row])].name;
    Json dem = Json::array();
    for (auto& z : demands) dem.push_back(z.str());
    j["demands"] = dem;
    Json terms = Json::array();
    for (auto& term : expr.terms) {
        Json t;
        t["coefficient"] = term.coefficient.str();
        t["route"] = term.column.is_triple ? "designated-morphism" : "zero-object";
        t["v2"] = d.symbols[static_cast<std::size_t>(term.column.v2)].name;
        if (term.column.is_triple)
            t["u"] = d.symbols[static_cast<std::size_t>(term.column.mid)].name;
        t["v1"] = d.symbols[static_cast<std::size_t>(term.column.v1)].name;
        Json values = Json::object();
        for (auto& z : demands) values[z.str()] = term.inner.at(z).str();
        t["inner_values"] = values;
        terms.push_back(t);
    }
    j["terms"] = terms;
    j["verified"] = true;  // factor_radical_generic throws otherwise

    std::ostringstream text;
    text << "dit factor: row " << opt.row << " factors into " << expr.terms.size()
         << " composite terms; recomposition verified on " << demands.size() << " demands\n";
    emit_report(opt, j, text.str());
    return 0;
}

template <class K>
int dispatch_typed(const std::string& command, const Options& opt, const FieldSpec& fs) {
    if (command == "algebra check") return run_algebra_check<K>(opt, fs);
    if (command == "p1 decompose") return run_p1_decompose<K>(opt, fs);
    if (command == "family scan") return run_family<K>(opt, fs, false);
    if (command == "family verdict") return run_family<K>(opt, fs, true);
    if (command == "dit analyze") return run_dit_analyze<K>(opt, fs);
    if (command == "dit normalize") return run_dit_normalize<K>(opt, fs);
    if (command == "dit factor") return run_dit_factor<K>(opt, fs);
    throw malformed_spec_error("unknown command: " + command);
}

int dispatch(const std::string& command, const Options& opt) {
    FieldSpec fs = FieldSpec::parse(opt.field);
    if (fs.kind == FieldSpec::Kind::rationals) return dispatch_typed<Rational>(command, opt, fs);
    return dispatch_typed<PrimeField>(command, opt, fs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with projective presentations, one-parameter families of "
                 "bricks, and minimal ditalgebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--field", opt.field, "ground field: Q or Fp:<p>")->capture_default_str();
    app.add_option("--out", opt.out_path, "write the report to a file instead of stdout");
    app.add_option("--format", opt.format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for randomized suites")->capture_default_str();

    auto* algebra = app.add_subcommand("algebra", "path algebra commands")->require_subcommand(1);
    auto* algebra_check = algebra->add_subcommand("check", "build and validate an algebra spec");
    algebra_check->add_option("--algebra", opt.algebra_path, "algebra spec file")->required();

    auto* p1 = app.add_subcommand("p1", "projective presentation commands")->require_subcommand(1);
    auto* p1_decompose = p1->add_subcommand(
        "decompose", "decompose the zero-cokernel morphisms between two objects");
    p1_decompose->add_option("--algebra", opt.algebra_path, "algebra spec file")->required();
    p1_decompose->add_option("--source", opt.source_path, "source presentation object")->required();
    p1_decompose->add_option("--target", opt.target_path,
                             "target presentation object (default: source)");

    auto* family =
        app.add_subcommand("family", "one-parameter family commands")->require_subcommand(1);
    auto* family_scan = family->add_subcommand("scan", "sample the family and test for bricks");
    auto* family_verdict =
        family->add_subcommand("verdict", "compare the generic side against the sampled family");
    for (auto* cmd : {family_scan, family_verdict}) {
        cmd->add_option("--algebra", opt.algebra_path, "algebra spec file")->required();
        cmd->add_option("--realization", opt.realization_path, "realization spec file")->required();
        cmd->add_option("--count", opt.count, "number of sample points")->capture_default_str();
    }

    auto* dit = app.add_subcommand("dit", "minimal ditalgebra commands")->require_subcommand(1);
    auto* dit_analyze = dit->add_subcommand("analyze", "rank criterion and equation systems");
    dit_analyze->add_option("spec", opt.dit_path, "ditalgebra spec file")->required();
    dit_analyze->add_option("--samples", opt.samples, "number of sample points")
        ->capture_default_str();
    auto* dit_normalize = dit->add_subcommand("normalize", "normalize by localization");
    dit_normalize->add_option("spec", opt.dit_path, "ditalgebra spec file")->required();
    dit_normalize->add_option("--emit", opt.emit_path, "also write the normalized spec here");
    auto* dit_factor = dit->add_subcommand("factor", "factor a generic radical endomorphism");
    dit_factor->add_option("spec", opt.dit_path, "ditalgebra spec file")->required();
    dit_factor->add_option("--row", opt.row, "marked-block row to factor")->required();
    dit_factor->add_option("--demand", opt.demands,
                           "basis elements to verify on (e.g. \"x^2\", \"1/(x-2)\")");

    for (auto* group : app.get_subcommands({})) {
        group->fallthrough();
        for (auto* leaf : group->get_subcommands({})) leaf->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage errors
    }

    std::string command;
    if (algebra_check->parsed()) command = "algebra check";
    if (p1_decompose->parsed()) command = "p1 decompose";
    if (family_scan->parsed()) command = "family scan";
    if (family_verdict->parsed()) command = "family verdict";
    if (dit_analyze->parsed()) command = "dit analyze";
    if (dit_normalize->parsed()) command = "dit normalize";
    if (dit_factor->parsed()) command = "dit factor";

    try {
        return dispatch(command, opt);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
