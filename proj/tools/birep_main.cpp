// Command-line front end: encode, double, iso, recover, sqrt, lipschitz.
//
// Exit codes: 0 success, 1 negative verdict (not isomorphic), 2 input error.
// Machine-readable output goes to stdout or --out; diagnostics go to stderr.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "birep/birep.hpp"

namespace {

using namespace birep;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << text;
}

/// Either kind of representation file; exactly one member is set.
struct LoadedRep {
    std::optional<Representation> graph_rep;
    std::optional<QuiverRep> quiver_rep;
};

LoadedRep load_rep(const std::string& path) {
    const json j = detail::parse_json(read_file(path));
    LoadedRep out;
    if (j.contains("quiver")) {
        out.quiver_rep = quiver_rep_from_json(j);
        validate(*out.quiver_rep);
    } else if (j.contains("graph")) {
        out.graph_rep = rep_from_json(j);
        validate(*out.graph_rep);
    } else {
        throw ParseError("expected a 'graph' or 'quiver' representation", path);
    }
    return out;
}

QuiverRep to_quiver(const LoadedRep& rep) {
    if (rep.quiver_rep) return *rep.quiver_rep;
    return as_quiver_rep(*rep.graph_rep);
}

std::vector<std::string> labels_of(const LoadedRep& rep) {
    if (rep.quiver_rep) return rep.quiver_rep->quiver.vertices;
    return vertex_labels(rep.graph_rep->graph);
}

int cmd_encode(const std::string& rep_path, const std::string& out_path) {
    const QuiverRep rep = to_quiver(load_rep(rep_path));
    auto [pair, layout] = encode_pair(rep);
    const json out = {{"pair", pair_to_json(pair)}, {"layout", layout_to_json(layout)}};
    write_output(out.dump(2) + "\n", out_path);
    return 0;
}

int cmd_double(const std::string& rep_path, const std::string& out_path) {
    const LoadedRep loaded = load_rep(rep_path);
    if (!loaded.graph_rep) throw Error("'double' expects a bidirected-graph representation");
    const DoubledQuiver doubled = underline_graph(loaded.graph_rep->graph);
    const QuiverRep rep = underline_rep(*loaded.graph_rep, doubled);
    write_output(doubled_rep_to_json(rep, doubled).dump(2) + "\n", out_path);
    return 0;
}

Route parse_route(const std::string& route, bool graph_inputs) {
    if (route == "auto") return graph_inputs ? Route::BidirectedDoubled : Route::QuiverDirect;
    if (route == "direct") return Route::QuiverDirect;
    if (route == "pair") return Route::Pair;
    if (route == "doubled") return Route::BidirectedDoubled;
    throw Error("unknown route '" + route + "'");
}

int cmd_iso(const std::string& a_path, const std::string& b_path, const std::string& route_str,
            std::uint64_t seed, double tol, const std::string& out_path) {
    const LoadedRep la = load_rep(a_path);
    const LoadedRep lb = load_rep(b_path);
    const bool graph_inputs = la.graph_rep.has_value();
    if (graph_inputs != lb.graph_rep.has_value())
        throw Error("inputs must both be graph or both be quiver representations");
    const Route route = parse_route(route_str, graph_inputs);

    std::optional<Isomorphism> iso;
    const char* direction = "B -> A";
    if (route == Route::BidirectedDoubled) {
        if (!graph_inputs) throw Error("doubled route expects graph representations");
        iso = decide_iso_bidirected(*la.graph_rep, *lb.graph_rep, seed, tol);
    } else {
        const QuiverRep qa = to_quiver(la);
        const QuiverRep qb = to_quiver(lb);
        if (route == Route::QuiverDirect) {
            iso = decide_iso_quiver(qa, qb, seed, tol);
            direction = "A -> B";
        } else {
            if (qa.quiver != qb.quiver) throw Error("representations live on different quivers");
            if (qa.dims == qb.dims) {
                auto [pa, layout] = encode_pair(qa);
                auto [pb, layout_b] = encode_pair(qb);
                if (auto r = pairs_similar(pa, pb, layout, seed, tol))
                    iso = decode_similarity(*r, layout, tol);
            }
        }
    }
    if (!iso) {
        write_output("not-isomorphic\n", out_path);
        return 1;
    }
    std::cerr << "isomorphism direction: " << direction << "\n";
    write_output(iso_to_json(*iso, labels_of(la)).dump(2) + "\n", out_path);
    return 0;
}

int cmd_recover(const std::string& a_path, const std::string& b_path,
                const std::string& route_str, double tol, const std::string& out_path) {
    const LoadedRep la = load_rep(a_path);
    const LoadedRep lb = load_rep(b_path);
    const bool graph_inputs = la.graph_rep.has_value();
    if (graph_inputs != lb.graph_rep.has_value())
        throw Error("inputs must both be graph or both be quiver representations");
    const Route route = parse_route(route_str, graph_inputs);

    Isomorphism iso;
    double dist = 0;
    double residual = 0;
    if (route == Route::BidirectedDoubled) {
        if (!graph_inputs) throw Error("doubled route expects graph representations");
        iso = recover_near_identity(*la.graph_rep, *lb.graph_rep, tol);
        dist = rep_distance(*la.graph_rep, *lb.graph_rep);
        residual = iso_residual(*lb.graph_rep, *la.graph_rep, iso);
    } else {
        const QuiverRep qa = to_quiver(la);
        const QuiverRep qb = to_quiver(lb);
        iso = recover_near_identity(qa, qb, route, tol);
        dist = rep_distance(qa, qb);
        residual = iso_residual(qb, qa, iso);
    }
    const double dev = deviation(iso);
    json summary = {{"deviation", dev},
                    {"dist", dist},
                    {"residual", residual},
                    {"direction", "B -> A"}};
    summary["ratio"] = dist > 0 ? json(dev / dist) : json(nullptr);
    const json out = {{"isomorphism", iso_to_json(iso, labels_of(la))},
                      {"summary", std::move(summary)}};
    write_output(out.dump(2) + "\n", out_path);
    return 0;
}

int cmd_sqrt(const std::string& in_path, double theta, double tol,
             const std::string& out_path) {
    const CMatrix t = matrix_from_json(detail::parse_json(read_file(in_path)));
    const SqrtResult res = primary_sqrt(t, theta, tol);
    const json out = {{"W", matrix_to_json(res.root)},
                      {"branch_angle", res.branch_angle},
                      {"residual", res.residual},
                      {"commutation", res.commutation}};
    write_output(out.dump(2) + "\n", out_path);
    return 0;
}

int cmd_lipschitz(const std::string& rep_path, const std::vector<double>& eps, int trials,
                  std::uint64_t seed, const std::string& route_str, const std::string& format,
                  double tol, const std::string& out_path) {
    const LoadedRep loaded = load_rep(rep_path);
    if (!loaded.graph_rep) throw Error("'lipschitz' expects a bidirected-graph representation");
    Route route = parse_route(route_str, true);
    for (double e : eps)
        if (e <= 0) throw Error("eps values must be positive");
    const ExperimentReport report =
        run_perturbation_experiment(*loaded.graph_rep, eps, trials, seed, route, tol);
    const ReportFormat fmt = format == "json" ? ReportFormat::Json : ReportFormat::Csv;
    write_output(emit_report(report, fmt), out_path);
    std::cerr << "trials " << report.trials.size() << ", failures " << report.failures.size()
              << ", skipped " << report.skipped << ", K_hat " << report.k_hat << "\n";
    return report.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"representations of bidirected graphs: doubling, pair encoding, "
                 "isomorphism recovery, Lipschitz experiments"};
    app.require_subcommand(1);

    std::string rep_path, a_path, b_path, in_path, out_path;
    std::string route = "auto";
    std::string format = "csv";
    std::uint64_t seed = 0;
    double tol = kIsoResidualTol;
    double theta = 0.0;
    std::vector<double> eps = {1e-3};
    int trials = 20;

    auto* enc = app.add_subcommand("encode", "encode a quiver representation as a matrix pair");
    enc->add_option("--rep", rep_path, "representation file")->required();
    enc->add_option("--out", out_path, "output file (default stdout)");

    auto* dbl = app.add_subcommand("double", "double a bidirected-graph representation");
    dbl->add_option("--rep", rep_path, "representation file")->required();
    dbl->add_option("--out", out_path, "output file (default stdout)");

    auto* iso = app.add_subcommand("iso", "decide isomorphism and emit a witness");
    iso->add_option("--a", a_path, "first representation")->required();
    iso->add_option("--b", b_path, "second representation")->required();
    iso->add_option("--route", route, "auto|direct|pair|doubled");
    iso->add_option("--seed", seed, "sampling seed");
    iso->add_option("--tol", tol, "verification tolerance");
    iso->add_option("--out", out_path, "output file (default stdout)");

    auto* rec = app.add_subcommand("recover", "recover a nearest-to-identity isomorphism B -> A");
    rec->add_option("--a", a_path, "first representation")->required();
    rec->add_option("--b", b_path, "second representation")->required();
    rec->add_option("--route", route, "auto|direct|pair|doubled");
    rec->add_option("--tol", tol, "verification tolerance");
    rec->add_option("--out", out_path, "output file (default stdout)");

    auto* sq = app.add_subcommand("sqrt", "primary matrix square root (debugging aid)");
    sq->add_option("--in", in_path, "matrix file")->required();
    sq->add_option("--theta", theta, "branch angle");
    sq->add_option("--tol", tol, "residual tolerance");
    sq->add_option("--out", out_path, "output file (default stdout)");

    auto* lip = app.add_subcommand("lipschitz", "perturbation experiment");
    lip->add_option("--rep", rep_path, "representation file")->required();
    lip->add_option("--eps", eps, "perturbation scales")->delimiter(',');
    lip->add_option("--trials", trials, "trials per eps");
    lip->add_option("--seed", seed, "master seed");
    lip->add_option("--route", route, "direct|pair|doubled");
    lip->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    lip->add_option("--tol", tol, "verification tolerance");
    lip->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tol <= 0) throw Error("tolerance must be positive");
        if (enc->parsed()) return cmd_encode(rep_path, out_path);
        if (dbl->parsed()) return cmd_double(rep_path, out_path);
        if (iso->parsed()) return cmd_iso(a_path, b_path, route, seed, tol, out_path);
        if (rec->parsed()) return cmd_recover(a_path, b_path, route, tol, out_path);
        if (sq->parsed()) return cmd_sqrt(in_path, theta, tol, out_path);
        if (lip->parsed())
            return cmd_lipschitz(rep_path, eps, trials, seed,
                                 route == "auto" ? "doubled" : route, format, tol, out_path);
    } catch (const NotIsomorphicOrTooFar& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
