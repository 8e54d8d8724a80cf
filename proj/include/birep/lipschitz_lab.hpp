#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "birep/iso_solver.hpp"

namespace birep {

/// Trials whose representation distance falls below this are skipped to
/// avoid 0/0 ratios.
inline constexpr double kMinTrialDistance = 1e-14;

/// One perturb-and-recover trial.
struct TrialRecord {
    std::uint64_t seed = 0;
    double eps = 0;       // perturbation scale
    double dist = 0;      // ||B - A||
    double dev = 0;       // deviation of the recovered isomorphism
    double ratio = 0;     // dev / dist
    double residual = 0;  // verification residual
    Route route = Route::QuiverDirect;

    bool operator==(const TrialRecord&) const = default;
};

struct FailedTrial {
    std::uint64_t seed = 0;
    double eps = 0;
    std::string reason;

    bool operator==(const FailedTrial&) const = default;
};

struct ExperimentReport {
    std::string description;
    std::vector<TrialRecord> trials;
    std::vector<FailedTrial> failures;
    int skipped = 0;
    double k_hat = 0;     // max ratio
    double k_median = 0;  // quantiles of the ratio distribution
    double k_p90 = 0;
    double wall_seconds = 0;

    bool operator==(const ExperimentReport&) const = default;
};

/// Per-vertex record of the explicit constant chain behind the 11-delta
/// bound: deviations of the components, their inverses, the Gram products
/// T_i = Psi_{i*}^T Psi_i, their square roots, and the corrected components.
struct ConstantChainReport {
    double delta = 0;
    std::vector<double> component_dev;  // ||Psi_v - I||, one per doubled vertex
    std::vector<double> inverse_dev;    // ||Psi_v^{-1} - I||
    std::vector<double> gram_dev;       // ||T_i - I||, one per base vertex
    std::vector<double> root_dev;       // ||W_i - I||
    std::vector<double> corrected_dev;  // ||phi_i - I||
    bool inverse_bound = false;         // all ||Psi_v^{-1} - I|| <= 2 ||Psi_v - I||
    bool gram_bound = false;            // all ||T_i - I|| <= 3 delta
    bool root_bound = false;            // all ||W_i - I|| <= 3 delta
    bool corrected_bound = false;       // all ||phi_i - I|| <= 11 delta

    bool all_bounds() const {
        return inverse_bound && gram_bound && root_bound && corrected_bound;
    }
};

namespace detail {

inline double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(q * n)));
    return values[rank - 1];
}

inline void finalize_report(ExperimentReport& report) {
    std::vector<double> ratios;
    ratios.reserve(report.trials.size());
    for (const TrialRecord& t : report.trials) ratios.push_back(t.ratio);
    report.k_hat = ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
    report.k_median = quantile(ratios, 0.5);
    report.k_p90 = quantile(ratios, 0.9);
}

}  // namespace detail

/// Perturbs A by exact near-identity isomorphisms of scale eps, recovers a
/// nearest-to-identity isomorphism B -> A via the chosen route, and records
/// deviation-to-distance ratios. Failures are recorded, never thrown; trials
/// with dist < 1e-14 are skipped. Deterministic given the master seed.
inline ExperimentReport run_perturbation_experiment(const Representation& a,
                                                    const std::vector<double>& eps_values,
                                                    int trials_per_eps, std::uint64_t seed,
                                                    Route route,
                                                    double tol = kIsoResidualTol) {
    validate(a);
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.description = "t=" + std::to_string(a.graph.vertex_count) +
                         " edges=" + std::to_string(a.graph.edges.size()) +
                         " route=" + route_name(route);
    QuiverRep qa;
    if (route != Route::BidirectedDoubled) qa = as_quiver_rep(a);

    std::uint64_t trial_index = 0;
    for (double eps : eps_values) {
        for (int j = 0; j < trials_per_eps; ++j, ++trial_index) {
            const std::uint64_t tseed = mix_seed(seed, trial_index);
            const Isomorphism phi = random_near_identity_iso(a.dims, eps, tseed);
            const Representation b = apply_isomorphism(a, phi);
            const double dist = rep_distance(a, b);
            if (dist < kMinTrialDistance) {
                ++report.skipped;
                continue;
            }
            try {
                Isomorphism recovered;
                if (route == Route::BidirectedDoubled) {
                    recovered = recover_near_identity(a, b, tol);
                } else {
                    const QuiverRep qb{qa.quiver, qa.dims, b.matrices};
                    recovered = recover_near_identity(qa, qb, route, tol);
                }
                TrialRecord rec;
                rec.seed = tseed;
                rec.eps = eps;
                rec.dist = dist;
                rec.dev = deviation(recovered);
                rec.ratio = rec.dev / dist;
                rec.residual = route == Route::BidirectedDoubled
                                   ? iso_residual(b, a, recovered)
                                   : iso_residual(QuiverRep{qa.quiver, qa.dims, b.matrices},
                                                  qa, recovered);
                rec.route = route;
                report.trials.push_back(rec);
            } catch (const Error& e) {
                report.failures.push_back({tseed, eps, e.what()});
            }
        }
    }
    detail::finalize_report(report);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Evaluates the proof's explicit inequalities on an isomorphism of doubled
/// representations (component at i, then at i*, for i = 1..t). All flags are
/// expected to hold whenever delta <= 0.01.
inline ConstantChainReport verify_constant_chain(const Isomorphism& psi, int base_vertex_count,
                                                 double tol = kSqrtTol) {
    const auto t = static_cast<std::size_t>(base_vertex_count);
    if (psi.mats.size() != 2 * t)
        throw ShapeMismatch("expected one component per doubled vertex");
    ConstantChainReport report;
    for (const CMatrix& s : psi.mats) {
        report.component_dev.push_back(identity_distance(s));
        report.inverse_dev.push_back(identity_distance(inverse(s)));
        report.delta += report.component_dev.back();
    }
    std::vector<CMatrix> grams;
    grams.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        grams.push_back(psi.mats[i + t].transpose() * psi.mats[i]);
    const std::vector<SqrtResult> roots = blockwise_primary_sqrt(grams, tol);
    for (std::size_t i = 0; i < t; ++i) {
        report.gram_dev.push_back(identity_distance(grams[i]));
        report.root_dev.push_back(identity_distance(roots[i].root));
        report.corrected_dev.push_back(
            identity_distance(inverse_transpose(psi.mats[i + t]) * roots[i].root));
    }
    report.inverse_bound = true;
    for (std::size_t v = 0; v < psi.mats.size(); ++v)
        report.inverse_bound =
            report.inverse_bound && report.inverse_dev[v] <= 2.0 * report.component_dev[v];
    auto all_below = [](const std::vector<double>& xs, double bound) {
        return std::all_of(xs.begin(), xs.end(), [bound](double x) { return x <= bound; });
    };
    report.gram_bound = all_below(report.gram_dev, 3.0 * report.delta);
    report.root_bound = all_below(report.root_dev, 3.0 * report.delta);
    report.corrected_bound = all_below(report.corrected_dev, 11.0 * report.delta);
    return report;
}

/// One-vertex scenario: r directed loops and t-r undirected loops carrying
/// A_1..A_t. Runs the perturbation experiment on the doubled route and folds
/// into each trial's residual the direct check of the similarity equations
/// S^{-1} A_i S = B_i (i <= r) and congruence equations S^T A_i S = B_i
/// (i > r) for the recovered S.
inline ExperimentReport theorem1_scenario(const std::vector<CMatrix>& mats, int r, double eps,
                                          int trials, std::uint64_t seed,
                                          double tol = kIsoResidualTol) {
    const int t = static_cast<int>(mats.size());
    if (r < 0 || r > t) throw Error("r must lie in 0..t");
    const Eigen::Index n = mats.empty() ? 0 : mats[0].rows();
    for (const CMatrix& m : mats)
        if (m.rows() != n || m.cols() != n)
            throw ShapeMismatch("all loop matrices must be square of equal size");

    BidirectedGraph graph;
    graph.vertex_count = 1;
    Representation a;
    for (int i = 0; i < t; ++i) {
        const std::string id = "m" + std::to_string(i + 1);
        graph.edges.push_back(
            {id, 1, 1, i < r ? EdgeKind::Directed : EdgeKind::Undirected});
        a.matrices[id] = mats[static_cast<std::size_t>(i)];
    }
    a.graph = graph;
    a.dims = {static_cast<int>(n)};
    validate(a);

    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.description = "theorem1 t=" + std::to_string(t) + " r=" + std::to_string(r) +
                         " n=" + std::to_string(n);
    for (int j = 0; j < trials; ++j) {
        const std::uint64_t tseed = mix_seed(seed, static_cast<std::uint64_t>(j));
        const Isomorphism phi = random_near_identity_iso(a.dims, eps, tseed);
        const Representation b = apply_isomorphism(a, phi);
        const double dist = rep_distance(a, b);
        if (dist < kMinTrialDistance) {
            ++report.skipped;
            continue;
        }
        try {
            const Isomorphism recovered = recover_near_identity(a, b, tol);
            const CMatrix& s = recovered.mats[0];
            const CMatrix sinv = inverse(s);
            double eq_residual = 0.0;
            double scale = 0.0;
            for (int i = 0; i < t; ++i) {
                const std::string id = "m" + std::to_string(i + 1);
                const CMatrix& ai = a.matrices.at(id);
                const CMatrix& bi = b.matrices.at(id);
                scale += bi.norm();
                if (i < r)
                    eq_residual += (sinv * ai * s - bi).norm();
                else
                    eq_residual += (s.transpose() * ai * s - bi).norm();
            }
            eq_residual /= std::max(1.0, scale);
            TrialRecord rec;
            rec.seed = tseed;
            rec.eps = eps;
            rec.dist = dist;
            rec.dev = deviation(recovered);
            rec.ratio = rec.dev / dist;
            rec.residual = std::max(iso_residual(b, a, recovered), eq_residual);
            rec.route = Route::BidirectedDoubled;
            report.trials.push_back(rec);
        } catch (const Error& e) {
            report.failures.push_back({tseed, eps, e.what()});
        }
    }
    detail::finalize_report(report);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// --- report serialization ---

enum class ReportFormat { Csv, Json };

inline Route route_from_name(const std::string& name) {
    if (name == "quiver-direct") return Route::QuiverDirect;
    if (name == "pair") return Route::Pair;
    if (name == "bidirected-doubled") return Route::BidirectedDoubled;
    throw ParseError("unknown route '" + name + "'", "route");
}

inline nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json trials = nlohmann::json::array();
    for (const TrialRecord& t : report.trials)
        trials.push_back({{"seed", t.seed},
                          {"eps", t.eps},
                          {"dist", t.dist},
                          {"dev", t.dev},
                          {"ratio", t.ratio},
                          {"residual", t.residual},
                          {"route", route_name(t.route)}});
    nlohmann::json failures = nlohmann::json::array();
    for (const FailedTrial& f : report.failures)
        failures.push_back({{"seed", f.seed}, {"eps", f.eps}, {"reason", f.reason}});
    return {{"description", report.description},
            {"trials", std::move(trials)},
            {"failures", std::move(failures)},
            {"skipped", report.skipped},
            {"k_hat", report.k_hat},
            {"k_median", report.k_median},
            {"k_p90", report.k_p90},
            {"wall_seconds", report.wall_seconds}};
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport report;
    try {
        report.description = j.at("description").get<std::string>();
        for (const auto& t : j.at("trials")) {
            TrialRecord rec;
            rec.seed = t.at("seed").get<std::uint64_t>();
            rec.eps = t.at("eps").get<double>();
            rec.dist = t.at("dist").get<double>();
            rec.dev = t.at("dev").get<double>();
            rec.ratio = t.at("ratio").get<double>();
            rec.residual = t.at("residual").get<double>();
            rec.route = route_from_name(t.at("route").get<std::string>());
            report.trials.push_back(rec);
        }
        for (const auto& f : j.at("failures"))
            report.failures.push_back({f.at("seed").get<std::uint64_t>(),
                                       f.at("eps").get<double>(),
                                       f.at("reason").get<std::string>()});
        report.skipped = j.at("skipped").get<int>();
        report.k_hat = j.at("k_hat").get<double>();
        report.k_median = j.at("k_median").get<double>();
        report.k_p90 = j.at("k_p90").get<double>();
        report.wall_seconds = j.at("wall_seconds").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), "report");
    }
    return report;
}

/// CSV rows carry one trial each under the fixed header; JSON carries the
/// full structure including failures and quantiles.
inline std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) return report_to_json(report).dump(2) + "\n";
    std::string out = "seed,eps,dist,dev,ratio,residual,route\n";
    char line[256];
    for (const TrialRecord& t : report.trials) {
        std::snprintf(line, sizeof(line), "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                      static_cast<unsigned long long>(t.seed), t.eps, t.dist, t.dev, t.ratio,
                      t.residual, route_name(t.route));
        out += line;
    }
    return out;
}

}  // namespace birep
