#include "rds/runner.hpp"

#include "rds/analysis.hpp"
#include "rds/ensemble.hpp"
#include "rds/errors.hpp"
#include "rds/pullback.hpp"
#include "rds/quadrature.hpp"
#include "rds/subperiod.hpp"
#include "rds/verdict.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace rds::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

class CsvBuilder {
public:
    CsvBuilder(const std::string& cmd, std::initializer_list<const char*> columns) {
        text_ = fmt::format("# schema: rds_sync/{}/v1\n", cmd);
        bool first = true;
        for (const char* c : columns) {
            text_ += first ? "" : ",";
            text_ += c;
            first = false;
        }
        text_ += '\n';
    }

    template <class... Ts>
    void row(const Ts&... values) {
        bool first = true;
        ((text_ += (first ? "" : ","), text_ += csv_field(fmt::format("{}", values)), first = false), ...);
        text_ += '\n';
    }

    const std::string& str() const { return text_; }

private:
    std::string text_;
};

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{}", i ? ";" : "", v[i]);
    return out;
}

VerdictConfig verdict_config(const ExperimentConfig& c) {
    VerdictConfig v;
    v.seed = c.effective_seed();
    v.subperiods = {c.subperiod_grid, c.subperiod_tol, c.subperiod_exact};
    v.quad_tol = c.quad_tol;
    v.n_sources = c.access_sources;
    v.n_arcs = c.access_arcs;
    v.access = {c.arc_radius, c.access_horizon, c.access_samples};
    v.n_pairs = c.n_pairs;
    v.contract.horizon = c.contract_horizon;
    v.contract.n_samples = c.contract_samples;
    v.lyapunov_steps = c.lyapunov_steps;
    v.lyapunov_samples = c.lyapunov_samples;
    return v;
}

std::vector<PointPair> contract_pairs(const ExperimentConfig& c) {
    auto pairs = low_discrepancy_pairs(c.n_pairs);
    pairs.emplace_back(CirclePoint(0.0), CirclePoint(0.5));
    return pairs;
}

std::string run_simulate(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    TrajectoryEnsemble ens = TrajectoryEnsemble::equispaced(c.simulate_points);
    const NoiseStream omega(c.effective_seed(), stream_id_for(0x73696d756c617465ULL, 0));
    evolve_ensemble(sys, omega, ens, c.simulate_steps, c.record_every, policy);
    CsvBuilder csv("simulate", {"t", "diameter"});
    for (const DiameterSample& d : ens.diameter_history) csv.row(d.n, d.diameter);
    return csv.str();
}

std::string run_lyapunov(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    const QuadratureResult quad = lyapunov_quadrature_detailed(sys.lift, {.tol = c.quad_tol});
    const LyapunovEstimate mc = lyapunov_mc(sys, c.lyapunov_steps, c.lyapunov_samples, c.effective_seed(), policy);
    if (std::fabs(mc.estimate.value - quad.value) > 5.0 * mc.estimate.std_error + 10.0 * c.quad_tol)
        throw ConsistencyError(fmt::format("Lyapunov exponent mismatch: quadrature {} vs Monte Carlo {} +- {}",
                                           quad.value, mc.estimate.value, mc.estimate.std_error));
    CsvBuilder csv("lyapunov", {"method", "n_steps", "n_samples", "value", "stderr"});
    csv.row("quadrature", "", "", quad.value, quad.error_bound);
    csv.row("monte_carlo", c.lyapunov_steps, mc.estimate.n_samples, mc.estimate.value, mc.estimate.std_error);
    return csv.str();
}

std::string run_subperiods(const ExperimentConfig& c) {
    const SubperiodReport r =
        detect_subperiods(c.lift.build(), {c.subperiod_grid, c.subperiod_tol, c.subperiod_exact});
    const char* method = r.method == SubperiodReport::Method::ExactFourier ? "exact_fourier" : "grid_check";
    CsvBuilder csv("subperiods", {"method", "least_period_count", "subperiod"});
    if (r.is_continuum())
        csv.row(method, "inf", "all");
    else if (r.subperiods.empty())
        csv.row(method, r.least_period_count, "");
    else
        for (double s : r.subperiods) csv.row(method, r.least_period_count, s);
    return csv.str();
}

std::string run_contract(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    ContractibilityOptions opts;
    opts.horizon = c.contract_horizon;
    opts.n_samples = c.contract_samples;
    const auto results = contractibility_test(sys, contract_pairs(c), opts, c.effective_seed(), policy);
    CsvBuilder csv("contract",
                   {"pair_id", "x0", "y0", "p_contract", "stderr", "min_dist_q10", "min_dist_q50", "min_dist_q90"});
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        csv.row(i, r.pair.first.pos(), r.pair.second.pos(), r.probability.value, r.probability.std_error,
                r.min_dist_q10, r.min_dist_q50, r.min_dist_q90);
    }
    return csv.str();
}

std::string run_access(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    const AccessibilityMatrix m = accessibility_probe(sys, c.access_sources, c.access_arcs,
                                                      {c.arc_radius, c.access_horizon, c.access_samples},
                                                      c.effective_seed(), policy);
    CsvBuilder csv("access", {"source", "arc_center", "arc_radius", "p_hit", "stderr"});
    for (std::size_t i = 0; i < m.sources.size(); ++i)
        for (std::size_t j = 0; j < m.arc_centers.size(); ++j)
            csv.row(m.sources[i].pos(), m.arc_centers[j].pos(), m.arc_radius, m.at(i, j).value, m.at(i, j).std_error);
    return csv.str();
}

std::string run_sync(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    SyncOptions opts{c.horizon, c.n_samples, c.eps_sync, c.window, c.record_every};
    const auto results = sync_mc(sys, low_discrepancy_pairs(c.n_pairs), opts, c.effective_seed(), policy);
    CsvBuilder csv("sync", {"pair_id", "x0", "y0", "t", "median_dist", "p_synced", "stderr"});
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        for (const DecayPoint& d : r.decay_curve)
            csv.row(i, r.pair.first.pos(), r.pair.second.pos(), d.t, d.median_dist, r.p_synced.value,
                    r.p_synced.std_error);
    }
    return csv.str();
}

std::string run_stability(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    const CirclePoint x(c.stability_x);
    CsvBuilder csv("stability", {"probe", "x", "eps", "param", "horizon", "p", "stderr"});
    StabilityOptions so;
    so.horizon = c.horizon;
    so.n_samples = c.n_samples;
    so.eps_sync = c.eps_sync;
    const auto stab = stability_probe(sys, x, c.stability_radii, so, c.effective_seed(), policy);
    for (std::size_t i = 0; i < stab.size(); ++i)
        csv.row("stability_r", x.pos(), c.eps_sync, c.stability_radii[i], c.horizon, stab[i].value, stab[i].std_error);
    ContainmentOptions co;
    co.horizon = c.horizon;
    co.n_samples = c.n_samples;
    for (double delta : c.containment_deltas) {
        const EstimateCI e = containment_probe(sys, x, c.containment_eps, delta, co, c.effective_seed(), policy);
        csv.row("containment_delta", x.pos(), c.containment_eps, delta, c.horizon, e.value, e.std_error);
    }
    return csv.str();
}

std::string run_pullback(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    struct Row {
        std::uint64_t stream_id;
        ClusterReport report;
    };
    auto rows = map_indices<Row>(c.pullback_streams, policy, [&](std::size_t i) {
        const std::uint64_t sid = stream_id_for(0x70756c6c6261636bULL, i);
        const NoiseStream omega(c.effective_seed(), sid);
        const EmpiricalMeasure m = pullback_measure(sys, omega, c.pullback_T, c.pullback_grid);
        return Row{sid, cluster_atoms(m, c.merge_radius)};
    });
    CsvBuilder csv("pullback", {"stream_id", "T", "n_clusters", "centers", "masses", "spreads", "atomic"});
    for (const Row& r : rows) {
        std::vector<double> centers, masses, spreads;
        for (const Cluster& cl : r.report.clusters) {
            centers.push_back(cl.center.pos());
            masses.push_back(cl.mass);
            spreads.push_back(cl.spread);
        }
        csv.row(r.stream_id, c.pullback_T, r.report.n_clusters(), join(centers), join(masses), join(spreads),
                r.report.atomic ? "true" : "false");
    }
    return csv.str();
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string run_verdict(const ExperimentConfig& c, const ExecPolicy& policy) {
    RandomMapSystem sys(c.lift.build());
    const SyncVerdict v = render_verdict(sys, verdict_config(c), policy);
    CsvBuilder csv("verdict", {"condition", "method", "value", "stderr", "pass", "caveat"});
    const auto& sub = v.subperiods;
    csv.row("subperiods", sub.method == SubperiodReport::Method::ExactFourier ? "exact_fourier" : "grid_check",
            sub.is_continuum() ? std::string("inf") : fmt::format("{}", sub.least_period_count), "",
            bool_str(!sub.has_subperiods()), "");
    csv.row("minimality", v.minimality.estimate.method, v.minimality.estimate.value, v.minimality.estimate.std_error,
            bool_str(v.minimality.pass), v.minimality.note);
    csv.row("contractibility", v.contractibility.estimate.method, v.contractibility.estimate.value,
            v.contractibility.estimate.std_error, bool_str(v.contractibility.pass), v.contractibility.note);
    csv.row("stable_trajectories", "quadrature", v.stable_trajectories.lambda_quadrature, "",
            bool_str(v.stable_trajectories.pass), "lambda < 0 sufficient");
    csv.row("stable_trajectories", "monte_carlo", v.stable_trajectories.lambda_mc.value,
            v.stable_trajectories.lambda_mc.std_error, bool_str(v.stable_trajectories.lambda_mc.upper() < 0.0),
            "cross-check");
    std::string caveats;
    for (std::size_t i = 0; i < v.caveats.size(); ++i) caveats += (i ? " | " : "") + v.caveats[i];
    csv.row("verdict", "combined", "", "", to_string(v.verdict), caveats);
    return csv.str();
}

std::string run_sweep(const ExperimentConfig& c, const ExecPolicy& policy) {
    const bool sine = c.sweep_param == "a";
    if (sine && c.lift.form != LiftSpec::Form::Sine)
        throw ConfigError("key 'sweep_param': 'a' requires lift = sine(...)", 0, "sweep_param");
    if (!sine && c.lift.form != LiftSpec::Form::Rotation)
        throw ConfigError("key 'sweep_param': 'c' requires lift = rotation(...)", 0, "sweep_param");

    CsvBuilder csv("sweep", {"param", "value", "lambda_quadrature", "lambda_mc", "lambda_mc_stderr", "subperiod_n",
                             "min_access", "min_contract", "verdict"});
    const auto count = static_cast<std::size_t>(std::floor((c.sweep_to - c.sweep_from) / c.sweep_step + 1e-9)) + 1;
    const VerdictConfig vc = verdict_config(c);
    for (std::size_t i = 0; i < count; ++i) {
        const double value = c.sweep_from + static_cast<double>(i) * c.sweep_step;
        RandomMapSystem sys(sine ? LiftMap::sine(value) : LiftMap::rotation(value));
        const SyncVerdict v = render_verdict(sys, vc, policy);
        csv.row(c.sweep_param, value, v.stable_trajectories.lambda_quadrature, v.stable_trajectories.lambda_mc.value,
                v.stable_trajectories.lambda_mc.std_error,
                v.subperiods.is_continuum() ? std::string("inf") : fmt::format("{}", v.subperiods.least_period_count),
                v.minimality.estimate.value, v.contractibility.estimate.value, to_string(v.verdict));
    }
    return csv.str();
}

} // namespace

std::uint64_t resolve_seed(const ExperimentConfig& config, const RunOptions& opts) {
    if (opts.seed) return *opts.seed;
    if (config.seed) return *config.seed;
    if (const char* env = std::getenv("RDS_SYNC_SEED"); env && *env) {
        char* end = nullptr;
        errno = 0;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || *end != '\0' || env[0] == '-')
            throw ConfigError(fmt::format("RDS_SYNC_SEED is not a valid seed: '{}'", env), 0, "seed");
        return v;
    }
    return ExperimentConfig::kDefaultSeed;
}

std::string render_csv(const std::string& cmd, const ExperimentConfig& c, int threads) {
    const ExecPolicy policy = ExecPolicy::openmp(threads);
    if (cmd == "simulate") return run_simulate(c, policy);
    if (cmd == "lyapunov") return run_lyapunov(c, policy);
    if (cmd == "subperiods") return run_subperiods(c);
    if (cmd == "contract") return run_contract(c, policy);
    if (cmd == "access") return run_access(c, policy);
    if (cmd == "sync") return run_sync(c, policy);
    if (cmd == "stability") return run_stability(c, policy);
    if (cmd == "pullback") return run_pullback(c, policy);
    if (cmd == "verdict") return run_verdict(c, policy);
    if (cmd == "sweep") return run_sweep(c, policy);
    throw ConfigError(fmt::format("unknown command '{}'", cmd), 0, "experiment");
}

int run(const std::string& cmd, ExperimentConfig config, const RunOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    std::string csv;
    try {
        config.seed = resolve_seed(config, opts);
        config.experiment = cmd;
        csv = render_csv(cmd, config, opts.threads);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const EstimationError& e) {
        std::cerr << "internal consistency error: " << e.what() << " (achieved error " << e.achieved_error()
                  << ")\n";
        return kExitConsistency;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    namespace fs = std::filesystem;
    const fs::path out_dir = opts.out_dir.value_or(config.output);
    const fs::path csv_path = out_dir / (cmd + ".csv");
    try {
        fs::create_directories(out_dir);
        std::ofstream f(csv_path, std::ios::binary);
        f << csv;
        if (!f) throw std::runtime_error("cannot write " + csv_path.string());

        nlohmann::ordered_json manifest;
        manifest["tool"] = "rds_sync";
        manifest["version"] = kVersion;
        manifest["compiler"] = __VERSION__;
        manifest["command"] = cmd;
        manifest["command_line"] = opts.command_line;
        manifest["seed"] = config.effective_seed();
        manifest["threads"] = opts.threads;
        manifest["wall_time_s"] = wall;
        manifest["config"] = echo_config(config);
        manifest["artifacts"] = nlohmann::json::array({csv_path.filename().string()});
        std::ofstream m(out_dir / "manifest.json", std::ios::binary);
        m << manifest.dump(2) << '\n';
        if (!m) throw std::runtime_error("cannot write manifest.json");
    } catch (const std::exception& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

} // namespace rds::cli
