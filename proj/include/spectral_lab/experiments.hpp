#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "spectral_lab/config.hpp"
#include "spectral_lab/probml.hpp"
#include "spectral_lab/stats.hpp"
#include "spectral_lab/table_io.hpp"

namespace slab {

// What a scenario hands back: result tables (one CSV each), a summary
// object and grid parameters for the metadata file, and extra named files.
struct ScenarioOutput {
    std::vector<Table> tables;
    Json summary = Json::object();
    Json grid = Json::object();
    std::vector<std::pair<std::string, std::string>> files;
};

struct Scenario {
    std::string id;
    std::string description;
    Schema schema;
    std::function<ScenarioOutput(const Json& params)> run;
};

const std::vector<Scenario>& scenario_registry();
const Scenario* find_scenario(const std::string& id);
std::vector<std::string> scenario_ids();
Json scenario_listing();
std::string scenario_listing_text();

// Validated defaults of a scenario, with optional overrides applied.
Json scenario_params(const std::string& id, const Json& overrides = Json::object());

struct RunRecord {
    Json metadata;
    std::vector<std::string> files;
    ScenarioOutput output;
};

// Runs an already validated parameter set and writes
// out_dir/<id>/<table>.csv plus out_dir/<id>/metadata.json atomically.
// Only wall_time_s in the metadata varies between identical runs.
RunRecord run_scenario(const Scenario& s, const Json& params, const std::string& out_dir,
                       const Json& invocation = Json::object());

// Typed runners. Each takes validated parameters of its scenario.

struct KnappReport {
    ScenarioOutput out;
    std::vector<double> Rs, qs, expected;
    std::vector<ScalingFit> fits;  // log mean ||E* V E||^2 against log R, per q
    std::vector<Interval> cis;     // bootstrap interval of each slope
};
KnappReport run_knapp_saturation(const Json& p);

struct SteinTomasReport {
    ScenarioOutput out;
    std::vector<double> Rs, p_primes;
    std::vector<std::vector<double>> norms;  // [p'][R]: ||S||_{l2av -> l^p'}
    std::vector<double> growth;              // last / first per p'
};
SteinTomasReport run_stein_tomas_uniformity(const Json& p);

struct SmoothingReport {
    ScenarioOutput out;
    ScalingFit fit;               // log sup |gamma_R * m| against log R
    double bounded_change = 0.0;  // relative sup change for a bounded symbol
};
SmoothingReport run_smoothing_scaling(const Json& p);

struct SmoothingIdentityReport {
    ScenarioOutput out;
    std::vector<double> errors_ok;  // R > R1 + R2
    double error_bad = 0.0;         // R = (R1 + R2)/2, adversarial input
};
SmoothingIdentityReport run_smoothing_identity(const Json& p);

struct MultiplierInvariantReport {
    ScenarioOutput out;
    std::vector<double> deltas, constants, foliation;
    double global_constant = 0.0;
};
MultiplierInvariantReport run_multiplier_invariant(const Json& p);

struct DualSudakovReport {
    ScenarioOutput out;
    std::vector<double> eps_list;
    std::vector<std::size_t> ms;
    std::vector<std::vector<double>> ratio;  // [m][eps]
    double fitted_constant = 0.0;
};
DualSudakovReport run_dual_sudakov(const Json& p);

struct ChainingReport {
    ScenarioOutput out;
    int k_max = 0;
    double max_reconstruction_error = 0.0;
    double fitted_constant = 0.0;  // max_k,a ||xi^(k)||_inf 2^k
    double max_xi_p = 0.0;
};
ChainingReport run_chaining(const Json& p);

struct TailReport {
    ScenarioOutput out;
    ExceedanceCurve curve, curve_double;
    TailFit fit, fit_double;
    double c_change = 0.0;  // |c_2n - c_n| / c_n
};
TailReport run_tail_decay(const Json& p);

struct MaxScalingScenarioReport {
    ScenarioOutput out;
    MaxScalingReport report;
};
MaxScalingScenarioReport run_max_scaling(const Json& p);

struct GeomSeriesReport {
    ScenarioOutput out;
    std::vector<double> As, brute, bound, ratio;
    double fitted_constant = 0.0;
};
GeomSeriesReport run_geom_series(const Json& p);

struct SparseReport {
    ScenarioOutput out;
    bool partition_exact = true;
    bool separation_ok = true;
    double c_families = 0.0, c_balls = 0.0, c_radius = 0.0;  // fitted count-law constants
};
SparseReport run_sparse_decomposition(const Json& p);

struct BsijReport {
    ScenarioOutput out;
    std::vector<double> gaps, norms;
    ScalingFit fit;
    double exponent = 0.0;   // 1 - (d+1)/(2q)
    double dense_gap = 0.0;  // max |power - dense| / dense
};
BsijReport run_bsij_separation(const Json& p);

struct BornReport {
    ScenarioOutput out;
    double well_eigenvalue = 0.0, well_oracle = 0.0, well_rel_error = 0.0;
    double refined_eigenvalue = 0.0, refinement_drift = 0.0;
    std::size_t instances = 0, converged = 0, false_certificates = 0;
};
BornReport run_born_criterion(const Json& p);

struct EigenBoundReport {
    ScenarioOutput out;
    std::vector<double> Ms, fractions;
    double c_hat = 0.0;
    std::size_t samples = 0, eigenvalues = 0;
};
EigenBoundReport run_eigen_bound_mc(const Json& p);

struct DestructionReport {
    ScenarioOutput out;
    std::vector<double> eps_list, h_used, deterministic_min, randomized_median, ratio;
    double ratio_coarse_h = 0.0;  // finest eps with h four times larger
};
DestructionReport run_counterexample_destruction(const Json& p);

struct DyadicShellReport {
    ScenarioOutput out;
    std::vector<int> shells;
    std::vector<double> norms, weighted;  // weighted = norm * 2^{delta k}
    double tail_fraction = 0.0;
    double spread = 0.0;  // max/min of weighted
};
DyadicShellReport run_dyadic_shell_demo(const Json& p);

// Registration helpers shared by the scenario sources.
ParamSpec seed_param();
ParamSpec int_param(std::string key, long long def, double lo, double hi, std::string help = {});
ParamSpec num_param(std::string key, double def, double lo, double hi, std::string help = {});
ParamSpec bool_param(std::string key, bool def, std::string help = {});
ParamSpec str_param(std::string key, std::string def, std::vector<std::string> choices, std::string help = {});
ParamSpec nums_param(std::string key, std::vector<double> def, double lo, double hi, std::string help = {});
ParamSpec ints_param(std::string key, std::vector<long long> def, double lo, double hi, std::string help = {});
std::uint64_t param_seed(const Json& p);
std::vector<double> param_nums(const Json& p, const std::string& key);

void register_harmonic_scenarios(std::vector<Scenario>& out);
void register_random_scenarios(std::vector<Scenario>& out);
void register_spectral_scenarios(std::vector<Scenario>& out);

}  // namespace slab
