#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qac/uint128.hpp"

namespace qac {

struct GridPoint {
    std::uint64_t q = 0;
    std::vector<std::uint32_t> factors;
};

/// Parsed from JSON {mode, grid:[{q, factors}], deltas, samples, seed,
/// caps:{brute, weight}, out [, dagger]}. Budgets must be positive.
struct ExperimentConfig {
    std::string mode;  // count-validate | distance-sample
    std::vector<GridPoint> grid;
    std::vector<double> deltas;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    u128 cap_brute = 0;
    u128 cap_weight = 0;
    std::string out;
    bool dagger = false;  // distance-sample: study D dagger instead of D
};

ExperimentConfig config_from_json(const std::string& text);

struct ComponentCheck {
    std::size_t index = 0;
    std::string kind;  // trivial | bar_fixed | paired
    std::uint64_t n_e = 0;
    std::string formula;  // decimal strings: counts may exceed 64 bits
    std::string oracle;
    bool ok = false;
};

struct CountRecord {
    std::uint64_t q = 0;
    std::vector<std::uint32_t> factors;
    std::uint64_t n = 0;
    std::string selfdual_formula, selfdual_oracle;
    std::string dagger_formula, dagger_oracle;
    std::vector<ComponentCheck> components;
    std::string status;  // ok | mismatch
    std::string detail;  // offending piece when status != ok
};

struct DistanceRecord {
    std::uint64_t q = 0;
    std::vector<std::uint32_t> factors;
    std::uint64_t n = 0;
    bool dagger = false;
    double delta = 0;
    std::string population;  // |D| resp. |D dagger|
    std::string mode;        // exhaustive | sampled | refused
    std::uint64_t examined = 0;
    std::uint64_t at_most = 0;  // codes with relative distance <= delta
    double fraction = 0;
    double wilson_low = 0, wilson_high = 0;  // 95% interval (sampled mode)
    bool applicable = false;
    double ratio_exponent = 0;  // NaN when the bound hypothesis fails
    bool bound_ok = true;       // one-sided check; vacuous when inapplicable
    std::map<std::uint64_t, std::uint64_t> weight_histogram;
    std::string refusal;  // reason when mode == refused
};

/// Exported bytes are a pure function of (config, seed); wall_seconds stays
/// in memory only so exports are byte-identical across runs and workers.
struct ExperimentResult {
    ExperimentConfig config;
    std::vector<CountRecord> counts;
    std::vector<DistanceRecord> distances;
    bool pass = true;
    double wall_seconds = 0;
};

/// Formula counts vs brute-force oracles, per point and per component.
/// workers = 0 picks the hardware count. Any mismatch clears pass.
ExperimentResult validate_counts(const ExperimentConfig& c, unsigned workers = 0);

/// Relative-distance spectrum of D (or D dagger) per grid point and delta:
/// exhaustive when population * q^dim fits the weight cap, else seeded
/// sampling with Wilson intervals; refused points are marked, never guessed.
ExperimentResult distance_experiment(const ExperimentConfig& c, unsigned workers = 0);

/// Dispatch on config.mode.
ExperimentResult run_experiment(const ExperimentConfig& c, unsigned workers = 0);

std::string export_json(const ExperimentResult& r);
std::string export_csv(const ExperimentResult& r);

/// Writes the export(s) derived from config.out: a .json or .csv path gets
/// that format alone; any other stem gets both <out>.json and <out>.csv.
/// Returns the written paths.
std::vector<std::string> export_files(const ExperimentResult& r);

}  // namespace qac
