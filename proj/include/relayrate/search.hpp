#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "relayrate/rates.hpp"

namespace relayrate {

/// JOINT_ONLY instances only count as found when the quantizer gain
/// I(X1;Yhat|X2,Y) clears this, separating real gain from rounding noise.
inline constexpr double kHuntGainTol = 1e-6;

/// Recipe for one reproducible random instance: alphabet sizes
/// (|X1|,|X2|,|Y|,|Y1|,|Yhat|) plus the stream seed. Identical specs yield
/// bit-identical instances.
struct InstanceSpec {
  std::array<int, 5> sizes{2, 2, 2, 2, 2};
  std::uint64_t seed = 0;
};

struct Instance {
  RelayChannel channel;
  InputDistributions inputs;
  Quantizer quantizer;
};

/// Every input vector and conditional slice is a flat-Dirichlet sample
/// (normalized independent exponentials) from the spec's deterministic
/// stream; full support with probability 1.
Instance sample_instance(const InstanceSpec& spec);

struct SearchConfig {
  int restarts = 8;
  int iterations = 200;
  double perturbation_scale = 0.25;
  double improvement_tol = 1e-9;  // bits; must stay >= 1e-12
};

enum class Objective { EAF, JOINT, TS_EAF };

const char* to_string(Objective o);

/// One grid (or injected) point of a q-sweep. The closed-form rate comes
/// from joint_rate_at_q on the un-shared terms; the recomputed rate
/// re-assembles the joint with the time-shared quantizer and evaluates
/// joint_decoding_rate on it. The two agree within 1e-9.
struct SweepRow {
  double q = 0;
  double rate_closed_form = 0;
  double rate_recomputed = 0;
  bool feasible_closed_form = false;
  bool feasible_recomputed = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by q, strictly increasing, covers [0,1]
};

/// Evaluates the uniform grid {0, 1/steps, ..., 1} plus the exact q_opt and
/// (when defined) matching_q points as extra rows. steps >= 2.
SweepResult sweep_q(const RelayJoint& rj, int steps);

struct OptimizeResult {
  InputDistributions inputs;
  Quantizer quantizer;
  RateResult best;
};

/// Random-restart hill climbing over p(x1), p(x2) and the quantizer in
/// softmax coordinates: each restart draws a fresh start, then `iterations`
/// rounds of Gaussian perturbation keep strict improvements beyond
/// improvement_tol. Deterministic given (cfg, seed); the result is never
/// below the best sampled start, and nested per-restart streams make it
/// non-decreasing in cfg.restarts.
OptimizeResult optimize_inputs(const RelayChannel& channel, int yhat_size,
                               const SearchConfig& cfg, Objective objective, std::uint64_t seed);

struct HuntResult {
  std::vector<InstanceSpec> found;  // JOINT_ONLY with quantizer gain > kHuntGainTol
  long n_eaf_feasible = 0;
  long n_joint_only = 0;
  long n_infeasible = 0;
};

/// Scans seeds 0..max_seeds-1 of the given size template, tallying regions
/// and keeping the JOINT_ONLY specs with nonvanishing quantizer gain.
HuntResult hunt_region(const std::array<int, 5>& sizes, std::uint64_t max_seeds);

}  // namespace relayrate
