#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relayrate/pmf.hpp"

namespace relayrate {

/// Finite-blocklength Monte Carlo for the relay-index link: a codebook of M =
/// ceil(2^(n*r0)) i.i.d. x2-sequences, decoded by unique strong typicality
/// against the received y.
struct SimConfig {
  int n = 32;                                 // blocklength
  double r0 = 0.5;                            // target rate, bits/use
  double epsilon = 0.05;                      // per-cell typicality slack
  long trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t codebook_cap = 1ull << 20;    // refuse larger codebooks
};

/// M sequences of length n over X2, drawn i.i.d. from p(x2); reproducible
/// from (config, p(x2)). For binary X2 with n <= 64 the sequences are kept
/// bit-packed instead of as bytes.
struct Codebook {
  int n = 0;
  std::uint64_t size = 0;                 // M
  std::vector<std::uint8_t> symbols;      // size*n, row-major (byte layout)
  std::vector<std::uint64_t> packed;      // bit i of word m = sequence m, position i
  std::vector<std::uint8_t> weights;      // popcount per packed word

  bool is_packed() const { return !packed.empty(); }
};

struct SimResult {
  double error_estimate = 0;    // fraction of trials decoded wrongly
  double wilson_low = 0;        // 95% Wilson score interval
  double wilson_high = 0;
  long ambiguity_count = 0;     // trials with zero or multiple typical codewords
  long error_count = 0;
  long trials = 0;
  std::uint64_t codebook_size = 0;
};

/// Strong typicality of a pair sequence (given as two parallel spans):
/// every cell of the empirical joint type is within epsilon of law(a,b),
/// and exactly zero wherever law(a,b) = 0. law must be a two-axis table.
bool strongly_typical(std::span<const std::uint8_t> xs, std::span<const std::uint8_t> ys,
                      const JointPMF& law, double epsilon);

/// The joint p(x2,y) = p(x2) link(y|x2) as a two-axis table; feeding it to
/// cond_mutual_information gives the I(X2;Y) bound the simulation probes.
JointPMF pair_law(const CondPMF& link, const ProbVector& px2);

Codebook build_codebook(const ProbVector& px2, const SimConfig& cfg);

/// Per trial: draw s uniformly, transmit the s-th codeword, pass it through
/// the link, decode by unique strong typicality. A trial errs when the
/// decoded index differs from s or no unique typical codeword exists; trials
/// with zero or multiple typical codewords are additionally tallied as
/// ambiguous. Deterministic per (cfg, link, px2). Throws CapExceeded when M
/// would pass cfg.codebook_cap.
SimResult simulate_step1(const CondPMF& link, const ProbVector& px2, const SimConfig& cfg);

namespace detail {
/// Byte-layout reference path (no bit-packing); same results as
/// simulate_step1 on any config it accepts, kept for cross-checking.
SimResult simulate_step1_reference(const CondPMF& link, const ProbVector& px2,
                                   const SimConfig& cfg);
}  // namespace detail

}  // namespace relayrate
