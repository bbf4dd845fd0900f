#include "relayrate/search.hpp"

#include <algorithm>
#include <cmath>

#include "relayrate/errors.hpp"
#include "relayrate/rng.hpp"

namespace relayrate {

namespace {

Eigen::ArrayXd dirichlet(Rng& rng, Eigen::Index k) {
  Eigen::ArrayXd v(k);
  for (Eigen::Index i = 0; i < k; ++i) v[i] = rng.exponential();
  return v / v.sum();
}

Eigen::ArrayXd sample_cond_mass(Rng& rng, Eigen::Index cells, Eigen::Index out) {
  Eigen::ArrayXd mass(cells * out);
  for (Eigen::Index g = 0; g < cells; ++g) mass.segment(g * out, out) = dirichlet(rng, out);
  return mass;
}

Eigen::ArrayXd softmax(const Eigen::ArrayXd& logits) {
  const Eigen::ArrayXd e = (logits - logits.maxCoeff()).exp();
  return e / e.sum();
}

// Flat parameter vector: px1 logits, px2 logits, then one logit block per
// quantizer conditioning cell.
struct SearchPoint {
  Eigen::ArrayXd logits;
};

struct ProblemShape {
  int n1, n2, ny, ny1, nh;
  Eigen::Index qz_cells() const { return static_cast<Eigen::Index>(n2) * ny1; }
  Eigen::Index dim() const { return n1 + n2 + qz_cells() * nh; }
};

Instance realize(const RelayChannel& channel, const ProblemShape& s, const SearchPoint& p) {
  Eigen::Index off = 0;
  ProbVector px1({channel.x1()}, softmax(p.logits.segment(off, s.n1)));
  off += s.n1;
  ProbVector px2({channel.x2()}, softmax(p.logits.segment(off, s.n2)));
  off += s.n2;
  Eigen::ArrayXd qmass(s.qz_cells() * s.nh);
  for (Eigen::Index g = 0; g < s.qz_cells(); ++g, off += s.nh)
    qmass.segment(g * s.nh, s.nh) = softmax(p.logits.segment(off, s.nh));
  Quantizer qz(CondPMF({channel.x2(), channel.y1()}, {Alphabet{"yhat", s.nh}}, std::move(qmass)));
  return Instance{channel, InputDistributions(std::move(px1), std::move(px2)), std::move(qz)};
}

RateResult evaluate(Objective objective, const Instance& inst) {
  const RateTerms t = compute_rate_terms(assemble_joint(inst.channel, inst.inputs, inst.quantizer));
  switch (objective) {
    case Objective::EAF: return eaf_rate(t);
    case Objective::JOINT: return joint_decoding_rate(t);
    case Objective::TS_EAF: return timeshared_eaf_rate(t);
  }
  throw ValidationError("optimize_inputs: unknown objective");
}

SearchPoint sample_start(Rng& rng, const ProblemShape& s) {
  SearchPoint p{Eigen::ArrayXd(s.dim())};
  Eigen::Index off = 0;
  p.logits.segment(off, s.n1) = dirichlet(rng, s.n1).log();
  off += s.n1;
  p.logits.segment(off, s.n2) = dirichlet(rng, s.n2).log();
  off += s.n2;
  for (Eigen::Index g = 0; g < s.qz_cells(); ++g, off += s.nh)
    p.logits.segment(off, s.nh) = dirichlet(rng, s.nh).log();
  return p;
}

}  // namespace

const char* to_string(Objective o) {
  switch (o) {
    case Objective::EAF: return "EAF";
    case Objective::JOINT: return "JOINT";
    case Objective::TS_EAF: return "TS_EAF";
  }
  return "?";
}

Instance sample_instance(const InstanceSpec& spec) {
  for (int s : spec.sizes)
    if (s < 1) throw ValidationError("sample_instance: all alphabet sizes must be >= 1");
  const int n1 = spec.sizes[0], n2 = spec.sizes[1], ny = spec.sizes[2], ny1 = spec.sizes[3],
            nh = spec.sizes[4];
  const Rng base(spec.seed);

  const Alphabet ax1{"x1", n1}, ax2{"x2", n2}, ay{"y", ny}, ay1{"y1", ny1}, ah{"yhat", nh};

  Rng r_px1 = base.fork(0);
  Rng r_px2 = base.fork(1);
  Rng r_ch = base.fork(2);
  Rng r_qz = base.fork(3);

  ProbVector px1({ax1}, dirichlet(r_px1, n1));
  ProbVector px2({ax2}, dirichlet(r_px2, n2));
  RelayChannel channel(CondPMF({ax1, ax2}, {ay, ay1},
                               sample_cond_mass(r_ch, static_cast<Eigen::Index>(n1) * n2,
                                                static_cast<Eigen::Index>(ny) * ny1)));
  Quantizer qz(CondPMF({ax2, ay1}, {ah},
                       sample_cond_mass(r_qz, static_cast<Eigen::Index>(n2) * ny1, nh)));

  return Instance{std::move(channel), InputDistributions(std::move(px1), std::move(px2)),
                  std::move(qz)};
}

SweepResult sweep_q(const RelayJoint& rj, int steps) {
  if (steps < 2) throw ValidationError("sweep_q: steps must be >= 2");
  const RateTerms t = compute_rate_terms(rj);

  std::vector<double> qs;
  qs.reserve(steps + 3);
  for (int i = 0; i <= steps; ++i) qs.push_back(static_cast<double>(i) / steps);
  qs.push_back(q_opt(t));
  if (classify_region(t) == Region::JOINT_ONLY && t.i_x1_yh_g_x2y > kFeasSlack)
    qs.push_back(matching_q(t));
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  SweepResult result;
  result.rows.reserve(qs.size());
  for (double q : qs) {
    const RateResult closed = joint_rate_at_q(t, q);
    const RelayJoint shared =
        assemble_joint(rj.channel, rj.inputs, time_share_quantizer(rj.quantizer, q));
    const RateResult recomputed = joint_decoding_rate(compute_rate_terms(shared));
    result.rows.push_back(SweepRow{q, closed.rate, recomputed.rate, closed.feasible,
                                   recomputed.feasible});
  }
  return result;
}

OptimizeResult optimize_inputs(const RelayChannel& channel, int yhat_size,
                               const SearchConfig& cfg, Objective objective,
                               std::uint64_t seed) {
  if (yhat_size < 1) throw ValidationError("optimize_inputs: yhat_size must be >= 1");
  if (cfg.restarts < 1 || cfg.iterations < 1)
    throw ValidationError("optimize_inputs: restarts and iterations must be >= 1");
  if (!(cfg.perturbation_scale > 0))
    throw ValidationError("optimize_inputs: perturbation_scale must be > 0");
  if (!(cfg.improvement_tol >= 1e-12))
    throw ValidationError("optimize_inputs: improvement_tol must be >= 1e-12");

  const ProblemShape shape{channel.x1().size, channel.x2().size, channel.y().size,
                           channel.y1().size, yhat_size};
  const Rng base(seed);

  bool have_best = false;
  SearchPoint best_point{Eigen::ArrayXd()};
  RateResult best_result;

  for (int r = 0; r < cfg.restarts; ++r) {
    Rng restart_rng = base.fork(r);
    Rng start_rng = restart_rng.fork(0);
    SearchPoint current = sample_start(start_rng, shape);
    RateResult current_result = evaluate(objective, realize(channel, shape, current));
    if (!have_best || current_result.rate > best_result.rate) {
      have_best = true;
      best_point = current;
      best_result = current_result;
    }
    for (int it = 0; it < cfg.iterations; ++it) {
      Rng iter_rng = restart_rng.fork(it + 1);
      SearchPoint candidate = current;
      for (Eigen::Index i = 0; i < candidate.logits.size(); ++i)
        candidate.logits[i] += cfg.perturbation_scale * iter_rng.normal();
      const RateResult cand_result = evaluate(objective, realize(channel, shape, candidate));
      if (cand_result.rate > current_result.rate + cfg.improvement_tol) {
        current = std::move(candidate);
        current_result = cand_result;
        if (current_result.rate > best_result.rate) {
          best_point = current;
          best_result = current_result;
        }
      }
    }
  }

  Instance inst = realize(channel, shape, best_point);
  return OptimizeResult{std::move(inst.inputs), std::move(inst.quantizer),
                        std::move(best_result)};
}

HuntResult hunt_region(const std::array<int, 5>& sizes, std::uint64_t max_seeds) {
  HuntResult result;
  for (std::uint64_t seed = 0; seed < max_seeds; ++seed) {
    const InstanceSpec spec{sizes, seed};
    const Instance inst = sample_instance(spec);
    const RateTerms t =
        compute_rate_terms(assemble_joint(inst.channel, inst.inputs, inst.quantizer));
    switch (classify_region(t)) {
      case Region::EAF_FEASIBLE: ++result.n_eaf_feasible; break;
      case Region::JOINT_ONLY:
        ++result.n_joint_only;
        if (t.i_x1_yh_g_x2y > kHuntGainTol) result.found.push_back(spec);
        break;
      case Region::INFEASIBLE: ++result.n_infeasible; break;
    }
  }
  return result;
}

}  // namespace relayrate
