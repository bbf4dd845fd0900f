#include "relayrate/sim.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include "relayrate/errors.hpp"
#include "relayrate/rng.hpp"

namespace relayrate {

namespace {

// One cell of the strong-typicality test: exact zero off the support,
// absolute deviation at most epsilon on it.
inline bool cell_ok(double p, long count, long n, double epsilon) {
  if (p == 0.0) return count == 0;
  return std::abs(static_cast<double>(count) / n - p) <= epsilon;
}

inline int draw_symbol(const double* p, int k, double u) {
  double acc = 0.0;
  for (int i = 0; i < k - 1; ++i) {
    acc += p[i];
    if (u <= acc) return i;
  }
  return k - 1;
}

std::uint64_t codebook_size_for(const SimConfig& cfg) {
  if (cfg.n < 1) throw ValidationError("simulate: blocklength n must be >= 1");
  if (cfg.r0 < 0) throw ValidationError("simulate: r0 must be >= 0");
  const double bits = cfg.n * cfg.r0;
  if (bits > 62 || std::ceil(std::exp2(bits)) > static_cast<double>(cfg.codebook_cap))
    throw CapExceeded("simulate: codebook size 2^" + std::to_string(bits) +
                      " exceeds cap " + std::to_string(cfg.codebook_cap));
  const auto m = static_cast<std::uint64_t>(std::ceil(std::exp2(bits)));
  return m < 1 ? 1 : m;
}

struct Tally {
  long errors = 0;
  long ambiguous = 0;
};

SimResult finish(const Tally& tally, const SimConfig& cfg, std::uint64_t m) {
  SimResult r;
  r.trials = cfg.trials;
  r.codebook_size = m;
  r.error_count = tally.errors;
  r.ambiguity_count = tally.ambiguous;
  const double nt = static_cast<double>(cfg.trials);
  const double phat = tally.errors / nt;
  r.error_estimate = phat;
  const double z = 1.959963984540054;  // 95% two-sided
  const double denom = 1.0 + z * z / nt;
  const double center = (phat + z * z / (2 * nt)) / denom;
  const double hw = z * std::sqrt(phat * (1 - phat) / nt + z * z / (4 * nt * nt)) / denom;
  r.wilson_low = std::max(0.0, center - hw);
  r.wilson_high = std::min(1.0, center + hw);
  return r;
}

void validate_link(const CondPMF& link, const ProbVector& px2) {
  if (link.given_axes().size() != 1 || link.out_axes().size() != 1)
    throw ValidationError("simulate: link must be p(y|x2)");
  if (px2.rank() != 1 || px2.axes()[0].size != link.given_axes()[0].size)
    throw ValidationError("simulate: px2 does not match the link's input alphabet");
}

// Shared per-trial driver. Decode is a callable taking (trial rng already
// consumed for s and y, s, y bytes) and returning {typical_true,
// other_typical_count capped at 2}.
template <typename DecodeFn>
SimResult run_trials(const CondPMF& link, const ProbVector& px2, const SimConfig& cfg,
                     std::uint64_t m, DecodeFn&& decode,
                     const std::vector<std::uint8_t>& symbols_for_tx,
                     const std::vector<std::uint64_t>* packed_for_tx) {
  const int n = cfg.n;
  const int ny = link.out_axes()[0].size;
  const Rng base(cfg.seed);
  Tally tally;
  std::vector<std::uint8_t> y(n);
  for (long t = 0; t < cfg.trials; ++t) {
    Rng rng = base.fork(1 + static_cast<std::uint64_t>(t));
    const std::uint64_t s = rng.below(m);
    for (int i = 0; i < n; ++i) {
      const int ci = packed_for_tx ? static_cast<int>(((*packed_for_tx)[s] >> i) & 1u)
                                   : symbols_for_tx[s * n + i];
      const auto row = link.row(ci);
      y[i] = static_cast<std::uint8_t>(draw_symbol(row.data(), ny, rng.uniform01()));
    }
    const auto [typical_true, others] = decode(s, y);
    const int total_capped = (typical_true ? 1 : 0) + others;
    const bool correct = typical_true && others == 0;
    if (!correct) ++tally.errors;
    if (total_capped == 0 || total_capped >= 2) ++tally.ambiguous;
  }
  return finish(tally, cfg, m);
}

SimResult simulate_bytes(const CondPMF& link, const ProbVector& px2, const SimConfig& cfg) {
  const std::uint64_t m = codebook_size_for(cfg);
  SimConfig byte_cfg = cfg;
  Codebook cb;
  {
    // Byte layout regardless of alphabet; used as the reference path.
    const int nx = px2.axes()[0].size;
    cb.n = cfg.n;
    cb.size = m;
    cb.symbols.resize(m * static_cast<std::uint64_t>(cfg.n));
    Rng rng = Rng(cfg.seed).fork(0);
    for (std::uint64_t i = 0; i < cb.symbols.size(); ++i)
      cb.symbols[i] =
          static_cast<std::uint8_t>(draw_symbol(px2.mass().data(), nx, rng.uniform01()));
  }

  const JointPMF law = pair_law(link, px2);
  const int nx = px2.axes()[0].size;
  const int ny = link.out_axes()[0].size;
  const double* p = law.mass().data();
  const int n = cfg.n;
  std::vector<long> counts(static_cast<size_t>(nx) * ny);

  auto typical = [&](const std::uint8_t* cw, const std::uint8_t* yv) {
    std::memset(counts.data(), 0, counts.size() * sizeof(long));
    for (int i = 0; i < n; ++i) {
      const int cell = cw[i] * ny + yv[i];
      if (p[cell] == 0.0) return false;
      ++counts[cell];
    }
    for (size_t c = 0; c < counts.size(); ++c)
      if (!cell_ok(p[c], counts[c], n, cfg.epsilon)) return false;
    return true;
  };

  auto decode = [&](std::uint64_t s, const std::vector<std::uint8_t>& y) {
    const bool typical_true = typical(&cb.symbols[s * n], y.data());
    int others = 0;
    for (std::uint64_t c = 0; c < m && others < 2; ++c) {
      if (c == s) continue;
      if (typical(&cb.symbols[c * n], y.data())) ++others;
    }
    return std::pair<bool, int>(typical_true, others);
  };

  return run_trials(link, px2, byte_cfg, m, decode, cb.symbols, nullptr);
}

SimResult simulate_packed(const CondPMF& link, const ProbVector& px2, const SimConfig& cfg) {
  const std::uint64_t m = codebook_size_for(cfg);
  const int n = cfg.n;

  Codebook cb = build_codebook(px2, cfg);

  // Bucket codeword indices by weight so a trial only scans weights that can
  // possibly be typical.
  std::vector<std::uint32_t> bucket_offset(static_cast<size_t>(n) + 2, 0);
  for (std::uint64_t c = 0; c < m; ++c) ++bucket_offset[cb.weights[c] + 1];
  for (int w = 0; w <= n; ++w) bucket_offset[w + 1] += bucket_offset[w];
  std::vector<std::uint32_t> by_weight(m);
  {
    std::vector<std::uint32_t> cursor(bucket_offset.begin(), bucket_offset.end() - 1);
    for (std::uint64_t c = 0; c < m; ++c) by_weight[cursor[cb.weights[c]]++] = static_cast<std::uint32_t>(c);
  }

  const JointPMF law = pair_law(link, px2);
  const double p00 = law.mass()[0], p01 = law.mass()[1], p10 = law.mass()[2],
               p11 = law.mass()[3];

  // admissible[wc*(n+1)+v]: is a codeword of weight wc with overlap v typical
  // with the current y? Rebuilt per trial from wy.
  std::vector<std::uint8_t> admissible(static_cast<size_t>(n + 1) * (n + 1));
  std::vector<std::uint8_t> row_any(static_cast<size_t>(n) + 1);

  auto decode = [&](std::uint64_t s, const std::vector<std::uint8_t>& y) {
    std::uint64_t yw = 0;
    for (int i = 0; i < n; ++i) yw |= static_cast<std::uint64_t>(y[i] & 1u) << i;
    const int wy = std::popcount(yw);

    for (int wc = 0; wc <= n; ++wc) {
      bool any = false;
      for (int v = 0; v <= n; ++v) {
        const long n11 = v, n10 = wc - v, n01 = wy - v, n00 = n - wc - wy + v;
        bool ok = n10 >= 0 && n01 >= 0 && n00 >= 0 && v <= wc && v <= wy;
        ok = ok && cell_ok(p00, n00, n, cfg.epsilon) && cell_ok(p01, n01, n, cfg.epsilon) &&
             cell_ok(p10, n10, n, cfg.epsilon) && cell_ok(p11, n11, n, cfg.epsilon);
        admissible[static_cast<size_t>(wc) * (n + 1) + v] = ok;
        any = any || ok;
      }
      row_any[wc] = any;
    }

    auto is_typical = [&](std::uint64_t c) {
      const int wc = cb.weights[c];
      const int v = std::popcount(cb.packed[c] & yw);
      return admissible[static_cast<size_t>(wc) * (n + 1) + v] != 0;
    };

    const bool typical_true = is_typical(s);
    int others = 0;
    for (int wc = 0; wc <= n && others < 2; ++wc) {
      if (!row_any[wc]) continue;
      for (std::uint32_t k = bucket_offset[wc]; k < bucket_offset[wc + 1]; ++k) {
        const std::uint32_t c = by_weight[k];
        if (c == s) continue;
        if (is_typical(c) && ++others >= 2) break;
      }
    }
    return std::pair<bool, int>(typical_true, others);
  };

  return run_trials(link, px2, cfg, m, decode, {}, &cb.packed);
}

}  // namespace

bool strongly_typical(std::span<const std::uint8_t> xs, std::span<const std::uint8_t> ys,
                      const JointPMF& law, double epsilon) {
  if (!(epsilon > 0)) throw ValidationError("strongly_typical: epsilon must be > 0");
  if (law.rank() != 2) throw ValidationError("strongly_typical: law must be a two-axis table");
  if (xs.size() != ys.size() || xs.empty())
    throw ValidationError("strongly_typical: sequences must be nonempty and equal length");
  const int nx = law.axes()[0].size;
  const int ny = law.axes()[1].size;
  std::vector<long> counts(static_cast<size_t>(nx) * ny, 0);
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= nx || ys[i] >= ny)
      throw ValidationError("strongly_typical: symbol out of alphabet range");
    ++counts[static_cast<size_t>(xs[i]) * ny + ys[i]];
  }
  const long n = static_cast<long>(xs.size());
  for (size_t c = 0; c < counts.size(); ++c)
    if (!cell_ok(law.mass()[c], counts[c], n, epsilon)) return false;
  return true;
}

JointPMF pair_law(const CondPMF& link, const ProbVector& px2) {
  validate_link(link, px2);
  const int nx = px2.axes()[0].size;
  const int ny = link.out_axes()[0].size;
  Eigen::ArrayXd mass(static_cast<Eigen::Index>(nx) * ny);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) mass[static_cast<Eigen::Index>(a) * ny + b] = px2.mass()[a] * link.row(a)[b];
  return JointPMF({px2.axes()[0], link.out_axes()[0]}, std::move(mass), 1e-12);
}

Codebook build_codebook(const ProbVector& px2, const SimConfig& cfg) {
  const std::uint64_t m = codebook_size_for(cfg);
  const int nx = px2.axes()[0].size;
  Codebook cb;
  cb.n = cfg.n;
  cb.size = m;
  Rng rng = Rng(cfg.seed).fork(0);
  if (nx == 2 && cfg.n <= 64) {
    cb.packed.resize(m);
    cb.weights.resize(m);
    for (std::uint64_t c = 0; c < m; ++c) {
      std::uint64_t w = 0;
      for (int i = 0; i < cfg.n; ++i)
        w |= static_cast<std::uint64_t>(draw_symbol(px2.mass().data(), nx, rng.uniform01()))
             << i;
      cb.packed[c] = w;
      cb.weights[c] = static_cast<std::uint8_t>(std::popcount(w));
    }
  } else {
    cb.symbols.resize(m * static_cast<std::uint64_t>(cfg.n));
    for (std::uint64_t i = 0; i < cb.symbols.size(); ++i)
      cb.symbols[i] =
          static_cast<std::uint8_t>(draw_symbol(px2.mass().data(), nx, rng.uniform01()));
  }
  return cb;
}

SimResult simulate_step1(const CondPMF& link, const ProbVector& px2, const SimConfig& cfg) {
  validate_link(link, px2);
  if (cfg.trials < 1) throw ValidationError("simulate: trials must be >= 1");
  if (!(cfg.epsilon > 0)) throw ValidationError("simulate: epsilon must be > 0");
  const bool binary = px2.axes()[0].size == 2 && link.out_axes()[0].size == 2 && cfg.n <= 64;
  return binary ? simulate_packed(link, px2, cfg) : simulate_bytes(link, px2, cfg);
}

SimResult detail::simulate_step1_reference(const CondPMF& link, const ProbVector& px2,
                                           const SimConfig& cfg) {
  validate_link(link, px2);
  if (cfg.trials < 1) throw ValidationError("simulate: trials must be >= 1");
  if (!(cfg.epsilon > 0)) throw ValidationError("simulate: epsilon must be > 0");
  return simulate_bytes(link, px2, cfg);
}

}  // namespace relayrate
