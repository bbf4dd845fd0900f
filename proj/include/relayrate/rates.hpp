#pragma once

#include <optional>
#include <string>

#include "relayrate/relay.hpp"

namespace relayrate {

/// Inclusive slack on feasibility inequalities: constraints hold at exact
/// equality, and this absorbs last-bit rounding of the compared terms.
inline constexpr double kFeasSlack = 1e-12;

enum class Scheme { EAF, JOINT, TS_EAF, DIRECT };
enum class Region { EAF_FEASIBLE, JOINT_ONLY, INFEASIBLE };

const char* to_string(Scheme s);
const char* to_string(Region r);

/// The six mutual informations every rate formula is built from (bits).
/// Two identities tie them together:
///   i_yh_y1_g_x2y  = i_yh_y1_g_x1x2y + i_x1_yh_g_x2y
///   i_x1_yyh_g_x2  = i_x1_y_g_x2 + i_x1_yh_g_x2y
struct RateTerms {
  double i_x2_y = 0;           // I(X2;Y)
  double i_x1_y_g_x2 = 0;      // I(X1;Y|X2), the direct rate
  double i_yh_y1_g_x2y = 0;    // I(Yhat;Y1|X2,Y)
  double i_yh_y1_g_x1x2y = 0;  // I(Yhat;Y1|X1,X2,Y)
  double i_x1_yh_g_x2y = 0;    // I(X1;Yhat|X2,Y), the quantizer gain
  double i_x1_yyh_g_x2 = 0;    // I(X1;Y,Yhat|X2)
};

struct RateResult {
  Scheme scheme = Scheme::DIRECT;
  double rate = 0;
  bool feasible = false;
  std::string binding;  // active constraint or min-arm
};

/// Everything one instance tells us, bundled. Construction enforces that the
/// time-shared rate dominates both plain schemes; a breach throws instead of
/// being absorbed into tolerances.
struct DominanceReport {
  RateTerms terms;
  RateResult eaf;
  RateResult joint;
  RateResult ts_eaf;
  Region region = Region::EAF_FEASIBLE;
  std::optional<double> matching_q;
};

/// The six terms of an assembled joint. Throws PropertyViolation if either
/// identity is off by more than 1e-8 (an assembly bug, not rounding).
RateTerms compute_rate_terms(const RelayJoint& rj);

/// Sequential-decoding rate: R = I(X1;Y,Yhat|X2) subject to
/// I(X2;Y) >= I(Yhat;Y1|X2,Y). Infeasible quantizers fall back to the
/// direct rate I(X1;Y|X2) with scheme DIRECT.
RateResult eaf_rate(const RateTerms& t);

/// Joint-decoding rate: R = I(X1;Y|X2)
///   + min(I(X2;Y) - I(Yhat;Y1|X1,X2,Y), I(X1;Yhat|X2,Y))
/// subject to I(X2;Y) >= I(Yhat;Y1|X1,X2,Y); DIRECT fallback when infeasible.
RateResult joint_decoding_rate(const RateTerms& t);

/// Erasure-augmented quantizer: keeps the original output with probability q
/// and emits a fresh constant symbol otherwise. The output alphabet is the
/// original plus one trailing erasure symbol, named "yhh".
Quantizer time_share_quantizer(const Quantizer& qz, double q);

/// Closed form of joint_decoding_rate after time-sharing at q, computed from
/// the un-shared terms: the two Yhat terms scale linearly by q.
RateResult joint_rate_at_q(const RateTerms& t, double q);

/// Largest time-sharing fraction that keeps the quantizer feasible for the
/// sequential scheme: min{1, I(X2;Y) / I(Yhat;Y1|X2,Y)}, with q_opt = 1 when
/// the denominator vanishes (any q is then feasible).
double q_opt(const RateTerms& t);

/// The always-achievable rate I(X1;Y|X2) + q_opt * I(X1;Yhat|X2,Y).
RateResult timeshared_eaf_rate(const RateTerms& t);

/// Time-sharing fraction at which the sequential rate meets the
/// joint-decoding rate:
///   q = (I(X2;Y) - I(Yhat;Y1|X1,X2,Y)) / I(X1;Yhat|X2,Y).
/// Defined on the closed region I(Yhat;Y1|X1,X2,Y) <= I(X2;Y) <=
/// I(Yhat;Y1|X2,Y) with a nonvanishing denominator; the bounds force
/// q in [0,1]. Throws ValidationError outside.
double matching_q(const RateTerms& t);

/// EAF_FEASIBLE when I(X2;Y) >= I(Yhat;Y1|X2,Y); JOINT_ONLY when only the
/// weaker joint-decoding constraint holds; INFEASIBLE below that. Boundary
/// ties resolve upward (EAF_FEASIBLE at the upper boundary, JOINT_ONLY at
/// the lower).
Region classify_region(const RateTerms& t);

/// All of the above for one instance. Throws PropertyViolation if the
/// time-shared rate fails to dominate either scheme by more than 1e-9.
DominanceReport dominance_report(const RelayJoint& rj);

}  // namespace relayrate
