#include "relayrate/rates.hpp"

#include <cmath>
#include <sstream>

#include "relayrate/errors.hpp"

namespace relayrate {

namespace {

RateResult direct_fallback(const RateTerms& t, const char* why) {
  return RateResult{Scheme::DIRECT, t.i_x1_y_g_x2, false, why};
}

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::EAF: return "EAF";
    case Scheme::JOINT: return "JOINT";
    case Scheme::TS_EAF: return "TS_EAF";
    case Scheme::DIRECT: return "DIRECT";
  }
  return "?";
}

const char* to_string(Region r) {
  switch (r) {
    case Region::EAF_FEASIBLE: return "EAF_FEASIBLE";
    case Region::JOINT_ONLY: return "JOINT_ONLY";
    case Region::INFEASIBLE: return "INFEASIBLE";
  }
  return "?";
}

RateTerms compute_rate_terms(const RelayJoint& rj) {
  const JointPMF& j = rj.joint;
  const std::string yh = rj.quantizer_axis();

  RateTerms t;
  t.i_x2_y = cond_mutual_information(j, {"x2"}, {"y"}, {});
  t.i_x1_y_g_x2 = cond_mutual_information(j, {"x1"}, {"y"}, {"x2"});
  t.i_yh_y1_g_x2y = cond_mutual_information(j, {yh}, {"y1"}, {"x2", "y"});
  t.i_yh_y1_g_x1x2y = cond_mutual_information(j, {yh}, {"y1"}, {"x1", "x2", "y"});
  t.i_x1_yh_g_x2y = cond_mutual_information(j, {"x1"}, {yh}, {"x2", "y"});
  t.i_x1_yyh_g_x2 = cond_mutual_information(j, {"x1"}, {"y", yh}, {"x2"});

  const double id1 = t.i_yh_y1_g_x2y - t.i_yh_y1_g_x1x2y - t.i_x1_yh_g_x2y;
  const double id2 = t.i_x1_yyh_g_x2 - t.i_x1_y_g_x2 - t.i_x1_yh_g_x2y;
  if (std::abs(id1) > 1e-8 || std::abs(id2) > 1e-8) {
    std::ostringstream os;
    os << "compute_rate_terms: chain-rule identity residuals " << id1 << ", " << id2
       << " exceed 1e-8; the joint is not an assembled relay joint";
    throw PropertyViolation(os.str());
  }
  return t;
}

RateResult eaf_rate(const RateTerms& t) {
  if (t.i_x2_y < t.i_yh_y1_g_x2y - kFeasSlack)
    return direct_fallback(t, "infeasible: I(X2;Y) < I(Yh;Y1|X2,Y)");
  return RateResult{Scheme::EAF, t.i_x1_yyh_g_x2, true, "I(X1;Y,Yh|X2)"};
}

RateResult joint_decoding_rate(const RateTerms& t) {
  if (t.i_x2_y < t.i_yh_y1_g_x1x2y - kFeasSlack)
    return direct_fallback(t, "infeasible: I(X2;Y) < I(Yh;Y1|X1,X2,Y)");
  const double arm1 = t.i_x2_y - t.i_yh_y1_g_x1x2y;
  const double arm2 = t.i_x1_yh_g_x2y;
  const bool second = arm2 <= arm1;
  return RateResult{Scheme::JOINT, t.i_x1_y_g_x2 + (second ? arm2 : arm1), true,
                    second ? "min-arm: I(X1;Yh|X2,Y)" : "min-arm: I(X2;Y) - I(Yh;Y1|X1,X2,Y)"};
}

Quantizer time_share_quantizer(const Quantizer& qz, double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw ValidationError("time_share_quantizer: q = " + std::to_string(q) +
                          " outside [0, 1]");
  const Eigen::Index cells = qz.law().given_size();
  const Eigen::Index nh = qz.law().out_size();
  Eigen::ArrayXd mass(cells * (nh + 1));
  for (Eigen::Index g = 0; g < cells; ++g) {
    mass.segment(g * (nh + 1), nh) = q * qz.law().row(g);
    mass[g * (nh + 1) + nh] = 1.0 - q;  // the erasure symbol
  }
  return Quantizer(CondPMF(qz.law().given_axes(),
                           {Alphabet{"yhh", static_cast<int>(nh) + 1}}, std::move(mass), 1e-12));
}

RateResult joint_rate_at_q(const RateTerms& t, double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw ValidationError("joint_rate_at_q: q = " + std::to_string(q) + " outside [0, 1]");
  if (t.i_x2_y < q * t.i_yh_y1_g_x1x2y - kFeasSlack)
    return direct_fallback(t, "infeasible: I(X2;Y) < q I(Yh;Y1|X1,X2,Y)");
  const double arm1 = t.i_x2_y - q * t.i_yh_y1_g_x1x2y;
  const double arm2 = q * t.i_x1_yh_g_x2y;
  const bool second = arm2 <= arm1;
  return RateResult{Scheme::JOINT, t.i_x1_y_g_x2 + (second ? arm2 : arm1), true,
                    second ? "min-arm: q I(X1;Yh|X2,Y)"
                           : "min-arm: I(X2;Y) - q I(Yh;Y1|X1,X2,Y)"};
}

double q_opt(const RateTerms& t) {
  if (t.i_yh_y1_g_x2y <= kFeasSlack) return 1.0;  // any q is feasible
  return std::min(1.0, t.i_x2_y / t.i_yh_y1_g_x2y);
}

RateResult timeshared_eaf_rate(const RateTerms& t) {
  const double q = q_opt(t);
  std::ostringstream os;
  os << "q_opt = " << q;
  return RateResult{Scheme::TS_EAF, t.i_x1_y_g_x2 + q * t.i_x1_yh_g_x2y, true, os.str()};
}

double matching_q(const RateTerms& t) {
  if (t.i_x1_yh_g_x2y <= kFeasSlack)
    throw ValidationError("matching_q: I(X1;Yh|X2,Y) vanishes, no time-sharing fraction matches");
  const bool in_region = t.i_x2_y >= t.i_yh_y1_g_x1x2y - kFeasSlack &&
                         t.i_x2_y <= t.i_yh_y1_g_x2y + kFeasSlack;
  if (!in_region)
    throw ValidationError(
        "matching_q: I(X2;Y) outside [I(Yh;Y1|X1,X2,Y), I(Yh;Y1|X2,Y)], joint decoding adds "
        "nothing to match");
  const double q = (t.i_x2_y - t.i_yh_y1_g_x1x2y) / t.i_x1_yh_g_x2y;
  return std::min(1.0, std::max(0.0, q));
}

Region classify_region(const RateTerms& t) {
  if (t.i_x2_y >= t.i_yh_y1_g_x2y - kFeasSlack) return Region::EAF_FEASIBLE;
  if (t.i_x2_y >= t.i_yh_y1_g_x1x2y - kFeasSlack) return Region::JOINT_ONLY;
  return Region::INFEASIBLE;
}

DominanceReport dominance_report(const RelayJoint& rj) {
  DominanceReport r;
  r.terms = compute_rate_terms(rj);
  r.eaf = eaf_rate(r.terms);
  r.joint = joint_decoding_rate(r.terms);
  r.ts_eaf = timeshared_eaf_rate(r.terms);
  r.region = classify_region(r.terms);
  if (r.region == Region::JOINT_ONLY && r.terms.i_x1_yh_g_x2y > kFeasSlack)
    r.matching_q = matching_q(r.terms);

  // A failure here falsifies the dominance claim; surface it loudly.
  if (r.ts_eaf.rate < r.joint.rate - 1e-9 || r.ts_eaf.rate < r.eaf.rate - 1e-9) {
    std::ostringstream os;
    os << "dominance breach: ts_eaf = " << r.ts_eaf.rate << ", joint = " << r.joint.rate
       << ", eaf = " << r.eaf.rate;
    throw PropertyViolation(os.str());
  }
  return r;
}

}  // namespace relayrate
