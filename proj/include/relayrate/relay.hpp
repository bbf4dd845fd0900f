#pragma once

#include <string>
#include <string_view>

#include "relayrate/pmf.hpp"

namespace relayrate {

// Axis names are fixed globally so downstream formulas can address variables
// by name: "x1" (source input), "x2" (relay input), "y" (destination output),
// "y1" (relay observation), "yhat" (quantized estimate; "yhh" once
// time-shared).

/// The channel law p(y, y1 | x1, x2) together with its four alphabets.
class RelayChannel {
 public:
  /// `law` must have given axes (x1, x2) and out axes (y, y1), in that order.
  explicit RelayChannel(CondPMF law);

  const Alphabet& x1() const { return law_.given_axes()[0]; }
  const Alphabet& x2() const { return law_.given_axes()[1]; }
  const Alphabet& y() const { return law_.out_axes()[0]; }
  const Alphabet& y1() const { return law_.out_axes()[1]; }
  const CondPMF& law() const { return law_; }

 private:
  CondPMF law_;
};

/// Independent input distributions p(x1) and p(x2).
class InputDistributions {
 public:
  InputDistributions(ProbVector px1, ProbVector px2);

  const ProbVector& px1() const { return px1_; }
  const ProbVector& px2() const { return px2_; }

 private:
  ProbVector px1_;
  ProbVector px2_;
};

/// The relay's compression map p(yhat | x2, y1). The output alphabet size is
/// caller-chosen and independent of |Y1|.
class Quantizer {
 public:
  /// `law` must have given axes (x2, y1) and a single out axis.
  explicit Quantizer(CondPMF law);

  const Alphabet& yhat() const { return law_.out_axes()[0]; }
  const CondPMF& law() const { return law_; }

 private:
  CondPMF law_;
};

/// The assembled joint p(x1)p(x2)p(y,y1|x1,x2)p(yhat|x2,y1) over the five
/// axes (x1, x2, y, y1, <quantizer axis>), plus the factors it was built
/// from. By construction I(Yhat; X1,Y | X2,Y1) vanishes.
struct RelayJoint {
  JointPMF joint;
  RelayChannel channel;
  InputDistributions inputs;
  Quantizer quantizer;

  const std::string& quantizer_axis() const { return quantizer.yhat().name; }
};

/// Product of the four factors; validates that the alphabets of the three
/// arguments agree by name and size.
RelayJoint assemble_joint(const RelayChannel& channel, const InputDistributions& inputs,
                          const Quantizer& quantizer);

/// I(Yhat; X1,Y | X2,Y1) in bits; <= 1e-10 for any assembled joint, strictly
/// positive for tables that break the quantizer factorization.
double markov_residual(const JointPMF& joint, std::string_view quantizer_axis);
double markov_residual(const RelayJoint& rj);

/// The destination's view of the relay input: p(y|x2) = sum_{x1,y1} p(x1) p(y,y1|x1,x2).
CondPMF direct_link_distribution(const RelayChannel& channel, const InputDistributions& inputs);

}  // namespace relayrate
