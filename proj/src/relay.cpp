#include "relayrate/relay.hpp"

#include <array>

#include "relayrate/errors.hpp"

namespace relayrate {

namespace {

void require_axis(const Alphabet& got, std::string_view name, const char* what) {
  if (got.name != name)
    throw ValidationError(std::string(what) + ": expected axis '" + std::string(name) +
                          "', got '" + got.name + "'");
}

void require_same(const Alphabet& a, const Alphabet& b, const char* what) {
  if (a != b)
    throw ValidationError(std::string(what) + ": alphabet mismatch for '" + a.name + "' (size " +
                          std::to_string(a.size) + " vs '" + b.name + "' size " +
                          std::to_string(b.size) + ")");
}

}  // namespace

RelayChannel::RelayChannel(CondPMF law) : law_(std::move(law)) {
  if (law_.given_axes().size() != 2 || law_.out_axes().size() != 2)
    throw ValidationError("RelayChannel: law must be p(y,y1|x1,x2)");
  require_axis(law_.given_axes()[0], "x1", "RelayChannel");
  require_axis(law_.given_axes()[1], "x2", "RelayChannel");
  require_axis(law_.out_axes()[0], "y", "RelayChannel");
  require_axis(law_.out_axes()[1], "y1", "RelayChannel");
}

InputDistributions::InputDistributions(ProbVector px1, ProbVector px2)
    : px1_(std::move(px1)), px2_(std::move(px2)) {
  if (px1_.rank() != 1 || px1_.axes()[0].name != "x1")
    throw ValidationError("InputDistributions: px1 must be a one-axis table over 'x1'");
  if (px2_.rank() != 1 || px2_.axes()[0].name != "x2")
    throw ValidationError("InputDistributions: px2 must be a one-axis table over 'x2'");
}

Quantizer::Quantizer(CondPMF law) : law_(std::move(law)) {
  if (law_.given_axes().size() != 2 || law_.out_axes().size() != 1)
    throw ValidationError("Quantizer: law must be p(yhat|x2,y1)");
  require_axis(law_.given_axes()[0], "x2", "Quantizer");
  require_axis(law_.given_axes()[1], "y1", "Quantizer");
}

RelayJoint assemble_joint(const RelayChannel& channel, const InputDistributions& inputs,
                          const Quantizer& quantizer) {
  require_same(inputs.px1().axes()[0], channel.x1(), "assemble_joint");
  require_same(inputs.px2().axes()[0], channel.x2(), "assemble_joint");
  require_same(quantizer.law().given_axes()[0], channel.x2(), "assemble_joint");
  require_same(quantizer.law().given_axes()[1], channel.y1(), "assemble_joint");

  const int n1 = channel.x1().size, n2 = channel.x2().size;
  const int ny = channel.y().size, ny1 = channel.y1().size;
  const int nh = quantizer.yhat().size;

  const auto& p1 = inputs.px1().mass();
  const auto& p2 = inputs.px2().mass();
  const auto& ch = channel.law().mass();   // (x1,x2) x (y,y1)
  const auto& qz = quantizer.law().mass(); // (x2,y1) x (yhat)

  Eigen::ArrayXd mass(static_cast<Eigen::Index>(n1) * n2 * ny * ny1 * nh);
  Eigen::Index f = 0;
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      const double pab = p1[a] * p2[b];
      for (int c = 0; c < ny; ++c)
        for (int d = 0; d < ny1; ++d) {
          const double pch = ch[((static_cast<Eigen::Index>(a) * n2 + b) * ny + c) * ny1 + d];
          const Eigen::Index qbase = (static_cast<Eigen::Index>(b) * ny1 + d) * nh;
          for (int e = 0; e < nh; ++e) mass[f++] = pab * pch * qz[qbase + e];
        }
    }

  JointPMF joint({channel.x1(), channel.x2(), channel.y(), channel.y1(), quantizer.yhat()},
                 std::move(mass), 1e-12);
  return RelayJoint{std::move(joint), channel, inputs, quantizer};
}

double markov_residual(const JointPMF& joint, std::string_view quantizer_axis) {
  const std::string qa(quantizer_axis);
  return cond_mutual_information(joint, {qa}, {"x1", "y"}, {"x2", "y1"});
}

double markov_residual(const RelayJoint& rj) {
  return markov_residual(rj.joint, rj.quantizer_axis());
}

CondPMF direct_link_distribution(const RelayChannel& channel, const InputDistributions& inputs) {
  const int n1 = channel.x1().size, n2 = channel.x2().size;
  const int ny = channel.y().size, ny1 = channel.y1().size;
  const auto& p1 = inputs.px1().mass();
  const auto& ch = channel.law().mass();

  Eigen::ArrayXd mass = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(n2) * ny);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int c = 0; c < ny; ++c)
        for (int d = 0; d < ny1; ++d)
          mass[static_cast<Eigen::Index>(b) * ny + c] +=
              p1[a] * ch[((static_cast<Eigen::Index>(a) * n2 + b) * ny + c) * ny1 + d];

  return CondPMF({channel.x2()}, {channel.y()}, std::move(mass), 1e-12);
}

}  // namespace relayrate
