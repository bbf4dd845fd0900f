#include "relayrate/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "relayrate/errors.hpp"

namespace relayrate {

namespace {

constexpr double kLog2 = 0.6931471805599453094172321;  // ln 2

std::vector<Eigen::Index> make_strides(const std::vector<Alphabet>& axes) {
  std::vector<Eigen::Index> s(axes.size(), 1);
  for (int i = static_cast<int>(axes.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * axes[i + 1].size;
  return s;
}

Eigen::Index total_size(const std::vector<Alphabet>& axes) {
  Eigen::Index n = 1;
  for (const auto& a : axes) n *= a.size;
  return n;
}

void check_axes(const std::vector<Alphabet>& axes, const char* what) {
  std::set<std::string> seen;
  for (const auto& a : axes) {
    if (a.size < 1)
      throw ValidationError(std::string(what) + ": axis '" + a.name + "' has size " +
                            std::to_string(a.size) + ", must be >= 1");
    if (a.name.empty()) throw ValidationError(std::string(what) + ": axis with empty name");
    if (!seen.insert(a.name).second)
      throw ValidationError(std::string(what) + ": duplicate axis name '" + a.name + "'");
  }
}

void check_nonnegative(const Eigen::ArrayXd& mass, const char* what) {
  for (Eigen::Index i = 0; i < mass.size(); ++i) {
    if (!(mass[i] >= 0.0)) {
      std::ostringstream os;
      os << what << ": entry " << i << " is " << mass[i] << ", must be >= 0";
      throw ValidationError(os.str());
    }
  }
}

}  // namespace

JointPMF::JointPMF(std::vector<Alphabet> axes, Eigen::ArrayXd mass, double tol)
    : axes_(std::move(axes)), mass_(std::move(mass)) {
  check_axes(axes_, "JointPMF");
  if (mass_.size() != total_size(axes_))
    throw ValidationError("JointPMF: mass has " + std::to_string(mass_.size()) +
                          " entries, axes imply " + std::to_string(total_size(axes_)));
  check_nonnegative(mass_, "JointPMF");
  const double sum = mass_.sum();
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream os;
    os << "JointPMF: entries sum to " << sum << ", outside tolerance " << tol << " of 1";
    throw ValidationError(os.str());
  }
  mass_ /= sum;
  strides_ = make_strides(axes_);
}

int JointPMF::find_axis(std::string_view name) const {
  for (int i = 0; i < rank(); ++i)
    if (axes_[i].name == name) return i;
  return -1;
}

int JointPMF::axis_index(std::string_view name) const {
  const int i = find_axis(name);
  if (i < 0) throw ValidationError("JointPMF: unknown axis name '" + std::string(name) + "'");
  return i;
}

Eigen::Index JointPMF::flat_index(std::span<const int> idx) const {
  Eigen::Index f = 0;
  for (int i = 0; i < rank(); ++i) f += strides_[i] * idx[i];
  return f;
}

CondPMF::CondPMF(std::vector<Alphabet> given_axes, std::vector<Alphabet> out_axes,
                 Eigen::ArrayXd mass, double tol)
    : given_axes_(std::move(given_axes)), out_axes_(std::move(out_axes)), mass_(std::move(mass)) {
  if (out_axes_.empty()) throw ValidationError("CondPMF: no output axes");
  std::vector<Alphabet> all = given_axes_;
  all.insert(all.end(), out_axes_.begin(), out_axes_.end());
  check_axes(all, "CondPMF");
  given_size_ = total_size(given_axes_);
  out_size_ = total_size(out_axes_);
  if (mass_.size() != given_size_ * out_size_)
    throw ValidationError("CondPMF: mass has " + std::to_string(mass_.size()) +
                          " entries, axes imply " + std::to_string(given_size_ * out_size_));
  check_nonnegative(mass_, "CondPMF");
  for (Eigen::Index g = 0; g < given_size_; ++g) {
    auto block = mass_.segment(g * out_size_, out_size_);
    const double sum = block.sum();
    if (std::abs(sum - 1.0) > tol) {
      std::ostringstream os;
      os << "CondPMF: conditioning cell " << g << " sums to " << sum << ", outside tolerance "
         << tol << " of 1";
      throw ValidationError(os.str());
    }
    block /= sum;
  }
}

Eigen::Index CondPMF::flat_index(std::span<const int> given_idx, std::span<const int> out_idx) const {
  Eigen::Index g = 0;
  for (size_t i = 0; i < given_axes_.size(); ++i) g = g * given_axes_[i].size + given_idx[i];
  Eigen::Index o = 0;
  for (size_t i = 0; i < out_axes_.size(); ++i) o = o * out_axes_[i].size + out_idx[i];
  return g * out_size_ + o;
}

JointPMF marginalize(const JointPMF& joint, const std::vector<std::string>& keep) {
  if (keep.empty()) throw ValidationError("marginalize: keep set is empty");
  std::vector<int> kept_axes;
  kept_axes.reserve(keep.size());
  std::set<std::string> seen;
  for (const auto& name : keep) {
    if (!seen.insert(name).second)
      throw ValidationError("marginalize: duplicate axis name '" + name + "' in keep set");
    kept_axes.push_back(joint.axis_index(name));
  }

  std::vector<Alphabet> out_axes;
  out_axes.reserve(kept_axes.size());
  for (int a : kept_axes) out_axes.push_back(joint.axes()[a]);

  std::vector<Eigen::Index> out_strides(kept_axes.size(), 1);
  for (int i = static_cast<int>(kept_axes.size()) - 2; i >= 0; --i)
    out_strides[i] = out_strides[i + 1] * out_axes[i + 1].size;

  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(total_size(out_axes));
  const int rank = joint.rank();
  std::vector<int> idx(rank, 0);
  const auto& mass = joint.mass();
  for (Eigen::Index f = 0; f < mass.size(); ++f) {
    Eigen::Index o = 0;
    for (size_t k = 0; k < kept_axes.size(); ++k) o += out_strides[k] * idx[kept_axes[k]];
    out[o] += mass[f];
    for (int a = rank - 1; a >= 0; --a) {  // odometer step
      if (++idx[a] < joint.axes()[a].size) break;
      idx[a] = 0;
    }
  }
  // Sums of a normalized table: no renormalization surprises, but allow the
  // constructor to fix up last-bit drift.
  return JointPMF(std::move(out_axes), std::move(out), 1e-6);
}

double entropy(const JointPMF& joint) {
  const auto& p = joint.mass();
  const double h = -(p > 0.0).select(p * p.log(), 0.0).sum() / kLog2;
  return h < 0.0 ? 0.0 : h;  // -0.0 and last-bit noise on point masses
}

double cond_mutual_information(const JointPMF& joint, const std::vector<std::string>& a,
                               const std::vector<std::string>& b,
                               const std::vector<std::string>& c) {
  if (a.empty() || b.empty())
    throw ValidationError("cond_mutual_information: a and b must be nonempty");
  std::set<std::string> seen;
  for (const auto* set : {&a, &b, &c})
    for (const auto& name : *set) {
      joint.axis_index(name);  // existence
      if (!seen.insert(name).second)
        throw ValidationError("cond_mutual_information: axis '" + name +
                              "' appears in more than one argument set");
    }

  auto join = [](const std::vector<std::string>& u, const std::vector<std::string>& v) {
    std::vector<std::string> r = u;
    r.insert(r.end(), v.begin(), v.end());
    return r;
  };

  const double h_ac = entropy(marginalize(joint, join(a, c)));
  const double h_bc = entropy(marginalize(joint, join(b, c)));
  const double h_abc = entropy(marginalize(joint, join(join(a, b), c)));
  const double h_c = c.empty() ? 0.0 : entropy(marginalize(joint, c));

  const double mi = h_ac + h_bc - h_abc - h_c;
  if (mi < 0.0) {
    if (mi > -kMiClamp) return 0.0;
    std::ostringstream os;
    os << "cond_mutual_information: got " << mi << ", more negative than rounding noise";
    throw PropertyViolation(os.str());
  }
  return mi;
}

}  // namespace relayrate
