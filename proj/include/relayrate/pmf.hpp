#pragma once

#include <Eigen/Core>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relayrate {

/// Default tolerance for accepting slightly unnormalized input tables.
/// Within it the table is renormalized; beyond it construction fails.
inline constexpr double kNormTol = 1e-9;

/// Rounding-noise threshold: mutual informations in (-kMiClamp, 0) are
/// clamped to 0; anything more negative is a logic bug and throws.
inline constexpr double kMiClamp = 1e-12;

/// A named finite alphabet. Symbols are the indices 0..size-1.
struct Alphabet {
  std::string name;
  int size = 0;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// Dense joint probability table over an ordered list of named axes.
/// Layout is row-major: axis 0 outermost, last axis fastest. Entries are
/// non-negative and sum to 1 (renormalized on construction when the input
/// sum is within `tol` of 1). Immutable after construction.
class JointPMF {
 public:
  JointPMF(std::vector<Alphabet> axes, Eigen::ArrayXd mass, double tol = kNormTol);

  const std::vector<Alphabet>& axes() const { return axes_; }
  const Eigen::ArrayXd& mass() const { return mass_; }
  int rank() const { return static_cast<int>(axes_.size()); }
  Eigen::Index size() const { return mass_.size(); }

  /// Position of the named axis; throws ValidationError if absent.
  int axis_index(std::string_view name) const;
  /// Like axis_index but returns -1 instead of throwing.
  int find_axis(std::string_view name) const;

  Eigen::Index flat_index(std::span<const int> idx) const;
  double at(std::span<const int> idx) const { return mass_[flat_index(idx)]; }

  /// Stride of each axis in the flat layout (last axis has stride 1).
  const std::vector<Eigen::Index>& strides() const { return strides_; }

 private:
  std::vector<Alphabet> axes_;
  std::vector<Eigen::Index> strides_;
  Eigen::ArrayXd mass_;
};

/// A one-axis JointPMF, used for input distributions p(x1), p(x2).
using ProbVector = JointPMF;

/// Dense conditional probability table p(out | given). Layout is row-major
/// over given axes then out axes, so each conditioning cell owns a
/// contiguous block of out_size() entries summing to 1.
class CondPMF {
 public:
  CondPMF(std::vector<Alphabet> given_axes, std::vector<Alphabet> out_axes,
          Eigen::ArrayXd mass, double tol = kNormTol);

  const std::vector<Alphabet>& given_axes() const { return given_axes_; }
  const std::vector<Alphabet>& out_axes() const { return out_axes_; }
  const Eigen::ArrayXd& mass() const { return mass_; }

  Eigen::Index given_size() const { return given_size_; }
  Eigen::Index out_size() const { return out_size_; }

  Eigen::Index flat_index(std::span<const int> given_idx, std::span<const int> out_idx) const;
  double at(std::span<const int> given_idx, std::span<const int> out_idx) const {
    return mass_[flat_index(given_idx, out_idx)];
  }

  /// Contiguous block of the distribution for one conditioning cell.
  auto row(Eigen::Index given_cell) const { return mass_.segment(given_cell * out_size_, out_size_); }

 private:
  std::vector<Alphabet> given_axes_;
  std::vector<Alphabet> out_axes_;
  Eigen::Index given_size_ = 1;
  Eigen::Index out_size_ = 1;
  Eigen::ArrayXd mass_;
};

/// Sum the mass over all axes not listed in `keep`; the result's axes follow
/// the order of `keep`. Unknown names raise ValidationError.
JointPMF marginalize(const JointPMF& joint, const std::vector<std::string>& keep);

/// Shannon entropy in bits, with the 0 log 0 = 0 convention.
double entropy(const JointPMF& joint);

/// I(A;B|C) in bits, computed as H(A,C) + H(B,C) - H(A,B,C) - H(C).
/// a, b, c must be pairwise disjoint axis-name sets of `joint`; a and b
/// nonempty, c may be empty. Values in (-kMiClamp, 0) clamp to 0.
double cond_mutual_information(const JointPMF& joint, const std::vector<std::string>& a,
                               const std::vector<std::string>& b,
                               const std::vector<std::string>& c);

}  // namespace relayrate
