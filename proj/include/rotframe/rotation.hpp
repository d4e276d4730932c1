#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rotframe/errors.hpp"
#include "rotframe/linalg.hpp"

namespace rotframe {

/// Rotation axis: one of the coordinate axes, or an arbitrary unit direction.
class Axis {
 public:
  enum class Tag { X, Y, Z, Dir };

  static Axis x() { return Axis(Tag::X, {1, 0, 0}); }
  static Axis y() { return Axis(Tag::Y, {0, 1, 0}); }
  static Axis z() { return Axis(Tag::Z, {0, 0, 1}); }

  /// Arbitrary direction; must have unit Euclidean norm within 1e-12.
  static Axis direction(const Vec3& d);

  Tag tag() const { return tag_; }
  const Vec3& unit() const { return dir_; }
  bool is_coordinate() const { return tag_ != Tag::Dir; }

 private:
  Axis(Tag t, const Vec3& d) : tag_(t), dir_(d) {}
  Tag tag_;
  Vec3 dir_;
};

/// One axis rotation: axis, non-negative frequency, and rotation sense (+1/-1).
struct AsrSpec {
  Axis axis = Axis::z();
  double omega = 0.0;
  int sense = +1;
};

/// Builds an AsrSpec from a signed frequency: the sign becomes the sense.
AsrSpec make_asr(const Axis& axis, double signed_omega);

/// Algebraic composition tree of axis rotations.  Products multiply the
/// transformation matrices left-to-right (order matters); sums add them
/// entrywise (order does not).
class RotationExpr {
 public:
  enum class Kind { Leaf, Product, Sum };

  static RotationExpr leaf(const AsrSpec& spec);
  static RotationExpr leaf(const Axis& axis, double signed_omega);
  static RotationExpr product(std::vector<RotationExpr> children);
  static RotationExpr sum(std::vector<RotationExpr> children);

  Kind kind() const { return kind_; }
  const AsrSpec& spec() const { return spec_; }
  const std::vector<RotationExpr>& children() const { return children_; }

  bool contains_sum() const;
  void visit_leaves(const std::function<void(const AsrSpec&)>& f) const;
  std::vector<double> leaf_frequencies() const;

 private:
  RotationExpr() = default;
  Kind kind_ = Kind::Leaf;
  AsrSpec spec_;
  std::vector<RotationExpr> children_;
};

/// Transformation matrix of a single axis rotation at time t.
/// Coordinate axes use the closed form; arbitrary directions go through the
/// alignment rotation built from two fixed-angle coordinate rotations.
Mat3 eval_asr(const AsrSpec& spec, double t);

/// Analytic time derivative of eval_asr.
Mat3 eval_asr_derivative(const AsrSpec& spec, double t);

/// Evaluates the composition tree at time t.  Sum terms are accumulated in
/// canonical (serialized-text) order so permuted sums are bit-identical.
Mat3 eval_expr(const RotationExpr& expr, double t);

/// Analytic time derivative of eval_expr (Leibniz over products, termwise
/// over sums, same canonical sum order).
Mat3 eval_expr_derivative(const RotationExpr& expr, double t);

/// X' = X * A(t).
Vec3 transform_point(const RotationExpr& expr, const Vec3& x, double t);

// ---------------------------------------------------------------------------
// Deterministic RNG used by the property suite and the acceptance harness.
// The engine is the fully-specified mt19937_64; the mappings below avoid the
// implementation-defined standard distributions so byte-level reproducibility
// holds across compilers.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  std::uint64_t next_u64();
  int uniform_int(int lo, int hi);        // inclusive
  Vec3 unit_vector();

 private:
  std::uint64_t splitmix();
  std::uint64_t state_;
};

RotationExpr random_product(Rng& rng, int min_leaves, int max_leaves,
                            double omega_lo, double omega_hi);
RotationExpr random_sum(Rng& rng, int min_leaves, int max_leaves,
                        double omega_lo, double omega_hi);

// ---------------------------------------------------------------------------
// Property checking.  Failures are recorded in the report, never thrown.

struct PropertyCheck {
  std::string name;
  int trials = 0;
  double worst = 0.0;   // worst observed value of the checked quantity
  double tol = 0.0;     // threshold it was compared against
  bool pass = false;
  std::string note;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool all_pass() const;
};

/// Checks one expression over `trials` random times: orthogonality and
/// determinant (products), product order sensitivity, sum commutativity,
/// and agreement of the analytic derivative with central differences.
PropertyReport property_report(const RotationExpr& expr, int trials,
                               std::uint64_t seed, double tol);

/// Full deterministic suite over randomly generated expressions; this is what
/// the `props` CLI subcommand runs.
PropertyReport run_property_suite(int trials, std::uint64_t seed, double tol);

}  // namespace rotframe
