#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotframe/linalg.hpp"
#include "rotframe/rotation.hpp"

namespace rotframe {

struct SpacetimeEvent {
  Vec3 x;
  double t = 0.0;
};

// Quadratic form of the induced interval, ds'^2 = sum G_ab du_a du_b with
// du = (c*dt, dx, dy, dz).  G is kept symmetric; cross terms are split evenly
// between the two off-diagonal slots.
struct IntervalForm {
  Mat4 g;
  double c = 1.0;

  /// Coefficient of dt^2 in raw time units, i.e. c^2 * g(0,0).
  double dt2_coefficient() const { return c * c * g(0, 0); }

  static IntervalForm minkowski(double c);
};

// Same layout after time averaging; coefficients depend on position only.
struct AveragedMetric {
  Mat4 g;
  double c = 1.0;
  bool exact_period = true;   // true: one-period quadrature; false: long window
  double error_bound = 0.0;   // reported bound for the windowed estimate
  double window = 0.0;        // half-width of the averaging window used

  double dt2_coefficient() const { return c * c * g(0, 0); }
};

struct AveragingControl {
  double quad_abs_tol = 1e-10;        // panel-doubling stop for exact-period quadrature
  int max_quad_panels = 16384;
  double window_change_tol = 1e-6;    // window-doubling stop for incommensurate case
  int max_window_doublings = 16;
  double initial_window_periods = 8;  // in periods of the slowest leaf
  int max_rational_denominator = 64;  // commensurability detection
};

/// Exact instantaneous interval form for any rotation expression (sums
/// included), assembled from A(t) and dA/dt.
IntervalForm interval_general(const RotationExpr& expr, const Vec3& x, double t, double c);

/// Closed assembly valid for sum-free expressions only (uses A*A^T = I).
/// Throws NotAnMsrError when the expression contains a sum node.
IntervalForm interval_msr(const RotationExpr& expr, const Vec3& x, double t, double c);

// Time averages of the three matrix kernels the interval form is built from:
// <A A^T>, <dA A^T>, <dA dA^T>.  All averaged-metric queries share these.
struct MotionAverages {
  Mat3 aat;    // <A A^T>
  Mat3 daat;   // <dA A^T>
  Mat3 dadat;  // <dA dA^T>
  bool exact_period = true;
  double error_bound = 0.0;
  double window = 0.0;
  int panels = 0;
};

/// Computes the averages: exactly over one least common period when all leaf
/// frequencies are pairwise commensurate (composite Gauss-Legendre quadrature,
/// panel doubling to quad_abs_tol), otherwise over a symmetric window doubled
/// until the change drops below window_change_tol.
MotionAverages average_motion(const RotationExpr& expr, const AveragingControl& control = {});

/// Time-averaged metric at a point, assembled from average_motion.
AveragedMetric time_average_metric(const RotationExpr& expr, const Vec3& x, double c,
                                   const AveragingControl& control = {});

AveragedMetric assemble_averaged(const MotionAverages& avg, const Vec3& x, double c);

/// Closed-form averaged metric of the three-orthogonal-axis sum rotation
/// z(w1) + x(w2) + y(w3), positive senses.  Exact whenever the frequencies
/// are pairwise distinct.
AveragedMetric ssr_avg_closed(double w1, double w2, double w3, const Vec3& x, double c);

/// Determinant of the 4x4 coefficient matrix (units of (c*dt, dx, dy, dz)).
double metric_determinant(const IntervalForm& form);
double metric_determinant(const AveragedMetric& metric);

// ---------------------------------------------------------------------------
// Frequency invariance: squared displacements agree between frames exactly at
// times separated by whole numbers of the base period.

struct OmegaInvarianceReport {
  double base_omega = 0.0;
  double delta_t = 0.0;
  long long k_nearest = 0;        // nearest integer multiple of the base period
  bool on_aggregate = false;      // delta_t is a whole number of base periods
  double discrepancy = 0.0;       // | |dX'|^2 - |dX|^2 | at the given events
  double discrepancy_at_aggregate = 0.0;  // same, with t2 snapped to the aggregate
};

/// Requires a sum-free expression whose leaf frequencies are integer
/// multiples of base_omega (within 1e-9 relative); throws
/// NotOmegaInvariantError otherwise.
OmegaInvarianceReport omega_invariance_check(const RotationExpr& expr, const SpacetimeEvent& e1,
                                             const SpacetimeEvent& e2, double base_omega);

/// Ten independent coefficients in fixed key order:
/// g_tt, g_tx, g_ty, g_tz, g_xx, g_xy, g_xz, g_yy, g_yz, g_zz.
std::vector<std::pair<std::string, double>> coefficient_list(const Mat4& g);

}  // namespace rotframe
