#include "rotframe/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rotframe/errors.hpp"

namespace rotframe {

IntervalForm IntervalForm::minkowski(double c) {
  IntervalForm f;
  f.c = c;
  f.g(0, 0) = 1.0;
  f.g(1, 1) = -1.0;
  f.g(2, 2) = -1.0;
  f.g(3, 3) = -1.0;
  return f;
}

namespace {

// ds'^2 = c^2 dt^2 - X dA dA^T X^T dt^2 - dX (A A^T) dX^T
//         - 2 (X dA A^T) . dX dt
// packed into the (c*dt, dx, dy, dz) coefficient matrix.
Mat4 assemble_form(const Mat3& aat, const Mat3& daat, const Mat3& dadat, const Vec3& x,
                   double c) {
  Mat4 g;
  const Vec3 xd = x * dadat;       // X (dA dA^T)
  const double m = dot(xd, x);     // X dA dA^T X^T
  const Vec3 w = x * daat;         // X dA A^T
  g(0, 0) = 1.0 - m / (c * c);
  for (int i = 0; i < 3; ++i) {
    g(0, i + 1) = -w[i] / c;
    g(i + 1, 0) = -w[i] / c;
    for (int j = 0; j < 3; ++j) g(i + 1, j + 1) = -aat(i, j);
  }
  return g;
}

}  // namespace

IntervalForm interval_general(const RotationExpr& expr, const Vec3& x, double t, double c) {
  const Mat3 a = eval_expr(expr, t);
  const Mat3 da = eval_expr_derivative(expr, t);
  IntervalForm f;
  f.c = c;
  f.g = assemble_form(a * transpose(a), da * transpose(a), da * transpose(da), x, c);
  return f;
}

IntervalForm interval_msr(const RotationExpr& expr, const Vec3& x, double t, double c) {
  if (expr.contains_sum()) {
    throw NotAnMsrError("expression contains a sum node; use interval_general");
  }
  const Mat3 a = eval_expr(expr, t);
  const Mat3 da = eval_expr_derivative(expr, t);
  IntervalForm f;
  f.c = c;
  f.g = assemble_form(Mat3::identity(), da * transpose(a), da * transpose(da), x, c);
  return f;
}

// ---------------------------------------------------------------------------
// Time averaging

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[4] = {0.18343464249564980, 0.52553240991632899, 0.79666647741362674,
                               0.96028985649753623};
constexpr double kGlWeight[4] = {0.36268378337836198, 0.31370664587788729, 0.22238103445337447,
                                 0.10122853629037626};

struct Kernels {
  Mat3 aat, daat, dadat;
};

Kernels kernels_at(const RotationExpr& expr, double t) {
  const Mat3 a = eval_expr(expr, t);
  const Mat3 da = eval_expr_derivative(expr, t);
  return {a * transpose(a), da * transpose(a), da * transpose(da)};
}

// Mean of the kernels over [-half, half] with `panels` composite GL8 panels.
// With `fejer` set, samples carry the triangular weight (1 - |t|/half), whose
// normalized integral is still 1 but whose spectral leakage decays like 1/T^2
// with a monotone envelope instead of the plain window's oscillatory 1/T.
Kernels mean_over(const RotationExpr& expr, double half, int panels, bool fejer) {
  Kernels acc{Mat3::zero(), Mat3::zero(), Mat3::zero()};
  if (fejer && panels % 2 != 0) ++panels;  // keep a panel boundary at t = 0
  const double width = 2.0 * half / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -half + (p + 0.5) * width;
    for (int q = 0; q < 4; ++q) {
      for (double sgn : {-1.0, 1.0}) {
        const double t = mid + sgn * kGlNode[q] * width / 2.0;
        const double weight =
            kGlWeight[q] * (fejer ? 2.0 * (1.0 - std::abs(t) / half) : 1.0);
        const Kernels k = kernels_at(expr, t);
        acc.aat = acc.aat + weight * k.aat;
        acc.daat = acc.daat + weight * k.daat;
        acc.dadat = acc.dadat + weight * k.dadat;
      }
    }
  }
  const double scale = width / 2.0 / (2.0 * half);
  acc.aat = scale * acc.aat;
  acc.daat = scale * acc.daat;
  acc.dadat = scale * acc.dadat;
  return acc;
}

double kernel_change(const Kernels& a, const Kernels& b) {
  return std::max({max_abs(a.aat - b.aat), max_abs(a.daat - b.daat),
                   max_abs(a.dadat - b.dadat)});
}

// Continued-fraction rationalization of r with bounded denominator.
bool rationalize(double r, int max_den, long long& p, long long& q) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = r;
  for (int i = 0; i < 64; ++i) {
    const double fa = std::floor(x);
    if (fa > 1e15) return false;
    const long long a = static_cast<long long>(fa);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - fa;
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return false;
  p = p1;
  q = q1;
  return std::abs(r - static_cast<double>(p) / static_cast<double>(q)) <= 1e-9 * (1.0 + r);
}

}  // namespace

MotionAverages average_motion(const RotationExpr& expr, const AveragingControl& control) {
  // Zero-frequency leaves contribute constants; they impose no period.
  std::vector<double> freqs;
  for (double w : expr.leaf_frequencies()) {
    if (w > 0.0) freqs.push_back(w);
  }

  MotionAverages out;
  if (freqs.empty()) {
    const Kernels k = kernels_at(expr, 0.0);
    out.aat = k.aat;
    out.daat = k.daat;
    out.dadat = k.dadat;
    out.exact_period = true;
    return out;
  }

  const double wmin = *std::min_element(freqs.begin(), freqs.end());

  // Commensurability: every ratio w/wmin close to a small rational.
  bool commensurate = true;
  long long lcm_den = 1;
  for (double w : freqs) {
    long long p = 0, q = 1;
    if (!rationalize(w / wmin, control.max_rational_denominator, p, q)) {
      commensurate = false;
      break;
    }
    lcm_den = std::lcm(lcm_den, q);
    if (lcm_den > 4096) {
      commensurate = false;
      break;
    }
  }

  // Kernel entries are trig polynomials with harmonics bounded by twice the
  // sum of the leaf frequencies; one GL8 panel per such wavelength keeps the
  // quadrature at round-off level.
  double wsum2 = 0.0;
  for (double w : freqs) wsum2 += w;
  wsum2 *= 2.0;
  if (commensurate) {
    // One least common period: T = 2*pi*lcm_den / wmin.
    const double period = 2.0 * M_PI * static_cast<double>(lcm_den) / wmin;
    int panels = std::max(4, static_cast<int>(std::ceil(period * wsum2 / (2.0 * M_PI))));
    if (panels * 4 > control.max_quad_panels) {
      commensurate = false;  // period too long to resolve; use the window estimate
    } else {
      Kernels prev = mean_over(expr, period / 2.0, panels, false);
      for (;;) {
        panels *= 2;
        if (panels > control.max_quad_panels) {
          throw AveragingFailureError(
              "exact-period quadrature did not converge: panels > " +
              std::to_string(control.max_quad_panels) + ", period = " + std::to_string(period));
        }
        const Kernels next = mean_over(expr, period / 2.0, panels, false);
        const double change = kernel_change(prev, next);
        if (change <= control.quad_abs_tol) {
          out.aat = next.aat;
          out.daat = next.daat;
          out.dadat = next.dadat;
          out.exact_period = true;
          out.error_bound = change;
          out.window = period / 2.0;
          out.panels = panels;
          return out;
        }
        prev = next;
      }
    }
  }

  // Incommensurate: symmetric triangular-weighted window doubled until the
  // averages settle.
  double half = control.initial_window_periods * 2.0 * M_PI / wmin;
  auto window_mean = [&](double h) {
    const int panels = std::max(8, static_cast<int>(std::ceil(h * wsum2 / M_PI)));
    return mean_over(expr, h, panels, true);
  };
  Kernels prev = window_mean(half);
  for (int i = 0; i < control.max_window_doublings; ++i) {
    half *= 2.0;
    const Kernels next = window_mean(half);
    const double change = kernel_change(prev, next);
    if (change < control.window_change_tol) {
      out.aat = next.aat;
      out.daat = next.daat;
      out.dadat = next.dadat;
      out.exact_period = false;
      out.error_bound = change;
      out.window = half;
      return out;
    }
    prev = next;
  }
  throw AveragingFailureError("window averaging did not settle below " +
                              std::to_string(control.window_change_tol) +
                              " after " + std::to_string(control.max_window_doublings) +
                              " doublings (final half-window " + std::to_string(half) + ")");
}

AveragedMetric assemble_averaged(const MotionAverages& avg, const Vec3& x, double c) {
  AveragedMetric m;
  m.c = c;
  m.g = assemble_form(avg.aat, avg.daat, avg.dadat, x, c);
  m.exact_period = avg.exact_period;
  m.error_bound = avg.error_bound;
  m.window = avg.window;
  return m;
}

AveragedMetric time_average_metric(const RotationExpr& expr, const Vec3& x, double c,
                                   const AveragingControl& control) {
  return assemble_averaged(average_motion(expr, control), x, c);
}

AveragedMetric ssr_avg_closed(double w1, double w2, double w3, const Vec3& x, double c) {
  if (w1 < 0.0 || w2 < 0.0 || w3 < 0.0) {
    throw InvalidExpressionError("frequencies must be non-negative");
  }
  AveragedMetric m;
  m.c = c;
  m.exact_period = true;
  const double bracket = (x.x * x.x + x.y * x.y) * w1 * w1 +
                         (x.y * x.y + x.z * x.z) * w2 * w2 +
                         (x.x * x.x + x.z * x.z) * w3 * w3;
  // Cross coefficients are X * (w1 Sz + w2 Sx + w3 Sy), the sum of the
  // individual one-axis kernels.
  const Vec3 w{w1 * x.y - w3 * x.z, -w1 * x.x + w2 * x.z, -w2 * x.y + w3 * x.x};
  m.g(0, 0) = 1.0 - bracket / (c * c);
  for (int i = 0; i < 3; ++i) {
    m.g(0, i + 1) = -w[i] / c;
    m.g(i + 1, 0) = -w[i] / c;
    m.g(i + 1, i + 1) = -3.0;
  }
  return m;
}

double metric_determinant(const IntervalForm& form) { return det(form.g); }
double metric_determinant(const AveragedMetric& metric) { return det(metric.g); }

OmegaInvarianceReport omega_invariance_check(const RotationExpr& expr, const SpacetimeEvent& e1,
                                             const SpacetimeEvent& e2, double base_omega) {
  if (expr.contains_sum()) {
    throw NotOmegaInvariantError("sum expressions cannot be normalized; no invariance aggregate");
  }
  if (!(base_omega > 0.0)) {
    throw NotOmegaInvariantError("base frequency must be positive");
  }
  for (double w : expr.leaf_frequencies()) {
    const double ratio = w / base_omega;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * (1.0 + ratio)) {
      std::ostringstream os;
      os << "leaf frequency " << w << " is not an integer multiple of base " << base_omega;
      throw NotOmegaInvariantError(os.str());
    }
  }

  OmegaInvarianceReport rep;
  rep.base_omega = base_omega;
  rep.delta_t = e2.t - e1.t;
  const double period = 2.0 * M_PI / base_omega;
  rep.k_nearest = static_cast<long long>(std::llround(rep.delta_t / period));
  rep.on_aggregate = std::abs(rep.delta_t - rep.k_nearest * period) <= 1e-9 * period;

  auto discrepancy_at = [&](double t2) {
    const Vec3 dxp = e2.x * eval_expr(expr, t2) - e1.x * eval_expr(expr, e1.t);
    const Vec3 dx = e2.x - e1.x;
    return std::abs(norm2(dxp) - norm2(dx));
  };
  rep.discrepancy = discrepancy_at(e2.t);
  rep.discrepancy_at_aggregate = discrepancy_at(e1.t + rep.k_nearest * period);
  return rep;
}

std::vector<std::pair<std::string, double>> coefficient_list(const Mat4& g) {
  static const char* names[4] = {"t", "x", "y", "z"};
  std::vector<std::pair<std::string, double>> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      out.emplace_back(std::string("g_") + names[i] + names[j], g(i, j));
    }
  }
  return out;
}

}  // namespace rotframe
