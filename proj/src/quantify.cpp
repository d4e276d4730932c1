#include "rotframe/quantify.hpp"

#include <algorithm>
#include <cmath>

namespace rotframe {

SourcePair1D SourcePair1D::make(double a, PairSigns signs, std::function<double(double)> profile,
                                double v) {
  if (!profile) throw Error("source profile is required");
  if (!(v > 0.0)) throw Error("propagation speed must be positive");
  // periodicity u(s + 2 pi) = u(s) and half-period antisymmetry u(s + pi) = -u(s)
  for (int i = 0; i < 64; ++i) {
    const double s = -2.0 * M_PI + 4.0 * M_PI * i / 63.0;
    if (std::abs(profile(s + 2.0 * M_PI) - profile(s)) > 1e-12 ||
        std::abs(profile(s + M_PI) + profile(s)) > 1e-12) {
      throw Error("profile must satisfy u(s + 2 pi) = u(s) and u(s + pi) = -u(s)");
    }
  }
  SourcePair1D p;
  p.a = a;
  p.signs = signs;
  p.profile = std::move(profile);
  p.v = v;
  return p;
}

double two_source_field(const SourcePair1D& pair, double x, double t) {
  const double s2 = pair.signs == PairSigns::Same ? 1.0 : -1.0;
  const double vt = pair.v * t;
  if (x > pair.a) {
    return pair.profile((x + pair.a) - vt) + s2 * pair.profile((x - pair.a) - vt);
  }
  if (x < -pair.a) {
    return pair.profile((x + pair.a) + vt) + s2 * pair.profile((x - pair.a) + vt);
  }
  return pair.profile((x + pair.a) - vt) + s2 * pair.profile((x - pair.a) + vt);
}

std::vector<CancellationScanEntry> external_cancellation_scan(
    const std::function<double(double)>& profile, PairSigns signs,
    const std::vector<double>& a_grid) {
  const double s2 = signs == PairSigns::Same ? 1.0 : -1.0;
  std::vector<CancellationScanEntry> out;
  out.reserve(a_grid.size());
  constexpr int kPhaseSamples = 256;
  for (double a : a_grid) {
    // external field right of both sources: u(s + a) + s2 u(s - a) over a period
    double amp = 0.0;
    for (int i = 0; i < kPhaseSamples; ++i) {
      const double s = 2.0 * M_PI * i / kPhaseSamples;
      amp = std::max(amp, std::abs(profile(s + a) + s2 * profile(s - a)));
    }
    out.push_back({a, amp});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spherical Bessel

namespace {

constexpr int kMaxOrder = 50;

double sb_j0(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }
double sb_j1(double x) {
  if (std::abs(x) < 1e-4) {
    // leading series, avoids cancellation: x/3 - x^3/30
    return x / 3.0 - x * x * x / 30.0;
  }
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

double sb_y0(double x) { return -std::cos(x) / x; }
double sb_y1(double x) { return -std::cos(x) / (x * x) - std::sin(x) / x; }

// series j_l(x) ~ x^l / (2l+1)!! (1 - x^2/(2(2l+3)))
double sb_j_series(int l, double x) {
  double dfact = 1.0;
  for (int i = 3; i <= 2 * l + 1; i += 2) dfact *= i;
  double xl = 1.0;
  for (int i = 0; i < l; ++i) xl *= x;
  return xl / dfact * (1.0 - x * x / (2.0 * (2.0 * l + 3.0)));
}

double sb_j(int l, double x) {
  if (l == 0) return sb_j0(x);
  if (l == 1) return sb_j1(x);
  if (x < 1e-5 * (l + 1)) return sb_j_series(l, x);
  if (x > l + 1) {
    // upward recurrence is stable when x dominates the order
    double fm = sb_j0(x), f = sb_j1(x);
    for (int i = 1; i < l; ++i) {
      const double fp = (2.0 * i + 1.0) / x * f - fm;
      fm = f;
      f = fp;
    }
    return f;
  }
  // downward (Miller) recurrence with renormalization against j_0
  const int start = l + 16 + static_cast<int>(std::ceil(std::sqrt(40.0 * (l + 1))));
  double fp = 0.0, f = 1e-30;
  double result = 0.0;
  for (int i = start; i >= 1; --i) {
    const double fm = (2.0 * i + 1.0) / x * f - fp;
    fp = f;
    f = fm;
    if (i - 1 == l) result = f;
    if (std::abs(f) > 1e250) {  // rescale to avoid overflow; ratios are preserved
      f *= 1e-250;
      fp *= 1e-250;
      result *= 1e-250;
    }
  }
  return result * (sb_j0(x) / f);
}

double sb_y(int l, double x) {
  if (l == 0) return sb_y0(x);
  if (l == 1) return sb_y1(x);
  // upward recurrence is always stable for y_l
  double fm = sb_y0(x), f = sb_y1(x);
  for (int i = 1; i < l; ++i) {
    const double fp = (2.0 * i + 1.0) / x * f - fm;
    fm = f;
    f = fp;
  }
  return f;
}

}  // namespace

double spherical_bessel(BesselKind kind, int l, double x) {
  if (l < 0 || l > kMaxOrder) {
    throw DomainError("order must be in [0, " + std::to_string(kMaxOrder) + "]");
  }
  if (kind == BesselKind::Second) {
    if (!(x > 0.0)) throw DomainError("second-kind function is singular at x <= 0");
    return sb_y(l, x);
  }
  if (x < 0.0) throw DomainError("argument must be non-negative");
  return sb_j(l, x);
}

SizeSpectrum quantified_sizes(const ModeSpec& mode, double k, int count) {
  if (!(k > 0.0)) throw DomainError("wavenumber k must be positive");
  if (count < 1) throw DomainError("count must be at least 1");

  const BesselKind kind = mode.even ? BesselKind::First : BesselKind::Second;
  auto f = [&](double x) { return spherical_bessel(kind, mode.l, x); };

  SizeSpectrum spec;
  spec.k = k;
  spec.mode = mode;

  // pi-step scan: consecutive zeros are separated by at least pi, so one step
  // never straddles two of them.  All zeros lie above l, so starting at l/2
  // skips the underflow region of j_l near the origin.
  const double x_start = std::max(1e-9, 0.5 * mode.l);
  const double x_limit = x_start + (count + mode.l + 8) * M_PI * 2.0;
  std::vector<std::pair<double, double>> trace;
  double x_lo = x_start;
  double f_lo = f(x_lo);
  trace.emplace_back(x_lo, f_lo);
  while (static_cast<int>(spec.roots.size()) < count) {
    const double x_hi = x_lo + M_PI;
    if (x_hi > x_limit) {
      throw BracketExhaustionError("zero scan exhausted before finding " +
                                       std::to_string(count) + " roots",
                                   std::move(trace));
    }
    const double f_hi = f(x_hi);
    trace.emplace_back(x_hi, f_hi);
    if (f_lo == 0.0) {
      spec.roots.push_back(x_lo);
    } else if (f_lo * f_hi < 0.0) {
      double a = x_lo, b = x_hi, fa = f_lo;
      while (b - a > 1e-13) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (fa * fm < 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      spec.roots.push_back(0.5 * (a + b));
    }
    x_lo = x_hi;
    f_lo = f_hi;
  }
  spec.sizes.reserve(spec.roots.size());
  for (double r : spec.roots) spec.sizes.push_back(r / k);
  return spec;
}

bool boundary_condition_check(const ModeSpec& mode, double k, double r_sphere) {
  if (!(r_sphere > 0.0)) throw DomainError("sphere radius must be positive");
  const double x = k * r_sphere;
  const int enough = static_cast<int>(std::ceil(x / M_PI)) + 2;
  const SizeSpectrum spec = quantified_sizes(mode, k, enough);
  for (double root : spec.roots) {
    if (std::abs(root - x) <= 1e-9) return true;
  }
  return false;
}

RadialResidualReport exterior_solution_residual(const ModeSpec& mode, double k, double c1,
                                                double c2, double r_lo, double r_hi, double h) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) {
    throw DomainError("radial range must exclude the origin and be increasing");
  }
  if (!(h > 0.0) || r_hi - r_lo < 4.0 * h) throw DomainError("step too large for the range");
  const int l = mode.l;
  auto radial = [&](double r) {
    double v = 0.0;
    if (c1 != 0.0) v += c1 * spherical_bessel(BesselKind::First, l, k * r);
    if (c2 != 0.0) v += c2 * spherical_bessel(BesselKind::Second, l, k * r);
    return v;
  };

  RadialResidualReport rep;
  rep.h = h;
  double sum_sq = 0.0;
  const int n = static_cast<int>(std::floor((r_hi - r_lo) / h)) + 1;
  for (int i = 1; i + 1 < n; ++i) {
    const double r = r_lo + i * h;
    const double rm = radial(r - h), r0 = radial(r), rp = radial(r + h);
    const double d2 = (rp - 2.0 * r0 + rm) / (h * h);
    const double d1 = (rp - rm) / (2.0 * h);
    const double res = d2 + 2.0 / r * d1 + (k * k - l * (l + 1.0) / (r * r)) * r0;
    rep.max = std::max(rep.max, std::abs(res));
    sum_sq += res * res;
    ++rep.nodes;
  }
  rep.rms = rep.nodes > 0 ? std::sqrt(sum_sq / rep.nodes) : 0.0;
  return rep;
}

}  // namespace rotframe
