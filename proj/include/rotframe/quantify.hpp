#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rotframe/errors.hpp"

namespace rotframe {

// One-dimensional two-source cancellation model and the Bessel-zero size
// quantification for exterior spherical waves.

enum class PairSigns { Same, Opposite };

/// Two sources at phase positions -a and +a emitting a periodic profile with
/// half-period antisymmetry u(s + pi) = -u(s), u(s + 2 pi) = u(s).
struct SourcePair1D {
  double a = 0.0;             // half separation, phase units (rad)
  PairSigns signs = PairSigns::Same;
  std::function<double(double)> profile;
  double v = 1.0;             // propagation speed

  /// Validates the profile's periodicity and half-period antisymmetry at
  /// sampled points (tolerance 1e-12); throws Error on violation.
  static SourcePair1D make(double a, PairSigns signs, std::function<double(double)> profile,
                           double v = 1.0);
};

/// Superposed field at phase position x and time t; the superposition picks
/// the region-appropriate travel directions on (-inf, -a), (-a, a), (a, inf).
double two_source_field(const SourcePair1D& pair, double x, double t);

struct CancellationScanEntry {
  double a = 0.0;
  double max_external_amplitude = 0.0;
};

/// Maximum external-field amplitude for each half-separation in a_grid; the
/// amplitude is maximized over one full phase period outside the sources.
std::vector<CancellationScanEntry> external_cancellation_scan(
    const std::function<double(double)>& profile, PairSigns signs,
    const std::vector<double>& a_grid);

// ---------------------------------------------------------------------------
// Spherical Bessel functions (half-integer order up to the sqrt(2/pi x)
// factor, which does not move zeros).  Closed-form recurrences: upward for
// y_l, downward with renormalization for j_l when l >= x.

enum class BesselKind { First, Second };

/// j_l(x) (kind First) or y_l(x) (kind Second).  Throws DomainError for
/// x < 0, or x <= 0 with kind Second (singular at the origin).  l <= 50.
double spherical_bessel(BesselKind kind, int l, double x);

struct ModeSpec {
  int l = 0;
  bool even = true;  // even mode -> first kind, odd mode -> second kind
};

struct SizeSpectrum {
  double k = 0.0;
  ModeSpec mode;
  std::vector<double> roots;  // zeros alpha_1 < alpha_2 < ... of the Bessel function
  std::vector<double> sizes;  // r_i = alpha_i / k
};

/// First n positive zeros by pi-step bracketing scan plus bisection to 1e-13
/// absolute, then sizes r_i = alpha_i / k.  Throws BracketExhaustionError
/// (with the scan trace) if the scan fails.
SizeSpectrum quantified_sizes(const ModeSpec& mode, double k, int count);

/// True iff k * r_sphere lies within 1e-9 of a zero of the mode's function,
/// i.e. the sphere radius is an allowed size.
bool boundary_condition_check(const ModeSpec& mode, double k, double r_sphere);

struct RadialResidualReport {
  double max = 0.0;
  double rms = 0.0;
  double h = 0.0;
  int nodes = 0;
};

/// Central-difference residual of the radial Helmholtz equation
///   R'' + (2/r) R' + (k^2 - l(l+1)/r^2) R = 0
/// for R(r) = C1 j_l(kr) + C2 y_l(kr) on [r_lo, r_hi] (origin excluded).
RadialResidualReport exterior_solution_residual(const ModeSpec& mode, double k, double c1,
                                                double c2, double r_lo, double r_hi, double h);

}  // namespace rotframe
