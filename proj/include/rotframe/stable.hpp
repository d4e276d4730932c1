#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rotframe/linalg.hpp"
#include "rotframe/metric.hpp"
#include "rotframe/rotation.hpp"

namespace rotframe {

// Stable regions: the loci where the time-averaged dt^2 coefficient of the
// interval vanishes.  A single axis rotation gives a cylinder of radius c/w
// around its axis; the three-orthogonal-axis product gives an ellipsoid of
// revolution r(theta).

/// Cylinder radius c/w.  Throws NoSurfaceError for w <= 0.
double asr_radius(double omega, double c);

/// Ellipsoid radius at polar angle theta for the product z(w1)*x(w2)*y(w3):
///   r(theta) = [ (w1/c)^2 sin^2 + (w2/c)^2 (1 - sin^2/2)
///                + (w3/c)^2 (1 + sin^2/2) / 2 ]^(-1/2).
/// Throws NoSurfaceError when all frequencies vanish.
double msr_radius(double theta, double w1, double w2, double w3, double c);

/// Averaged g_tt along rays from the origin, precomputed once per expression.
class GttProfile {
 public:
  GttProfile(const RotationExpr& expr, double c, const AveragingControl& control = {});

  double g_tt(const Vec3& x) const;          // dt^2 coefficient, raw time units
  double c() const { return c_; }
  const MotionAverages& averages() const { return avg_; }

 private:
  MotionAverages avg_;
  double c_;
};

/// First zero of the averaged dt^2 coefficient along the ray from the origin:
/// fixed-step bracketing scan (200 steps to r_max), then bisection to
/// 1e-12 * r_max.  Throws RootNotFoundError (with the sampled profile) when no
/// sign change occurs before r_max.
double locate_gtt_zero(const GttProfile& profile, const Vec3& direction, double r_max);

struct CylinderSurface {
  double radius = 0.0;
  double z_half_extent = 0.0;  // tube truncated at |z| <= z_half_extent
};

struct EllipsoidSurface {
  double w1 = 0.0, w2 = 0.0, w3 = 0.0;
  double c = 1.0;  // r(theta) evaluated on demand from msr_radius
};

struct NumericSurface {
  // Level-set radii sampled on a (theta, phi) grid, theta-major.
  int n_theta = 0, n_phi = 0;
  std::vector<double> r;  // size n_theta * n_phi, theta in [0, pi], phi in [0, 2pi)
};

struct StableSurface {
  std::variant<CylinderSurface, EllipsoidSurface, NumericSurface> shape;
  double omega1 = 0.0, omega2 = 0.0, omega3 = 0.0;
  double c = 1.0;
};

StableSurface make_cylinder_surface(double omega, double c, double z_extent_multiple = 3.0);
StableSurface make_ellipsoid_surface(double w1, double w2, double w3, double c);

/// Numeric level-set surface from the averaged metric of any expression,
/// sampled by locate_gtt_zero over a (theta, phi) grid.
StableSurface make_numeric_surface(const GttProfile& profile, int n_theta, int n_phi,
                                   double r_max);

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based, consistent winding
};

/// Parametric mesh: cylinders get an open-ended tube (resolution = n_phi x
/// n_z), spheroidal surfaces a closed mesh with polar caps.  Resolution must
/// be at least 8 in each angular parameter.
SurfaceMesh mesh_surface(const StableSurface& surface, int res_a, int res_b);

/// CSV rows for the surface: (theta, phi, r) for spheroidal kinds,
/// (phi, z, rho) for cylinders.  Header included, RFC 4180 line endings.
std::string surface_csv(const StableSurface& surface, int res_a, int res_b);

}  // namespace rotframe
