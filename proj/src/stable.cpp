#include "rotframe/stable.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "rotframe/errors.hpp"
#include "rotframe/expr_text.hpp"

namespace rotframe {

double asr_radius(double omega, double c) {
  if (!(omega > 0.0)) {
    throw NoSurfaceError("no stable cylinder: frequency must be positive");
  }
  return c / omega;
}

double msr_radius(double theta, double w1, double w2, double w3, double c) {
  if (w1 == 0.0 && w2 == 0.0 && w3 == 0.0) {
    throw NoSurfaceError("no stable ellipsoid: all frequencies are zero");
  }
  const double s2 = std::sin(theta) * std::sin(theta);
  const double bracket = (w1 / c) * (w1 / c) * s2 +
                         (w2 / c) * (w2 / c) * (1.0 - 0.5 * s2) +
                         0.5 * (w3 / c) * (w3 / c) * (1.0 + 0.5 * s2);
  if (!(bracket > 0.0)) {
    throw NoSurfaceError("dt^2 coefficient does not vanish along theta = " +
                         std::to_string(theta));
  }
  return 1.0 / std::sqrt(bracket);
}

GttProfile::GttProfile(const RotationExpr& expr, double c, const AveragingControl& control)
    : avg_(average_motion(expr, control)), c_(c) {}

double GttProfile::g_tt(const Vec3& x) const {
  const Vec3 xd = x * avg_.dadat;
  return c_ * c_ - dot(xd, x);
}

double locate_gtt_zero(const GttProfile& profile, const Vec3& direction, double r_max) {
  const double n = norm(direction);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw RootNotFoundError("direction must be a nonzero vector", {});
  }
  const Vec3 dir{direction.x / n, direction.y / n, direction.z / n};
  if (!(profile.g_tt({0, 0, 0}) > 0.0)) {
    throw RootNotFoundError("dt^2 coefficient not positive at the rotation point", {});
  }

  constexpr int kScanSteps = 200;
  const double dr = r_max / kScanSteps;
  std::vector<std::pair<double, double>> samples;
  samples.reserve(kScanSteps + 1);
  double r_lo = 0.0;
  double f_lo = profile.g_tt({0, 0, 0});
  samples.emplace_back(r_lo, f_lo);
  double r_hi = 0.0, f_hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= kScanSteps; ++i) {
    r_hi = i * dr;
    f_hi = profile.g_tt(r_hi * dir);
    samples.emplace_back(r_hi, f_hi);
    if (f_hi == 0.0) return r_hi;
    if (f_lo > 0.0 && f_hi < 0.0) {
      bracketed = true;
      break;
    }
    r_lo = r_hi;
    f_lo = f_hi;
  }
  if (!bracketed) {
    throw RootNotFoundError("no sign change of the dt^2 coefficient before r_max", samples);
  }

  const double tol = 1e-12 * r_max;
  while (r_hi - r_lo > tol) {
    const double mid = 0.5 * (r_lo + r_hi);
    if (mid == r_lo || mid == r_hi) break;
    const double f_mid = profile.g_tt(mid * dir);
    if (f_mid > 0.0) {
      r_lo = mid;
    } else {
      r_hi = mid;
    }
  }
  return 0.5 * (r_lo + r_hi);
}

StableSurface make_cylinder_surface(double omega, double c, double z_extent_multiple) {
  const double radius = asr_radius(omega, c);
  StableSurface s;
  s.shape = CylinderSurface{radius, z_extent_multiple * radius};
  s.omega1 = omega;
  s.c = c;
  return s;
}

StableSurface make_ellipsoid_surface(double w1, double w2, double w3, double c) {
  if (w1 == 0.0 && w2 == 0.0 && w3 == 0.0) {
    throw NoSurfaceError("no stable ellipsoid: all frequencies are zero");
  }
  StableSurface s;
  s.shape = EllipsoidSurface{w1, w2, w3, c};
  s.omega1 = w1;
  s.omega2 = w2;
  s.omega3 = w3;
  s.c = c;
  return s;
}

StableSurface make_numeric_surface(const GttProfile& profile, int n_theta, int n_phi,
                                   double r_max) {
  if (n_theta < 8 || n_phi < 8) {
    throw MeshError("numeric surface resolution must be at least 8 in each parameter");
  }
  NumericSurface num;
  num.n_theta = n_theta;
  num.n_phi = n_phi;
  num.r.resize(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = M_PI * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * M_PI * j / n_phi;
      const Vec3 dir{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                     std::cos(theta)};
      num.r[static_cast<std::size_t>(i) * n_phi + j] = locate_gtt_zero(profile, dir, r_max);
    }
  }
  StableSurface s;
  s.shape = std::move(num);
  s.c = profile.c();
  return s;
}

namespace {

SurfaceMesh mesh_cylinder(const CylinderSurface& cyl, int n_phi, int n_z) {
  if (n_phi < 8 || n_z < 8) {
    throw MeshError("cylinder mesh resolution must be at least 8 in each parameter");
  }
  if (!(cyl.radius > 0.0) || !std::isfinite(cyl.radius)) {
    throw MeshError("degenerate cylinder radius");
  }
  SurfaceMesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(n_phi) * n_z);
  for (int iz = 0; iz < n_z; ++iz) {
    const double z = -cyl.z_half_extent + 2.0 * cyl.z_half_extent * iz / (n_z - 1);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * M_PI * ip / n_phi;
      mesh.vertices.push_back({cyl.radius * std::cos(phi), cyl.radius * std::sin(phi), z});
    }
  }
  for (int iz = 0; iz + 1 < n_z; ++iz) {
    for (int ip = 0; ip < n_phi; ++ip) {
      const int a = iz * n_phi + ip;
      const int b = iz * n_phi + (ip + 1) % n_phi;
      const int c = (iz + 1) * n_phi + ip;
      const int d = (iz + 1) * n_phi + (ip + 1) % n_phi;
      mesh.triangles.push_back({a, b, d});
      mesh.triangles.push_back({a, d, c});
    }
  }
  return mesh;
}

// Closed spheroidal mesh from radii r(theta_i, phi_j); poles are single
// vertices shared by the cap fans.
SurfaceMesh mesh_radial(int n_theta, int n_phi,
                        const std::function<double(int, int)>& radius_at) {
  if (n_theta < 8 || n_phi < 8) {
    throw MeshError("surface mesh resolution must be at least 8 in each parameter");
  }
  SurfaceMesh mesh;
  const int rings = n_theta - 1;  // interior rings: i = 1 .. n_theta-2
  auto vertex_on = [&](int i, int j) {
    const double theta = M_PI * i / (n_theta - 1);
    const double phi = 2.0 * M_PI * j / n_phi;
    const double r = radius_at(i, j);
    if (!(r > 0.0) || !std::isfinite(r)) throw MeshError("degenerate surface radius");
    return Vec3{r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                r * std::cos(theta)};
  };
  mesh.vertices.push_back(vertex_on(0, 0));  // north pole
  for (int i = 1; i <= rings - 1; ++i) {
    for (int j = 0; j < n_phi; ++j) mesh.vertices.push_back(vertex_on(i, j));
  }
  mesh.vertices.push_back(vertex_on(n_theta - 1, 0));  // south pole
  const int south = static_cast<int>(mesh.vertices.size()) - 1;
  auto ring_index = [&](int i, int j) { return 1 + (i - 1) * n_phi + (j % n_phi); };

  for (int j = 0; j < n_phi; ++j) {
    mesh.triangles.push_back({0, ring_index(1, j), ring_index(1, j + 1)});
  }
  for (int i = 1; i <= rings - 2; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      const int a = ring_index(i, j);
      const int b = ring_index(i, j + 1);
      const int c = ring_index(i + 1, j);
      const int d = ring_index(i + 1, j + 1);
      mesh.triangles.push_back({a, c, d});
      mesh.triangles.push_back({a, d, b});
    }
  }
  for (int j = 0; j < n_phi; ++j) {
    mesh.triangles.push_back({south, ring_index(rings - 1, j + 1), ring_index(rings - 1, j)});
  }
  return mesh;
}

}  // namespace

SurfaceMesh mesh_surface(const StableSurface& surface, int res_a, int res_b) {
  if (const auto* cyl = std::get_if<CylinderSurface>(&surface.shape)) {
    return mesh_cylinder(*cyl, res_a, res_b);
  }
  if (const auto* ell = std::get_if<EllipsoidSurface>(&surface.shape)) {
    return mesh_radial(res_a, res_b, [&](int i, int) {
      const double theta = M_PI * i / (res_a - 1);
      return msr_radius(theta, ell->w1, ell->w2, ell->w3, ell->c);
    });
  }
  const auto& num = std::get<NumericSurface>(surface.shape);
  return mesh_radial(num.n_theta, num.n_phi, [&](int i, int j) {
    return num.r[static_cast<std::size_t>(i) * num.n_phi + (j % num.n_phi)];
  });
}

std::string surface_csv(const StableSurface& surface, int res_a, int res_b) {
  std::string out;
  if (const auto* cyl = std::get_if<CylinderSurface>(&surface.shape)) {
    out += "phi,z,rho\r\n";
    for (int iz = 0; iz < res_b; ++iz) {
      const double z = -cyl->z_half_extent + 2.0 * cyl->z_half_extent * iz / (res_b - 1);
      for (int ip = 0; ip < res_a; ++ip) {
        const double phi = 2.0 * M_PI * ip / res_a;
        out += format_real(phi);
        out += ',';
        out += format_real(z);
        out += ',';
        out += format_real(cyl->radius);
        out += "\r\n";
      }
    }
    return out;
  }
  out += "theta,phi,r\r\n";
  auto emit = [&](double theta, double phi, double r) {
    out += format_real(theta);
    out += ',';
    out += format_real(phi);
    out += ',';
    out += format_real(r);
    out += "\r\n";
  };
  if (const auto* ell = std::get_if<EllipsoidSurface>(&surface.shape)) {
    for (int i = 0; i < res_a; ++i) {
      const double theta = M_PI * i / (res_a - 1);
      const double r = msr_radius(theta, ell->w1, ell->w2, ell->w3, ell->c);
      for (int j = 0; j < res_b; ++j) emit(theta, 2.0 * M_PI * j / res_b, r);
    }
    return out;
  }
  const auto& num = std::get<NumericSurface>(surface.shape);
  for (int i = 0; i < num.n_theta; ++i) {
    const double theta = M_PI * i / (num.n_theta - 1);
    for (int j = 0; j < num.n_phi; ++j) {
      emit(theta, 2.0 * M_PI * j / num.n_phi,
           num.r[static_cast<std::size_t>(i) * num.n_phi + j]);
    }
  }
  return out;
}

}  // namespace rotframe
