#include "rotframe/wave.hpp"

#include <algorithm>
#include <cmath>

#include "rotframe/errors.hpp"

namespace rotframe {

namespace {
const Complex kI{0.0, 1.0};
}

SpatialProfile SpatialProfile::one() {
  SpatialProfile p;
  p.name = "one";
  p.value = [](const Vec3&) { return Complex{1.0, 0.0}; };
  p.laplacian = [](const Vec3&) { return Complex{0.0, 0.0}; };
  p.dz = [](const Vec3&) { return Complex{0.0, 0.0}; };
  p.dzz = [](const Vec3&) { return Complex{0.0, 0.0}; };
  return p;
}

SpatialProfile SpatialProfile::gaussian(double sigma) {
  const double s2 = sigma * sigma;
  SpatialProfile p;
  p.name = "gaussian";
  p.value = [s2](const Vec3& x) { return Complex{std::exp(-norm2(x) / (2.0 * s2)), 0.0}; };
  p.laplacian = [s2](const Vec3& x) {
    const double g = std::exp(-norm2(x) / (2.0 * s2));
    return Complex{g * (norm2(x) / (s2 * s2) - 3.0 / s2), 0.0};
  };
  p.dz = [s2](const Vec3& x) {
    const double g = std::exp(-norm2(x) / (2.0 * s2));
    return Complex{-x.z / s2 * g, 0.0};
  };
  p.dzz = [s2](const Vec3& x) {
    const double g = std::exp(-norm2(x) / (2.0 * s2));
    return Complex{(x.z * x.z / (s2 * s2) - 1.0 / s2) * g, 0.0};
  };
  return p;
}

SpatialProfile SpatialProfile::plane_wave(const Vec3& k) {
  SpatialProfile p;
  p.name = "planewave";
  p.value = [k](const Vec3& x) { return std::exp(kI * dot(k, x)); };
  p.laplacian = [k](const Vec3& x) { return -norm2(k) * std::exp(kI * dot(k, x)); };
  p.dz = [k](const Vec3& x) { return kI * k.z * std::exp(kI * dot(k, x)); };
  p.dzz = [k](const Vec3& x) { return -(k.z * k.z) * std::exp(kI * dot(k, x)); };
  return p;
}

SpatialProfile SpatialProfile::sinc_radial(double k) {
  SpatialProfile p;
  p.name = "sinc";
  p.value = [k](const Vec3& x) {
    const double kr = k * norm(x);
    if (kr < 1e-8) return Complex{1.0 - kr * kr / 6.0, 0.0};
    return Complex{std::sin(kr) / kr, 0.0};
  };
  // Helmholtz mode: lap q = -k^2 q everywhere.
  const auto value = p.value;
  p.laplacian = [k, value](const Vec3& x) { return -(k * k) * value(x); };
  return p;
}

BoostParams BoostParams::from_beta(double beta) {
  if (!(std::abs(beta) < 1.0)) {
    throw SuperluminalBoostError("boost requires |beta| < 1, got " + std::to_string(beta));
  }
  BoostParams b;
  b.beta = beta;
  b.gamma = 1.0 / std::sqrt(1.0 - beta * beta);
  return b;
}

BoostedWave::BoostedWave(SpatialProfile q, double omega, double beta, int sign)
    : q_(std::move(q)), omega_(omega), sign_(sign), boost_(BoostParams::from_beta(beta)) {
  if (!(omega > 0.0)) throw Error("wave frequency parameter must be positive");
  if (sign != +1 && sign != -1) throw Error("wave sign must be +1 or -1");
  if (!q_.value) throw Error("spatial profile must provide a value accessor");
}

BoostedWave build_boosted_wave(const SpatialProfile& q, double omega, double beta, int sign) {
  return BoostedWave(q, omega, beta, sign);
}

double BoostedWave::xi(double z, double tau) const {
  return boost_.gamma * (z - boost_.beta * tau);
}

double BoostedWave::eta(double z, double tau) const {
  return boost_.gamma * (tau - boost_.beta * z) - tau;
}

Complex BoostedWave::envelope(const Vec3& x, double tau) const {
  return q_.value({x.x, x.y, xi(x.z, tau)});
}

Complex BoostedWave::full_phase(const Vec3& x, double tau) const {
  // eta + tau = gamma (tau - beta z)
  return std::exp(kI * (sign_ * omega_ * boost_.gamma * (tau - boost_.beta * x.z)));
}

Complex BoostedWave::broglie_phase(const Vec3& x, double tau) const {
  return std::exp(kI * (sign_ * omega_ * eta(x.z, tau)));
}

Complex BoostedWave::psi(const Vec3& x, double tau) const {
  return envelope(x, tau) * full_phase(x, tau);
}

Complex BoostedWave::psi_b(const Vec3& x, double tau) const {
  return envelope(x, tau) * broglie_phase(x, tau);
}

Complex BoostedWave::dtau_psi_b(const Vec3& x, double tau) const {
  const double g = boost_.gamma;
  const double b = boost_.beta;
  const Vec3 p{x.x, x.y, xi(x.z, tau)};
  Complex dq{0.0, 0.0};
  if (b != 0.0) {
    if (!q_.dz) {
      // central difference in tau as fallback
      const double h = 1e-6;
      return (psi_b({x.x, x.y, x.z}, tau + h) - psi_b({x.x, x.y, x.z}, tau - h)) / (2.0 * h);
    }
    dq = -g * b * q_.dz(p);
  }
  const Complex phase = broglie_phase(x, tau);
  return (dq + kI * (sign_ * omega_ * (g - 1.0)) * q_.value(p)) * phase;
}

Complex BoostedWave::dtau2_psi(const Vec3& x, double tau) const {
  const double g = boost_.gamma;
  const double b = boost_.beta;
  const double so = sign_ * omega_;
  const Vec3 p{x.x, x.y, xi(x.z, tau)};
  const Complex phase = full_phase(x, tau);
  if (b == 0.0) {
    return -(omega_ * omega_) * q_.value(p) * phase;
  }
  if (!q_.dz || !q_.dzz) {
    const double h = 1e-5;
    return (psi(x, tau + h) - 2.0 * psi(x, tau) + psi(x, tau - h)) / (h * h);
  }
  const Complex term = g * g * b * b * q_.dzz(p) - 2.0 * kI * so * g * g * b * q_.dz(p) -
                       (so * so) * g * g * q_.value(p);
  return term * phase;
}

std::optional<Complex> BoostedWave::envelope_laplacian(const Vec3& x, double tau) const {
  // q_xx + q_yy + gamma^2 q_zz = lap q + (gamma^2 - 1) q_zz at (x, y, xi)
  const Vec3 p{x.x, x.y, xi(x.z, tau)};
  if (!q_.laplacian) return std::nullopt;
  if (boost_.beta == 0.0) return q_.laplacian(p);
  if (!q_.dzz) return std::nullopt;
  const double g2b2 = boost_.gamma * boost_.gamma * boost_.beta * boost_.beta;
  return q_.laplacian(p) + g2b2 * q_.dzz(p);
}

std::optional<Complex> BoostedWave::profile_laplacian(const Vec3& x, double tau) const {
  if (!q_.laplacian) return std::nullopt;
  return q_.laplacian({x.x, x.y, xi(x.z, tau)});
}

// ---------------------------------------------------------------------------
// Grid residuals

namespace {

struct Stencil {
  int radius;
  // second-derivative weights for offsets -radius..radius, premultiplied 1/h^2
  std::array<double, 5> w2;
};

Stencil make_stencil(int order, double h) {
  if (order == 5) {
    return {2,
            {-1.0 / (12.0 * h * h), 16.0 / (12.0 * h * h), -30.0 / (12.0 * h * h),
             16.0 / (12.0 * h * h), -1.0 / (12.0 * h * h)}};
  }
  return {1, {0.0, 1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h), 0.0}};
}

template <typename F>
Complex laplacian_h(const F& f, const Vec3& x, const Stencil& st, double h) {
  Complex acc{0.0, 0.0};
  for (int axis = 0; axis < 3; ++axis) {
    for (int o = -st.radius; o <= st.radius; ++o) {
      Vec3 p = x;
      p[axis] += o * h;
      acc += st.w2[o + 2] * f(p);
    }
  }
  return acc;
}

template <typename F>
Complex second_derivative_z(const F& f, const Vec3& x, const Stencil& st, double h) {
  Complex acc{0.0, 0.0};
  for (int o = -st.radius; o <= st.radius; ++o) {
    Vec3 p = x;
    p.z += o * h;
    acc += st.w2[o + 2] * f(p);
  }
  return acc;
}

struct NodeRange {
  int n = 0;        // nodes per axis
  int lo = 0, hi = 0;  // interior index range for norms
  double origin = 0.0;
};

NodeRange node_range(const GridSpec& grid) {
  NodeRange r;
  r.n = static_cast<int>(std::llround(2.0 * grid.extent / grid.h)) + 1;
  const int margin = grid.stencil == 5 ? 2 : 1;
  if (r.n < 2 * margin + 3) throw Error("grid too small for the stencil width");
  r.lo = margin;
  r.hi = r.n - 1 - margin;
  r.origin = -grid.extent;
  return r;
}

}  // namespace

ResidualReport schrodinger_residual(const BoostedWave& w, const GridSpec& grid) {
  const Stencil st = make_stencil(grid.stencil, grid.h);
  const NodeRange nr = node_range(grid);
  const double g = w.boost().gamma;
  const double omega = w.omega();
  const double beta_term = 0.5 * omega * (g - 1.0) * (g - 1.0);
  const double tau = grid.tau;

  auto psi_b = [&](const Vec3& p) { return w.psi_b(p, tau); };

  ResidualReport rep;
  rep.grid = grid;
  rep.beta_term = beta_term;
  double sum_sq = 0.0;
  for (int i = nr.lo; i <= nr.hi; ++i) {
    for (int j = nr.lo; j <= nr.hi; ++j) {
      for (int k = nr.lo; k <= nr.hi; ++k) {
        const Vec3 x{nr.origin + i * grid.h, nr.origin + j * grid.h, nr.origin + k * grid.h};
        const Complex lap_b = laplacian_h(psi_b, x, st, grid.h);
        const Complex dtau = w.dtau_psi_b(x, tau);
        // source term: (lap q / q) psi_b = (envelope Laplacian) * phase
        Complex source;
        if (auto lap_q = w.envelope_laplacian(x, tau)) {
          source = *lap_q * w.broglie_phase(x, tau);
        } else {
          auto env = [&](const Vec3& p) { return w.envelope(p, tau); };
          source = laplacian_h(env, x, st, grid.h) * w.broglie_phase(x, tau);
        }
        const Complex psi_b_val = w.psi_b(x, tau);
        const Complex res = -kI * static_cast<double>(w.sign()) * g * dtau +
                            lap_b / (2.0 * omega) - source / (2.0 * omega) -
                            beta_term * psi_b_val;
        const double mag = std::abs(res);
        const double scale = std::max({std::abs(lap_b) / (2.0 * omega), std::abs(g * dtau),
                                       std::abs(source) / (2.0 * omega),
                                       std::abs(beta_term * psi_b_val)});
        rep.scale = std::max(rep.scale, scale);
        rep.max = std::max(rep.max, mag);
        sum_sq += mag * mag;
        ++rep.nodes;
      }
    }
  }
  rep.rms = rep.nodes > 0 ? std::sqrt(sum_sq / rep.nodes) : 0.0;
  rep.resolution_warning = rep.scale > 0.0 && rep.max > 0.05 * rep.scale;
  return rep;
}

KleinGordonReport klein_gordon_residual(const BoostedWave& w, const GridSpec& grid) {
  const Stencil st = make_stencil(grid.stencil, grid.h);
  const NodeRange nr = node_range(grid);
  const double omega = w.omega();
  const double b = w.boost().beta;
  const double g = w.boost().gamma;
  const double tau = grid.tau;

  auto psi = [&](const Vec3& p) { return w.psi(p, tau); };
  auto env = [&](const Vec3& p) { return w.envelope(p, tau); };

  KleinGordonReport out;
  out.residual.grid = grid;
  out.residual.beta_term = 0.5 * omega * (g - 1.0) * (g - 1.0);

  double sum_sq = 0.0;
  double max_psi = 0.0;
  std::vector<Complex> scalars;
  std::vector<Complex> psi_vals;
  scalars.reserve(512);

  for (int i = nr.lo; i <= nr.hi; ++i) {
    for (int j = nr.lo; j <= nr.hi; ++j) {
      for (int k = nr.lo; k <= nr.hi; ++k) {
        const Vec3 x{nr.origin + i * grid.h, nr.origin + j * grid.h, nr.origin + k * grid.h};
        const Complex psi_val = w.psi(x, tau);
        const Complex ddtau = w.dtau2_psi(x, tau);
        const Complex lap_psi = laplacian_h(psi, x, st, grid.h);
        // bracket kernel: lap_grid(q) - beta^2 d2z_grid(q) = plain profile
        // Laplacian at (x, y, xi); cleared through the unimodular phase.
        Complex kernel;
        if (auto lap_q = w.profile_laplacian(x, tau)) {
          kernel = *lap_q;
        } else {
          kernel = laplacian_h(env, x, st, grid.h) -
                   (b * b) * second_derivative_z(env, x, st, grid.h);
        }
        const Complex phase = w.full_phase(x, tau);
        const Complex res = (ddtau - lap_psi) + kernel * phase + (omega * omega) * psi_val;
        const double mag = std::abs(res);
        const double scale = std::max({std::abs(ddtau), std::abs(lap_psi), std::abs(kernel),
                                       omega * omega * std::abs(psi_val)});
        out.residual.scale = std::max(out.residual.scale, scale);
        out.residual.max = std::max(out.residual.max, mag);
        sum_sq += mag * mag;
        ++out.residual.nodes;

        scalars.push_back(-(ddtau - lap_psi));  // divided by psi below
        psi_vals.push_back(psi_val);
        max_psi = std::max(max_psi, std::abs(psi_val));
      }
    }
  }
  out.residual.rms = out.residual.nodes > 0 ? std::sqrt(sum_sq / out.residual.nodes) : 0.0;
  out.residual.resolution_warning =
      out.residual.scale > 0.0 && out.residual.max > 0.05 * out.residual.scale;

  // extracted scalar -(1/psi)(d2tau - lap) psi over non-degenerate nodes
  const double cutoff = 1e-12 * max_psi;
  Complex mean{0.0, 0.0};
  int used = 0;
  for (std::size_t n = 0; n < scalars.size(); ++n) {
    if (std::abs(psi_vals[n]) <= cutoff) {
      ++out.scalar.excluded;
      continue;
    }
    scalars[n] /= psi_vals[n];
    mean += scalars[n];
    ++used;
  }
  if (used > 0) {
    mean /= static_cast<double>(used);
    double var = 0.0;
    for (std::size_t n = 0; n < scalars.size(); ++n) {
      if (std::abs(psi_vals[n]) <= cutoff) continue;
      var += std::norm(scalars[n] - mean);
    }
    out.scalar.mean = mean;
    out.scalar.stddev = std::sqrt(var / used);
    out.scalar.nodes = used;
  }
  return out;
}

ScalarFieldStats extract_scalar_generic(const std::function<Complex(const Vec3&, double)>& psi,
                                        const GridSpec& grid) {
  const Stencil st = make_stencil(grid.stencil, grid.h);
  const NodeRange nr = node_range(grid);
  const double tau = grid.tau;
  const double h = grid.h;

  ScalarFieldStats stats;
  std::vector<Complex> scalars;
  std::vector<Complex> psi_vals;
  double max_psi = 0.0;

  auto psi_now = [&](const Vec3& p) { return psi(p, tau); };
  for (int i = nr.lo; i <= nr.hi; ++i) {
    for (int j = nr.lo; j <= nr.hi; ++j) {
      for (int k = nr.lo; k <= nr.hi; ++k) {
        const Vec3 x{nr.origin + i * h, nr.origin + j * h, nr.origin + k * h};
        const Complex p0 = psi(x, tau);
        const Complex ddtau = (psi(x, tau + h) - 2.0 * p0 + psi(x, tau - h)) / (h * h);
        const Complex lap = laplacian_h(psi_now, x, st, h);
        scalars.push_back(-(ddtau - lap));
        psi_vals.push_back(p0);
        max_psi = std::max(max_psi, std::abs(p0));
      }
    }
  }
  const double cutoff = 1e-12 * max_psi;
  Complex mean{0.0, 0.0};
  int used = 0;
  for (std::size_t n = 0; n < scalars.size(); ++n) {
    if (std::abs(psi_vals[n]) <= cutoff) {
      ++stats.excluded;
      continue;
    }
    scalars[n] /= psi_vals[n];
    mean += scalars[n];
    ++used;
  }
  if (used > 0) {
    mean /= static_cast<double>(used);
    double var = 0.0;
    for (std::size_t n = 0; n < scalars.size(); ++n) {
      if (std::abs(psi_vals[n]) <= cutoff) continue;
      var += std::norm(scalars[n] - mean);
    }
    stats.mean = mean;
    stats.stddev = std::sqrt(var / used);
    stats.nodes = used;
  }
  return stats;
}

ResidualReport wave_equation_residual(const BoostedWave& w, const GridSpec& grid) {
  const Stencil st = make_stencil(grid.stencil, grid.h);
  const NodeRange nr = node_range(grid);
  const double tau = grid.tau;
  auto psi = [&](const Vec3& p) { return w.psi(p, tau); };

  ResidualReport rep;
  rep.grid = grid;
  double sum_sq = 0.0;
  for (int i = nr.lo; i <= nr.hi; ++i) {
    for (int j = nr.lo; j <= nr.hi; ++j) {
      for (int k = nr.lo; k <= nr.hi; ++k) {
        const Vec3 x{nr.origin + i * grid.h, nr.origin + j * grid.h, nr.origin + k * grid.h};
        const Complex ddtau = w.dtau2_psi(x, tau);
        const Complex lap = laplacian_h(psi, x, st, grid.h);
        const double mag = std::abs(ddtau - lap);
        rep.scale = std::max(rep.scale, std::max(std::abs(ddtau), std::abs(lap)));
        rep.max = std::max(rep.max, mag);
        sum_sq += mag * mag;
        ++rep.nodes;
      }
    }
  }
  rep.rms = rep.nodes > 0 ? std::sqrt(sum_sq / rep.nodes) : 0.0;
  return rep;
}

PotentialDecomposition potential_decomposition(const SpatialProfile& q, double omega,
                                               const GridSpec& grid, bool mass_mapping) {
  if (!q.value) throw Error("spatial profile must provide a value accessor");
  if (!(omega > 0.0)) throw Error("frequency parameter must be positive");
  const Stencil st = make_stencil(grid.stencil, grid.h);
  const NodeRange nr = node_range(grid);

  // reject grids where q vanishes
  std::vector<std::array<double, 3>> bad;
  double max_q = 0.0;
  for (int i = nr.lo; i <= nr.hi; ++i) {
    for (int j = nr.lo; j <= nr.hi; ++j) {
      for (int k = nr.lo; k <= nr.hi; ++k) {
        const Vec3 x{nr.origin + i * grid.h, nr.origin + j * grid.h, nr.origin + k * grid.h};
        max_q = std::max(max_q, std::abs(q.value(x)));
      }
    }
  }
  const double cutoff = 1e-12 * max_q;

  PotentialDecomposition out;
  double boundary_r = -1.0;
  double boundary_u = 0.0;
  for (int i = nr.lo; i <= nr.hi; ++i) {
    for (int j = nr.lo; j <= nr.hi; ++j) {
      for (int k = nr.lo; k <= nr.hi; ++k) {
        const Vec3 x{nr.origin + i * grid.h, nr.origin + j * grid.h, nr.origin + k * grid.h};
        const Complex qv = q.value(x);
        if (std::abs(qv) <= cutoff) {
          if (bad.size() < 16) bad.push_back({x.x, x.y, x.z});
          continue;
        }
        const Complex lap = q.laplacian ? q.laplacian(x) : laplacian_h(q.value, x, st, grid.h);
        const Complex u = lap / qv;
        out.nodes.push_back(x);
        out.u.push_back(u.real());
        const double r = norm(x);
        if (r > boundary_r) {
          boundary_r = r;
          boundary_u = u.real();
        }
      }
    }
  }
  if (!bad.empty()) {
    throw DivisionSingularityError("profile vanishes on " + std::to_string(bad.size()) +
                                       "+ grid nodes",
                                   std::move(bad));
  }
  const double scale = 1.0 / (2.0 * omega);  // hbar^2/2m with Omega = m c/hbar, hbar = c = 1
  out.E = scale * boundary_u;
  out.boundary_radius = boundary_r;
  out.U.reserve(out.u.size());
  for (double u : out.u) out.U.push_back(scale * (u - boundary_u));
  out.classification = out.E < 0.0 ? "capture" : "free motion";
  out.scale_label = mass_mapping ? "hbar^2/(2 m) with Omega = m c / hbar, hbar = c = 1"
                                 : "1/(2 Omega)";
  return out;
}

}  // namespace rotframe
