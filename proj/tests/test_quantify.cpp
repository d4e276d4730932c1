#include <doctest.h>

#include <cmath>

#include "rotframe/quantify.hpp"

using namespace rotframe;

namespace {

double closed_j(int l, double x) {
  switch (l) {
    case 0: return std::sin(x) / x;
    case 1: return std::sin(x) / (x * x) - std::cos(x) / x;
    case 2: return (3.0 / (x * x * x) - 1.0 / x) * std::sin(x) - 3.0 * std::cos(x) / (x * x);
    default: return 0.0;
  }
}

double closed_y(int l, double x) {
  switch (l) {
    case 0: return -std::cos(x) / x;
    case 1: return -std::cos(x) / (x * x) - std::sin(x) / x;
    case 2: return (-3.0 / (x * x * x) + 1.0 / x) * std::cos(x) - 3.0 * std::sin(x) / (x * x);
    default: return 0.0;
  }
}

// independent oracle: bisect a closed-form function on a bracket
double bisect_closed(double (*f)(int, double), int l, double lo, double hi) {
  double flo = f(l, lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(l, mid);
    if (flo * fm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("two-source: profile invariants are enforced") {
  CHECK_NOTHROW(SourcePair1D::make(0.5, PairSigns::Same, [](double s) { return std::sin(s); }));
  // cos is antiperiodic too
  CHECK_NOTHROW(SourcePair1D::make(0.5, PairSigns::Same, [](double s) { return std::cos(s); }));
  CHECK_THROWS_AS(
      SourcePair1D::make(0.5, PairSigns::Same, [](double s) { return std::sin(s) + 0.1; }),
      Error);
  CHECK_THROWS_AS(
      SourcePair1D::make(0.5, PairSigns::Same, [](double s) { return std::sin(s / 2.0); }),
      Error);
}

TEST_CASE("two-source: symmetric family cancels externally at a = pi/2") {
  const SourcePair1D pair =
      SourcePair1D::make(M_PI / 2.0, PairSigns::Same, [](double s) { return std::sin(s); });
  for (double x : {2.0, 5.0, 11.0}) {
    for (double t : {0.0, 0.7, 3.0}) {
      CHECK(std::abs(two_source_field(pair, x, t)) < 1e-12);
      CHECK(std::abs(two_source_field(pair, -x, t)) < 1e-12);
    }
  }
  // interior field is not zero away from the midpoint (at x = 0 the two
  // counter-propagating terms cancel by oddness)
  CHECK(std::abs(two_source_field(pair, 0.5, 0.4)) > 0.1);
}

TEST_CASE("two-source: anti-symmetric family cancels with opposite signs at a = pi") {
  const SourcePair1D pair =
      SourcePair1D::make(M_PI, PairSigns::Opposite, [](double s) { return std::sin(s); });
  for (double x : {4.0, 9.0}) {
    for (double t : {0.0, 1.3}) {
      CHECK(std::abs(two_source_field(pair, x, t)) < 1e-12);
    }
  }
}

TEST_CASE("two-source: phased sum amplitude at a = pi/4") {
  const SourcePair1D pair =
      SourcePair1D::make(M_PI / 4.0, PairSigns::Same, [](double s) { return std::sin(s); });
  double amp = 0.0;
  for (int i = 0; i < 2000; ++i) {
    amp = std::max(amp, std::abs(two_source_field(pair, 3.0, 2.0 * M_PI * i / 2000.0)));
  }
  CHECK(amp == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("two-source: field is antiperiodic in t with period pi/v") {
  const SourcePair1D pair =
      SourcePair1D::make(1.1, PairSigns::Same, [](double s) { return std::sin(s); }, 2.0);
  const double antiperiod = M_PI / pair.v;
  for (double x : {-3.0, 0.4, 2.5}) {
    for (double t : {0.0, 0.9, 4.2}) {
      CHECK(two_source_field(pair, x, t + antiperiod) ==
            doctest::Approx(-two_source_field(pair, x, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-source: scan finds the discrete cancellation families") {
  std::vector<double> a_grid;
  const int n = 400;
  for (int i = 1; i <= n; ++i) a_grid.push_back(4.0 * M_PI * i / n);
  auto sine = [](double s) { return std::sin(s); };

  const auto same = external_cancellation_scan(sine, PairSigns::Same, a_grid);
  const auto opposite = external_cancellation_scan(sine, PairSigns::Opposite, a_grid);

  int same_zeros = 0, opp_zeros = 0;
  for (const auto& e : same) {
    if (e.max_external_amplitude <= 1e-12) {
      ++same_zeros;
      const double m = std::fmod(e.a - M_PI / 2.0, M_PI);
      CHECK(std::min(std::abs(m), std::abs(M_PI - std::abs(m))) < 1e-9);
    }
  }
  for (const auto& e : opposite) {
    if (e.max_external_amplitude <= 1e-12) {
      ++opp_zeros;
      const double m = std::fmod(e.a, M_PI);
      CHECK(std::min(std::abs(m), std::abs(M_PI - std::abs(m))) < 1e-9);
    }
  }
  CHECK(same_zeros == 4);  // pi/2 + pi m inside (0, 4 pi]
  CHECK(opp_zeros == 4);   // pi m inside (0, 4 pi]

  // discreteness: midway between adjacent zeros the amplitude is large
  for (const auto& e : same) {
    const double m = std::fmod(e.a, M_PI);
    if (std::abs(m) < 1e-9 || std::abs(M_PI - m) < 1e-9) {
      CHECK(e.max_external_amplitude > 0.1);
    }
  }
}

TEST_CASE("two-source: constant-zero profile cancels everywhere") {
  const auto zero = [](double) { return 0.0; };
  const auto scan = external_cancellation_scan(zero, PairSigns::Same, {0.3, 1.0, 2.7});
  for (const auto& e : scan) CHECK(e.max_external_amplitude == 0.0);
}

TEST_CASE("bessel: closed forms for l = 0, 1, 2") {
  for (double x : {0.3, 1.0, 2.718, 7.5, 20.0, 77.0}) {
    for (int l : {0, 1, 2}) {
      CHECK(spherical_bessel(BesselKind::First, l, x) ==
            doctest::Approx(closed_j(l, x)).epsilon(1e-12));
      CHECK(spherical_bessel(BesselKind::Second, l, x) ==
            doctest::Approx(closed_y(l, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bessel: special values and small-argument behavior") {
  CHECK(std::abs(spherical_bessel(BesselKind::First, 0, M_PI)) < 1e-15);
  CHECK(std::abs(spherical_bessel(BesselKind::Second, 0, M_PI / 2.0)) < 1e-15);
  CHECK(spherical_bessel(BesselKind::First, 0, 0.0) == 1.0);
  CHECK(spherical_bessel(BesselKind::First, 1, 0.0) == 0.0);
  const double x = 1e-4;
  CHECK(spherical_bessel(BesselKind::First, 1, x) == doctest::Approx(x / 3.0).epsilon(1e-8));
  CHECK(spherical_bessel(BesselKind::First, 2, x) ==
        doctest::Approx(x * x / 15.0).epsilon(1e-8));
}

TEST_CASE("bessel: domain errors") {
  CHECK_THROWS_AS(spherical_bessel(BesselKind::Second, 0, 0.0), DomainError);
  CHECK_THROWS_AS(spherical_bessel(BesselKind::Second, 3, -1.0), DomainError);
  CHECK_THROWS_AS(spherical_bessel(BesselKind::First, 0, -0.5), DomainError);
  CHECK_THROWS_AS(spherical_bessel(BesselKind::First, 51, 1.0), DomainError);
}

TEST_CASE("bessel: cross-product identity j_l y_(l-1) - j_(l-1) y_l = 1/x^2") {
  for (int l : {1, 2, 5, 10, 25, 50}) {
    for (double x : {0.8, 3.0, 12.0, 40.0, 95.0}) {
      const double lhs = spherical_bessel(BesselKind::First, l, x) *
                             spherical_bessel(BesselKind::Second, l - 1, x) -
                         spherical_bessel(BesselKind::First, l - 1, x) *
                             spherical_bessel(BesselKind::Second, l, x);
      CHECK(lhs == doctest::Approx(1.0 / (x * x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sizes: l = 0 even zeros are n pi, odd zeros are (n - 1/2) pi") {
  const SizeSpectrum even = quantified_sizes({0, true}, 2.0, 3);
  REQUIRE(even.roots.size() == 3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(even.roots[n - 1] - n * M_PI) < 1e-12);
    CHECK(std::abs(even.sizes[n - 1] - n * M_PI / 2.0) < 1e-12);
  }

  const SizeSpectrum odd = quantified_sizes({0, false}, 1.0, 2);
  REQUIRE(odd.roots.size() == 2);
  CHECK(std::abs(odd.sizes[0] - M_PI / 2.0) < 1e-12);
  CHECK(std::abs(odd.sizes[1] - 3.0 * M_PI / 2.0) < 1e-12);
}

TEST_CASE("sizes: first zero of j_1 against the closed-form bisection oracle") {
  const SizeSpectrum spec = quantified_sizes({1, true}, 1.0, 1);
  const double oracle = bisect_closed(closed_j, 1, 4.0, 5.0);
  CHECK(std::abs(spec.roots[0] - oracle) < 1e-10);
  CHECK(spec.roots[0] == doctest::Approx(4.4934095).epsilon(1e-6));
  // genuine sign change
  const double eps = 1e-6;
  CHECK(closed_j(1, spec.roots[0] - eps) * closed_j(1, spec.roots[0] + eps) < 0.0);
}

TEST_CASE("sizes: roots are genuine sign changes and strictly increasing") {
  for (int l : {0, 1, 3, 7}) {
    for (bool even : {true, false}) {
      const SizeSpectrum spec = quantified_sizes({l, even}, 1.3, 6);
      const BesselKind kind = even ? BesselKind::First : BesselKind::Second;
      for (std::size_t i = 0; i < spec.roots.size(); ++i) {
        const double r = spec.roots[i];
        CHECK(spherical_bessel(kind, l, r - 1e-6) * spherical_bessel(kind, l, r + 1e-6) < 0.0);
        if (i > 0) CHECK(spec.roots[i] > spec.roots[i - 1]);
        CHECK(spec.sizes[i] == r / 1.3);
      }
    }
  }
}

TEST_CASE("sizes: zeros of j_l and j_(l+1) interlace") {
  for (int l = 0; l <= 5; ++l) {
    const SizeSpectrum a = quantified_sizes({l, true}, 1.0, 5);
    const SizeSpectrum b = quantified_sizes({l + 1, true}, 1.0, 5);
    for (int i = 0; i < 4; ++i) {
      CHECK(a.roots[i] < b.roots[i]);
      CHECK(b.roots[i] < a.roots[i + 1]);
    }
  }
}

TEST_CASE("boundary condition: allowed and forbidden radii") {
  CHECK(boundary_condition_check({0, true}, 1.0, M_PI));
  CHECK(!boundary_condition_check({0, true}, 1.0, 1.0));
  // round-trip: every emitted size passes
  for (int l : {0, 1, 2, 3}) {
    for (bool even : {true, false}) {
      const SizeSpectrum spec = quantified_sizes({l, even}, 2.7, 5);
      for (double r : spec.sizes) CHECK(boundary_condition_check({l, even}, 2.7, r));
    }
  }
}

TEST_CASE("radial residual: closed solutions satisfy the exterior equation at order 2") {
  // l = 0 pure first kind
  const RadialResidualReport c1 = exterior_solution_residual({0, true}, 2.0, 1.0, 0.0, 1.0, 6.0, 0.02);
  const RadialResidualReport c2 = exterior_solution_residual({0, true}, 2.0, 1.0, 0.0, 1.0, 6.0, 0.01);
  CHECK(c1.max < 1e-2);
  CHECK(std::log2(c1.rms / c2.rms) == doctest::Approx(2.0).epsilon(0.05));

  // zero solution has zero residual
  const RadialResidualReport zero = exterior_solution_residual({2, true}, 1.5, 0.0, 0.0, 1.0, 4.0, 0.05);
  CHECK(zero.max == 0.0);

  // l = 2 mixed combination
  const RadialResidualReport m1 =
      exterior_solution_residual({2, true}, 1.5, 0.7, -0.4, 1.0, 5.0, 0.02);
  const RadialResidualReport m2 =
      exterior_solution_residual({2, true}, 1.5, 0.7, -0.4, 1.0, 5.0, 0.01);
  CHECK(std::log2(m1.rms / m2.rms) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("radial residual: invalid ranges are rejected") {
  CHECK_THROWS_AS(exterior_solution_residual({0, true}, 1.0, 1.0, 0.0, 0.0, 3.0, 0.01),
                  DomainError);
  CHECK_THROWS_AS(exterior_solution_residual({0, true}, 1.0, 1.0, 0.0, 2.0, 1.0, 0.01),
                  DomainError);
}
