#include "rotframe/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <utility>

#include "rotframe/expr_text.hpp"

namespace rotframe {

namespace {

constexpr double kUnitTol = 1e-12;

// Generator index pattern: for axis k the rotating block lives on rows/cols
// ((k+1)%3, (k+2)%3).  This makes x, y, z cyclic images of each other, so the
// arbitrary-axis path and the coordinate closed forms agree exactly.
int axis_index(Axis::Tag t) {
  switch (t) {
    case Axis::Tag::X: return 0;
    case Axis::Tag::Y: return 1;
    default: return 2;
  }
}

Mat3 coordinate_asr(int k, double angle, int sense) {
  const int i = (k + 1) % 3;
  const int j = (k + 2) % 3;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 a = Mat3::zero();
  a(k, k) = 1.0;
  a(i, i) = c;
  a(j, j) = c;
  a(i, j) = -sense * s;
  a(j, i) = sense * s;
  return a;
}

Mat3 coordinate_asr_derivative(int k, double angle, int sense, double omega) {
  const int i = (k + 1) % 3;
  const int j = (k + 2) % 3;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 a = Mat3::zero();
  a(i, i) = -omega * s;
  a(j, j) = -omega * s;
  a(i, j) = -sense * omega * c;
  a(j, i) = sense * omega * c;
  return a;
}

// Alignment rotation R with u * R = z-hat, built from a fixed-angle rotation
// about x (phi1 in [0, pi]) followed by one about y (phi2 in (-pi, pi]).
Mat3 alignment_to_z(const Vec3& u) {
  double phi1;
  if (u.y == 0.0 && u.z == 0.0) {
    phi1 = 0.0;
  } else {
    phi1 = std::atan2(-u.y, u.z);
    if (phi1 < 0.0) phi1 += M_PI;  // canonical branch
  }
  const Mat3 px = coordinate_asr(0, phi1, +1);
  const Vec3 u1 = u * px;  // now in the x0z-plane
  const double phi2 = std::atan2(u1.x, u1.z);
  const Mat3 py = coordinate_asr(1, phi2, +1);
  return px * py;
}

}  // namespace

Axis Axis::direction(const Vec3& d) {
  const double n = norm(d);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTol) {
    throw InvalidAxisError("axis direction must have unit norm within 1e-12, got norm " +
                           std::to_string(n));
  }
  return Axis(Tag::Dir, d);
}

AsrSpec make_asr(const Axis& axis, double signed_omega) {
  AsrSpec s;
  s.axis = axis;
  s.omega = std::abs(signed_omega);
  s.sense = signed_omega < 0.0 ? -1 : +1;
  return s;
}

RotationExpr RotationExpr::leaf(const AsrSpec& spec) {
  if (!(spec.omega >= 0.0) || !std::isfinite(spec.omega)) {
    throw InvalidExpressionError("leaf frequency must be finite and non-negative");
  }
  if (spec.sense != +1 && spec.sense != -1) {
    throw InvalidExpressionError("rotation sense must be +1 or -1");
  }
  RotationExpr e;
  e.kind_ = Kind::Leaf;
  e.spec_ = spec;
  return e;
}

RotationExpr RotationExpr::leaf(const Axis& axis, double signed_omega) {
  return leaf(make_asr(axis, signed_omega));
}

RotationExpr RotationExpr::product(std::vector<RotationExpr> children) {
  if (children.empty()) throw InvalidExpressionError("empty product composition list");
  RotationExpr e;
  e.kind_ = Kind::Product;
  e.children_ = std::move(children);
  return e;
}

RotationExpr RotationExpr::sum(std::vector<RotationExpr> children) {
  if (children.empty()) throw InvalidExpressionError("empty sum composition list");
  RotationExpr e;
  e.kind_ = Kind::Sum;
  e.children_ = std::move(children);
  return e;
}

bool RotationExpr::contains_sum() const {
  if (kind_ == Kind::Sum) return true;
  for (const auto& c : children_)
    if (c.contains_sum()) return true;
  return false;
}

void RotationExpr::visit_leaves(const std::function<void(const AsrSpec&)>& f) const {
  if (kind_ == Kind::Leaf) {
    f(spec_);
    return;
  }
  for (const auto& c : children_) c.visit_leaves(f);
}

std::vector<double> RotationExpr::leaf_frequencies() const {
  std::vector<double> w;
  visit_leaves([&](const AsrSpec& s) { w.push_back(s.omega); });
  return w;
}

Mat3 eval_asr(const AsrSpec& spec, double t) {
  const double angle = spec.omega * t;
  if (spec.axis.is_coordinate()) {
    return coordinate_asr(axis_index(spec.axis.tag()), angle, spec.sense);
  }
  const Mat3 r = alignment_to_z(spec.axis.unit());
  return r * coordinate_asr(2, angle, spec.sense) * transpose(r);
}

Mat3 eval_asr_derivative(const AsrSpec& spec, double t) {
  const double angle = spec.omega * t;
  if (spec.axis.is_coordinate()) {
    return coordinate_asr_derivative(axis_index(spec.axis.tag()), angle, spec.sense, spec.omega);
  }
  const Mat3 r = alignment_to_z(spec.axis.unit());
  return r * coordinate_asr_derivative(2, angle, spec.sense, spec.omega) * transpose(r);
}

namespace {

// Sum children are accumulated sorted by their serialized form, so that any
// permutation of the same terms reduces bit-for-bit identically.
std::vector<const RotationExpr*> canonical_sum_order(const RotationExpr& expr) {
  std::vector<std::pair<std::string, const RotationExpr*>> keyed;
  keyed.reserve(expr.children().size());
  for (const auto& c : expr.children()) keyed.emplace_back(to_text(c), &c);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<const RotationExpr*> order;
  order.reserve(keyed.size());
  for (const auto& [key, child] : keyed) order.push_back(child);
  return order;
}

}  // namespace

Mat3 eval_expr(const RotationExpr& expr, double t) {
  switch (expr.kind()) {
    case RotationExpr::Kind::Leaf:
      return eval_asr(expr.spec(), t);
    case RotationExpr::Kind::Product: {
      Mat3 a = eval_expr(expr.children().front(), t);
      for (std::size_t i = 1; i < expr.children().size(); ++i) {
        a = a * eval_expr(expr.children()[i], t);
      }
      return a;
    }
    case RotationExpr::Kind::Sum: {
      const auto order = canonical_sum_order(expr);
      Mat3 a = eval_expr(*order.front(), t);
      for (std::size_t i = 1; i < order.size(); ++i) a = a + eval_expr(*order[i], t);
      return a;
    }
  }
  throw InvalidExpressionError("unreachable expression kind");
}

Mat3 eval_expr_derivative(const RotationExpr& expr, double t) {
  switch (expr.kind()) {
    case RotationExpr::Kind::Leaf:
      return eval_asr_derivative(expr.spec(), t);
    case RotationExpr::Kind::Product: {
      // Leibniz rule: sum over each factor differentiated in place.
      const auto& ch = expr.children();
      std::vector<Mat3> vals(ch.size());
      for (std::size_t i = 0; i < ch.size(); ++i) vals[i] = eval_expr(ch[i], t);
      Mat3 total = Mat3::zero();
      for (std::size_t k = 0; k < ch.size(); ++k) {
        Mat3 term = k == 0 ? eval_expr_derivative(ch[0], t) : vals[0];
        for (std::size_t i = 1; i < ch.size(); ++i) {
          term = term * (i == k ? eval_expr_derivative(ch[i], t) : vals[i]);
        }
        total = total + term;
      }
      return total;
    }
    case RotationExpr::Kind::Sum: {
      const auto order = canonical_sum_order(expr);
      Mat3 a = eval_expr_derivative(*order.front(), t);
      for (std::size_t i = 1; i < order.size(); ++i) a = a + eval_expr_derivative(*order[i], t);
      return a;
    }
  }
  throw InvalidExpressionError("unreachable expression kind");
}

Vec3 transform_point(const RotationExpr& expr, const Vec3& x, double t) {
  return x * eval_expr(expr, t);
}

// ---------------------------------------------------------------------------
// RNG

std::uint64_t Rng::splitmix() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() { return splitmix(); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next_u64() % span);
}

Vec3 Rng::unit_vector() {
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  Vec3 v{r * std::cos(phi), r * std::sin(phi), z};
  const double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

namespace {

Axis random_axis(Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0: return Axis::x();
    case 1: return Axis::y();
    case 2: return Axis::z();
    default: return Axis::direction(rng.unit_vector());
  }
}

RotationExpr random_leaf(Rng& rng, double lo, double hi) {
  const double omega = rng.uniform(lo, hi);
  const int sense = rng.uniform_int(0, 1) == 0 ? +1 : -1;
  return RotationExpr::leaf(random_axis(rng), sense * omega);
}

}  // namespace

RotationExpr random_product(Rng& rng, int min_leaves, int max_leaves, double omega_lo,
                            double omega_hi) {
  const int n = rng.uniform_int(min_leaves, max_leaves);
  std::vector<RotationExpr> leaves;
  leaves.reserve(n);
  for (int i = 0; i < n; ++i) leaves.push_back(random_leaf(rng, omega_lo, omega_hi));
  return n == 1 ? leaves.front() : RotationExpr::product(std::move(leaves));
}

RotationExpr random_sum(Rng& rng, int min_leaves, int max_leaves, double omega_lo,
                        double omega_hi) {
  const int n = rng.uniform_int(min_leaves, max_leaves);
  std::vector<RotationExpr> leaves;
  leaves.reserve(n);
  for (int i = 0; i < n; ++i) leaves.push_back(random_leaf(rng, omega_lo, omega_hi));
  return n == 1 ? leaves.front() : RotationExpr::sum(std::move(leaves));
}

// ---------------------------------------------------------------------------
// Property checks

bool PropertyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

double orthogonality_defect(const Mat3& a) {
  return max_abs(a * transpose(a) - Mat3::identity());
}

bool bit_identical(const Mat3& a, const Mat3& b) {
  return std::memcmp(a.m.data(), b.m.data(), sizeof(a.m)) == 0;
}

PropertyCheck check_orthogonality(const RotationExpr& expr, int trials, Rng& rng, double tol) {
  PropertyCheck c{"orthogonality", trials, 0.0, tol, false, "max |A*A^T - I|"};
  for (int i = 0; i < trials; ++i) {
    const Mat3 a = eval_expr(expr, rng.uniform(-20.0, 20.0));
    c.worst = std::max(c.worst, orthogonality_defect(a));
  }
  c.pass = c.worst <= tol;
  return c;
}

PropertyCheck check_determinant(const RotationExpr& expr, int trials, Rng& rng, double tol) {
  PropertyCheck c{"unit_determinant", trials, 0.0, tol, false, "max |det A - 1|"};
  for (int i = 0; i < trials; ++i) {
    const Mat3 a = eval_expr(expr, rng.uniform(-20.0, 20.0));
    c.worst = std::max(c.worst, std::abs(det(a) - 1.0));
  }
  c.pass = c.worst <= tol;
  return c;
}

PropertyCheck check_sum_determinant(const RotationExpr& expr, double tol) {
  // Sum matrices are generically non-normalized; record |det - 1| at t = 1/w.
  const double w0 = expr.children().front().kind() == RotationExpr::Kind::Leaf
                        ? std::max(expr.children().front().spec().omega, 1.0)
                        : 1.0;
  PropertyCheck c{"sum_determinant_not_one", 1, 0.0, tol, false, "|det A - 1| at t = 1/omega"};
  c.worst = std::abs(det(eval_expr(expr, 1.0 / w0)) - 1.0);
  c.pass = c.worst > 1e-6;  // expected to differ from 1
  return c;
}

PropertyCheck check_product_order(const RotationExpr& expr, int trials, Rng& rng) {
  PropertyCheck c{"product_order_sensitivity", trials, 0.0, 1e-3, false,
                  "max |A(original) - A(swapped)| over sampled t"};
  auto swapped_children = expr.children();
  std::swap(swapped_children.front(), swapped_children.back());
  const RotationExpr swapped = RotationExpr::product(std::move(swapped_children));
  for (int i = 0; i < trials; ++i) {
    const double t = rng.uniform(0.0, 10.0);
    c.worst = std::max(c.worst, max_abs(eval_expr(expr, t) - eval_expr(swapped, t)));
  }
  c.pass = c.worst >= c.tol;  // non-commutativity must be exhibited
  return c;
}

PropertyCheck check_sum_commutativity(const RotationExpr& expr, int trials, Rng& rng) {
  PropertyCheck c{"sum_commutativity_bitwise", trials, 0.0, 0.0, true,
                  "permuted sum evaluates bit-identically"};
  auto rotated = expr.children();
  std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
  const RotationExpr permuted = RotationExpr::sum(std::move(rotated));
  for (int i = 0; i < trials; ++i) {
    const double t = rng.uniform(-10.0, 10.0);
    if (!bit_identical(eval_expr(expr, t), eval_expr(permuted, t))) {
      c.pass = false;
      c.worst = 1.0;
    }
  }
  return c;
}

PropertyCheck check_derivative_fd(const RotationExpr& expr, int trials, Rng& rng) {
  PropertyCheck c{"derivative_fd_agreement", trials, 0.0, 1e-8, false,
                  "max relative |dA/dt - central difference| (h = 1e-6)"};
  const double h = 1e-6;
  for (int i = 0; i < trials; ++i) {
    const double t = rng.uniform(-5.0, 5.0);
    const Mat3 analytic = eval_expr_derivative(expr, t);
    const Mat3 fd = (1.0 / (2.0 * h)) * (eval_expr(expr, t + h) - eval_expr(expr, t - h));
    const double scale = std::max(max_abs(analytic), 1.0);
    c.worst = std::max(c.worst, max_abs(analytic - fd) / scale);
  }
  c.pass = c.worst <= c.tol;
  return c;
}

}  // namespace

PropertyReport property_report(const RotationExpr& expr, int trials, std::uint64_t seed,
                               double tol) {
  Rng rng(seed);
  PropertyReport report;
  report.seed = seed;
  report.tol = tol;
  if (!expr.contains_sum()) {
    report.checks.push_back(check_orthogonality(expr, trials, rng, tol));
    report.checks.push_back(check_determinant(expr, trials, rng, tol));
  }
  if (expr.kind() == RotationExpr::Kind::Product && expr.children().size() >= 2) {
    report.checks.push_back(check_product_order(expr, trials, rng));
  }
  if (expr.kind() == RotationExpr::Kind::Sum) {
    report.checks.push_back(check_sum_commutativity(expr, trials, rng));
    report.checks.push_back(check_sum_determinant(expr, tol));
  }
  report.checks.push_back(check_derivative_fd(expr, trials, rng));
  return report;
}

PropertyReport run_property_suite(int trials, std::uint64_t seed, double tol) {
  Rng rng(seed);
  PropertyReport report;
  report.seed = seed;
  report.tol = tol;

  // Random products: orthogonality and normalization at random times.
  {
    PropertyCheck ortho{"msr_orthogonality", trials, 0.0, tol, false,
                        "random products, 1-4 leaves, omega in [0.1, 10]"};
    PropertyCheck detc{"msr_unit_determinant", trials, 0.0, tol, false, ""};
    for (int i = 0; i < trials; ++i) {
      const RotationExpr expr = random_product(rng, 1, 4, 0.1, 10.0);
      for (int j = 0; j < 100; ++j) {
        const Mat3 a = eval_expr(expr, rng.uniform(-10.0, 10.0));
        ortho.worst = std::max(ortho.worst, orthogonality_defect(a));
        detc.worst = std::max(detc.worst, std::abs(det(a) - 1.0));
      }
    }
    ortho.pass = ortho.worst <= tol;
    detc.pass = detc.worst <= tol;
    report.checks.push_back(ortho);
    report.checks.push_back(detc);
  }

  // Parallel composition: A_z(w1) * A_z(w2) = A_z(w1 + w2).
  {
    PropertyCheck c{"parallel_composition", trials, 0.0, tol, false,
                    "|A_z(w1,t)A_z(w2,t) - A_z(w1+w2,t)|"};
    for (int i = 0; i < trials; ++i) {
      const double w1 = rng.uniform(0.1, 10.0);
      const double w2 = rng.uniform(0.1, 10.0);
      const double t = rng.uniform(-5.0, 5.0);
      const Mat3 lhs = eval_asr(make_asr(Axis::z(), w1), t) * eval_asr(make_asr(Axis::z(), w2), t);
      const Mat3 rhs = eval_asr(make_asr(Axis::z(), w1 + w2), t);
      c.worst = std::max(c.worst, max_abs(lhs - rhs));
    }
    c.pass = c.worst <= tol;
    report.checks.push_back(c);
  }

  // Order sensitivity exhibit: orthogonal-axis product at omega*t = pi/2.
  {
    PropertyCheck c{"product_order_sensitivity", 1, 0.0, 1e-3, false,
                    "|z*x - x*z| at omega*t = pi/2"};
    const double w = 1.0;
    const double t = M_PI / (2.0 * w);
    const RotationExpr zx = RotationExpr::product(
        {RotationExpr::leaf(Axis::z(), w), RotationExpr::leaf(Axis::x(), w)});
    const RotationExpr xz = RotationExpr::product(
        {RotationExpr::leaf(Axis::x(), w), RotationExpr::leaf(Axis::z(), w)});
    c.worst = max_abs(eval_expr(zx, t) - eval_expr(xz, t));
    c.pass = c.worst >= c.tol;
    report.checks.push_back(c);
  }

  // Random sums: permutation invariance (bitwise) and non-unit determinant.
  {
    PropertyCheck c{"sum_commutativity_bitwise", trials, 0.0, 0.0, true, ""};
    PropertyCheck d{"ssr_determinant_not_one", trials, 1e300, 1e-6, false,
                    "min |det A - 1| at t = 1/omega_min"};
    for (int i = 0; i < trials; ++i) {
      const RotationExpr expr = random_sum(rng, 2, 4, 0.1, 10.0);
      auto rotated = expr.children();
      std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
      const RotationExpr permuted = RotationExpr::sum(std::move(rotated));
      const double t = rng.uniform(-10.0, 10.0);
      if (!bit_identical(eval_expr(expr, t), eval_expr(permuted, t))) {
        c.pass = false;
        c.worst = 1.0;
      }
      double wmin = 1e300;
      for (double w : expr.leaf_frequencies()) wmin = std::min(wmin, w);
      d.worst = std::min(d.worst, std::abs(det(eval_expr(expr, 1.0 / wmin)) - 1.0));
    }
    d.pass = d.worst > d.tol;
    report.checks.push_back(c);
    report.checks.push_back(d);
  }

  // Derivative vs central differences on random mixed expressions.
  {
    PropertyCheck c{"derivative_fd_agreement", trials, 0.0, 1e-8, false, "h = 1e-6"};
    const double h = 1e-6;
    for (int i = 0; i < trials; ++i) {
      const RotationExpr expr = rng.uniform_int(0, 1) == 0 ? random_product(rng, 1, 3, 0.1, 5.0)
                                                           : random_sum(rng, 2, 3, 0.1, 5.0);
      const double t = rng.uniform(-5.0, 5.0);
      const Mat3 analytic = eval_expr_derivative(expr, t);
      const Mat3 fd = (1.0 / (2.0 * h)) * (eval_expr(expr, t + h) - eval_expr(expr, t - h));
      const double scale = std::max(max_abs(analytic), 1.0);
      c.worst = std::max(c.worst, max_abs(analytic - fd) / scale);
    }
    c.pass = c.worst <= c.tol;
    report.checks.push_back(c);
  }

  return report;
}

}  // namespace rotframe
