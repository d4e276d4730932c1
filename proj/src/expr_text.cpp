#include "rotframe/expr_text.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace rotframe {

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  RotationExpr run() {
    skip_ws();
    if (pos_ >= src_.size()) {
      throw ExprParseError("empty expression", 0, "axis or '('");
    }
    RotationExpr e = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) {
      throw ExprParseError("unexpected trailing input", pos_, "'+', '*' or end of input");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c, const char* expected) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != c) {
      throw ExprParseError(std::string("syntax error"), pos_, expected);
    }
    ++pos_;
  }

  double parse_real() {
    skip_ws();
    const char* start = src_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) {
      throw ExprParseError("syntax error", pos_, "a real number");
    }
    pos_ += static_cast<std::size_t>(end - start);
    if (!std::isfinite(v)) {
      throw ExprParseError("non-finite number", pos_, "a finite real number");
    }
    return v;
  }

  RotationExpr parse_sum() {
    std::vector<RotationExpr> terms;
    terms.push_back(parse_term());
    while (peek_is('+')) {
      ++pos_;
      terms.push_back(parse_term());
    }
    return terms.size() == 1 ? std::move(terms.front()) : RotationExpr::sum(std::move(terms));
  }

  RotationExpr parse_term() {
    std::vector<RotationExpr> factors;
    factors.push_back(parse_factor());
    while (peek_is('*')) {
      ++pos_;
      factors.push_back(parse_factor());
    }
    return factors.size() == 1 ? std::move(factors.front())
                               : RotationExpr::product(std::move(factors));
  }

  RotationExpr parse_factor() {
    skip_ws();
    if (pos_ >= src_.size()) {
      throw ExprParseError("syntax error", pos_, "axis ('x','y','z','u') or '('");
    }
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      RotationExpr inner = parse_sum();
      expect(')', "')'");
      return inner;
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      const Axis axis = c == 'x' ? Axis::x() : (c == 'y' ? Axis::y() : Axis::z());
      return parse_leaf_tail(axis);
    }
    if (c == 'u') {
      const std::size_t axis_pos = pos_;
      ++pos_;
      expect('(', "'('");
      const double dx = parse_real();
      expect(',', "','");
      const double dy = parse_real();
      expect(',', "','");
      const double dz = parse_real();
      expect(')', "')'");
      try {
        return parse_leaf_tail(Axis::direction({dx, dy, dz}));
      } catch (const InvalidAxisError& e) {
        throw ExprParseError(e.what(), axis_pos, "a unit direction");
      }
    }
    throw ExprParseError("syntax error", pos_, "axis ('x','y','z','u') or '('");
  }

  RotationExpr parse_leaf_tail(const Axis& axis) {
    expect('(', "'('");
    const double signed_omega = parse_real();
    expect(')', "')'");
    return RotationExpr::leaf(axis, signed_omega);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

void append_text(const RotationExpr& e, std::string& out) {
  switch (e.kind()) {
    case RotationExpr::Kind::Leaf: {
      const AsrSpec& s = e.spec();
      switch (s.axis.tag()) {
        case Axis::Tag::X: out += 'x'; break;
        case Axis::Tag::Y: out += 'y'; break;
        case Axis::Tag::Z: out += 'z'; break;
        case Axis::Tag::Dir: {
          const Vec3& d = s.axis.unit();
          out += "u(";
          out += format_real(d.x);
          out += ',';
          out += format_real(d.y);
          out += ',';
          out += format_real(d.z);
          out += ')';
          break;
        }
      }
      out += '(';
      out += format_real(s.sense * s.omega);
      out += ')';
      return;
    }
    case RotationExpr::Kind::Product: {
      bool first = true;
      for (const auto& c : e.children()) {
        if (!first) out += '*';
        first = false;
        // Parenthesize non-leaf children so the tree shape survives re-parsing.
        if (c.kind() == RotationExpr::Kind::Leaf) {
          append_text(c, out);
        } else {
          out += '(';
          append_text(c, out);
          out += ')';
        }
      }
      return;
    }
    case RotationExpr::Kind::Sum: {
      bool first = true;
      for (const auto& c : e.children()) {
        if (!first) out += '+';
        first = false;
        if (c.kind() == RotationExpr::Kind::Sum) {
          out += '(';
          append_text(c, out);
          out += ')';
        } else {
          append_text(c, out);
        }
      }
      return;
    }
  }
}

}  // namespace

RotationExpr parse_expr(const std::string& src) { return Parser(src).run(); }

std::string to_text(const RotationExpr& expr) {
  std::string out;
  append_text(expr, out);
  return out;
}

}  // namespace rotframe
