#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ivroot/interval.hpp"

namespace ivroot {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Immutable expression tree over one real variable. Grammar: decimal
// literals, `x`, binary + - * /, unary minus, `^` with a nonnegative
// integer literal exponent, parentheses.
class Expr {
 public:
  enum class Kind : std::uint8_t { constant, variable, add, sub, mul, div, neg, pow };

  struct Node {
    Kind kind;
    double value = 0.0;  // constant
    int exponent = 0;    // pow
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  static Expr constant(double v);
  static Expr variable();
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr div(Expr lhs, Expr rhs);
  static Expr neg(Expr operand);
  static Expr pow(Expr base, int exponent);  // exponent >= 0

  // Adopt an existing (immutable) subtree without copying.
  static Expr from_root(std::shared_ptr<const Node> root) { return Expr(std::move(root)); }

  const Node& root() const { return *root_; }
  std::shared_ptr<const Node> root_ptr() const { return root_; }

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

Expr parse(std::string_view text);
std::string to_string(const Expr& f);
bool structurally_equal(const Expr& a, const Expr& b);

// Natural interval extension: for every t in x, f(t) lies in the result.
// A division whose denominator enclosure contains zero evaluates to the
// whole line.
Interval eval_interval(const Expr& f, const Interval& x);

// Natural extension at the degenerate interval [t, t].
Interval eval_point(const Expr& f, double t);

// Plain floating-point evaluation; fast estimate with no guarantee.
double eval_double(const Expr& f, double t);

// Symbolic derivative tree.
Expr derivative(const Expr& f);

struct SlopePair {
  Interval value_at_center;  // encloses f(c)
  Interval slope;            // encloses (f(t)-f(c))/(t-c) for all t in x
};

// Slope extension at center c over x (c must lie in x).
SlopePair eval_slope(const Expr& f, double c, const Interval& x);

// f(c) + slope * (x - c), intersected with the natural extension; never
// wider than the natural extension alone.
Interval centered_form(const Expr& f, double c, const Interval& x);

// Per-thread evaluation counters, used by tests and by the solver's
// monotone-handoff economy checks.
struct EvalCounters {
  std::uint64_t interval_nondegenerate = 0;
  std::uint64_t interval_degenerate = 0;
  std::uint64_t point_evals = 0;
  std::uint64_t double_evals = 0;
  void reset() { *this = EvalCounters{}; }
};

EvalCounters& eval_counters();

}  // namespace ivroot
