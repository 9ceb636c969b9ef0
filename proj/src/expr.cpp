#include "ivroot/expr.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>

namespace ivroot {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Kind;

NodePtr make_node(Expr::Node node) {
  return std::make_shared<const Expr::Node>(std::move(node));
}

}  // namespace

Expr Expr::constant(double v) {
  return Expr(make_node({Kind::constant, v, 0, nullptr, nullptr}));
}

Expr Expr::variable() {
  return Expr(make_node({Kind::variable, 0.0, 0, nullptr, nullptr}));
}

Expr Expr::add(Expr lhs, Expr rhs) {
  return Expr(make_node({Kind::add, 0.0, 0, lhs.root_, rhs.root_}));
}

Expr Expr::sub(Expr lhs, Expr rhs) {
  return Expr(make_node({Kind::sub, 0.0, 0, lhs.root_, rhs.root_}));
}

Expr Expr::mul(Expr lhs, Expr rhs) {
  return Expr(make_node({Kind::mul, 0.0, 0, lhs.root_, rhs.root_}));
}

Expr Expr::div(Expr lhs, Expr rhs) {
  return Expr(make_node({Kind::div, 0.0, 0, lhs.root_, rhs.root_}));
}

Expr Expr::neg(Expr operand) {
  return Expr(make_node({Kind::neg, 0.0, 0, operand.root_, nullptr}));
}

Expr Expr::pow(Expr base, int exponent) {
  assert(exponent >= 0);
  return Expr(make_node({Kind::pow, 0.0, exponent, base.root_, nullptr}));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(pos_, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = Expr::add(std::move(lhs), term());
      else if (eat('-'))
        lhs = Expr::sub(std::move(lhs), term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (eat('*'))
        lhs = Expr::mul(std::move(lhs), factor());
      else if (eat('/'))
        lhs = Expr::div(std::move(lhs), factor());
      else
        return lhs;
    }
  }

  Expr factor() {
    if (eat('-')) return Expr::neg(factor());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!eat('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected nonnegative integer exponent");
    int exponent = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
    if (res.ec != std::errc() || exponent < 0) {
      pos_ = start;
      fail("exponent out of range");
    }
    return Expr::pow(std::move(base), exponent);
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      return Expr::variable();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    bool any_digit = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      any_digit = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        any_digit = true;
      }
    }
    if (!any_digit) {
      pos_ = start;
      fail("expected number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t exp_pos = pos_ + 1;
      if (exp_pos < text_.size() && (text_[exp_pos] == '+' || text_[exp_pos] == '-')) ++exp_pos;
      std::size_t digits = exp_pos;
      while (digits < text_.size() && std::isdigit(static_cast<unsigned char>(text_[digits]))) ++digits;
      if (digits > exp_pos) pos_ = digits;
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printing and structural comparison

namespace {

std::string format_shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void print_node(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::constant:
      out += format_shortest(n.value);
      return;
    case Kind::variable:
      out += 'x';
      return;
    case Kind::neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Kind::pow:
      out += '(';
      print_node(*n.lhs, out);
      out += '^';
      out += std::to_string(n.exponent);
      out += ')';
      return;
    default:
      break;
  }
  const char op = n.kind == Kind::add ? '+' : n.kind == Kind::sub ? '-'
                  : n.kind == Kind::mul ? '*' : '/';
  out += '(';
  print_node(*n.lhs, out);
  out += op;
  print_node(*n.rhs, out);
  out += ')';
}

}  // namespace

std::string to_string(const Expr& f) {
  std::string out;
  print_node(f.root(), out);
  return out;
}

namespace {

bool nodes_equal(const Expr::Node* a, const Expr::Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::constant:
      return a->value == b->value ||
             (std::isnan(a->value) && std::isnan(b->value));
    case Kind::variable:
      return true;
    case Kind::pow:
      return a->exponent == b->exponent && nodes_equal(a->lhs.get(), b->lhs.get());
    default:
      return nodes_equal(a->lhs.get(), b->lhs.get()) &&
             nodes_equal(a->rhs.get(), b->rhs.get());
  }
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  return nodes_equal(&a.root(), &b.root());
}

// ---------------------------------------------------------------------------
// Evaluation

EvalCounters& eval_counters() {
  thread_local EvalCounters counters;
  return counters;
}

namespace {

Interval eval_node(const Expr::Node& n, const Interval& x) {
  switch (n.kind) {
    case Kind::constant:
      return Interval::point(n.value);
    case Kind::variable:
      return x;
    case Kind::add:
      return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Kind::sub:
      return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Kind::mul:
      return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Kind::div:
      return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
    case Kind::neg:
      return -eval_node(*n.lhs, x);
    case Kind::pow:
      return pow_int(eval_node(*n.lhs, x), n.exponent);
  }
  return Interval::whole();
}

}  // namespace

Interval eval_interval(const Expr& f, const Interval& x) {
  auto& counters = eval_counters();
  if (x.is_point())
    ++counters.interval_degenerate;
  else
    ++counters.interval_nondegenerate;
  return eval_node(f.root(), x);
}

Interval eval_point(const Expr& f, double t) {
  ++eval_counters().point_evals;
  return eval_node(f.root(), Interval::point(t));
}

namespace {

double eval_double_node(const Expr::Node& n, double t) {
  switch (n.kind) {
    case Kind::constant:
      return n.value;
    case Kind::variable:
      return t;
    case Kind::add:
      return eval_double_node(*n.lhs, t) + eval_double_node(*n.rhs, t);
    case Kind::sub:
      return eval_double_node(*n.lhs, t) - eval_double_node(*n.rhs, t);
    case Kind::mul:
      return eval_double_node(*n.lhs, t) * eval_double_node(*n.rhs, t);
    case Kind::div:
      return eval_double_node(*n.lhs, t) / eval_double_node(*n.rhs, t);
    case Kind::neg:
      return -eval_double_node(*n.lhs, t);
    case Kind::pow: {
      double base = eval_double_node(*n.lhs, t);
      double r = 1.0;
      for (int i = 0; i < n.exponent; ++i) r *= base;
      return r;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double eval_double(const Expr& f, double t) {
  ++eval_counters().double_evals;
  return eval_double_node(f.root(), t);
}

// ---------------------------------------------------------------------------
// Symbolic derivative (with constant folding so that d/dx x^2 comes out
// as 2*x rather than 2*x^1*1).

namespace {

bool is_const(const Expr& e, double v) {
  return e.root().kind == Kind::constant && e.root().value == v;
}

Expr from_node(const NodePtr& p);

Expr d_add(Expr a, Expr b) {
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return Expr::add(std::move(a), std::move(b));
}

Expr d_sub(Expr a, Expr b) {
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return Expr::neg(std::move(b));
  return Expr::sub(std::move(a), std::move(b));
}

Expr d_mul(Expr a, Expr b) {
  if (is_const(a, 0) || is_const(b, 0)) return Expr::constant(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  return Expr::mul(std::move(a), std::move(b));
}

Expr d_pow(Expr base, int n) {
  if (n == 0) return Expr::constant(1);
  if (n == 1) return base;
  return Expr::pow(std::move(base), n);
}

Expr derive_node(const NodePtr& n);

Expr from_node(const NodePtr& p) { return Expr::from_root(p); }

Expr derive_node(const NodePtr& n) {
  switch (n->kind) {
    case Kind::constant:
      return Expr::constant(0);
    case Kind::variable:
      return Expr::constant(1);
    case Kind::add:
      return d_add(derive_node(n->lhs), derive_node(n->rhs));
    case Kind::sub:
      return d_sub(derive_node(n->lhs), derive_node(n->rhs));
    case Kind::mul:
      return d_add(d_mul(derive_node(n->lhs), from_node(n->rhs)),
                   d_mul(from_node(n->lhs), derive_node(n->rhs)));
    case Kind::div:
      return Expr::div(
          d_sub(d_mul(derive_node(n->lhs), from_node(n->rhs)),
                d_mul(from_node(n->lhs), derive_node(n->rhs))),
          d_pow(from_node(n->rhs), 2));
    case Kind::neg:
      return Expr::neg(derive_node(n->lhs));
    case Kind::pow: {
      if (n->exponent == 0) return Expr::constant(0);
      Expr inner = derive_node(n->lhs);
      Expr outer = d_mul(Expr::constant(n->exponent), d_pow(from_node(n->lhs), n->exponent - 1));
      return d_mul(std::move(outer), std::move(inner));
    }
  }
  return Expr::constant(0);
}

}  // namespace

Expr derivative(const Expr& f) { return derive_node(f.root_ptr()); }

// ---------------------------------------------------------------------------
// Slope extension. Recursive slope arithmetic:
//   s(u+v) = s(u) + s(v)
//   s(u*v) = range(u) * s(v) + s(u) * val(v)
//   s(u/v) = (s(u) - val(u/v) * s(v)) / range(v)
//   powers by repeated product.

namespace {

struct SlopeTriple {
  Interval range;  // enclosure of the subexpression over x
  Interval val;    // enclosure of the subexpression at [c, c]
  Interval slope;  // enclosure of its slope at c over x
};

SlopeTriple slope_node(const Expr::Node& n, const Interval& c, const Interval& x) {
  switch (n.kind) {
    case Kind::constant: {
      const Interval v = Interval::point(n.value);
      return {v, v, Interval::point(0.0)};
    }
    case Kind::variable:
      return {x, c, Interval::point(1.0)};
    case Kind::add: {
      const SlopeTriple a = slope_node(*n.lhs, c, x);
      const SlopeTriple b = slope_node(*n.rhs, c, x);
      return {a.range + b.range, a.val + b.val, a.slope + b.slope};
    }
    case Kind::sub: {
      const SlopeTriple a = slope_node(*n.lhs, c, x);
      const SlopeTriple b = slope_node(*n.rhs, c, x);
      return {a.range - b.range, a.val - b.val, a.slope - b.slope};
    }
    case Kind::mul: {
      const SlopeTriple a = slope_node(*n.lhs, c, x);
      const SlopeTriple b = slope_node(*n.rhs, c, x);
      return {a.range * b.range, a.val * b.val,
              a.range * b.slope + a.slope * b.val};
    }
    case Kind::div: {
      const SlopeTriple a = slope_node(*n.lhs, c, x);
      const SlopeTriple b = slope_node(*n.rhs, c, x);
      const Interval result = a.val / b.val;
      return {a.range / b.range, result,
              (a.slope - result * b.slope) / b.range};
    }
    case Kind::neg: {
      const SlopeTriple a = slope_node(*n.lhs, c, x);
      return {-a.range, -a.val, -a.slope};
    }
    case Kind::pow: {
      if (n.exponent == 0) {
        const Interval one = Interval::point(1.0);
        return {one, one, Interval::point(0.0)};
      }
      const SlopeTriple u = slope_node(*n.lhs, c, x);
      SlopeTriple acc = u;
      for (int i = 2; i <= n.exponent; ++i) {
        // acc = u^(i-1) * u with the product slope rule.
        acc.slope = pow_int(u.range, i - 1) * u.slope + acc.slope * u.val;
        acc.val = pow_int(u.val, i);
        acc.range = pow_int(u.range, i);
      }
      return acc;
    }
  }
  return {Interval::whole(), Interval::whole(), Interval::whole()};
}

}  // namespace

SlopePair eval_slope(const Expr& f, double c, const Interval& x) {
  assert(x.contains(c));
  auto& counters = eval_counters();
  if (x.is_point())
    ++counters.interval_degenerate;
  else
    ++counters.interval_nondegenerate;
  const SlopeTriple t = slope_node(f.root(), Interval::point(c), x);
  return {t.val, t.slope};
}

Interval centered_form(const Expr& f, double c, const Interval& x) {
  assert(x.contains(c));
  const SlopePair sp = eval_slope(f, c, x);
  const Interval natural = eval_interval(f, x);
  const Interval centered = sp.value_at_center + sp.slope * (x - Interval::point(c));
  const Interval result = intersect(natural, centered);
  // Both operands enclose the true range, so the intersection cannot be
  // empty for well-formed inputs.
  assert(!result.is_empty() || natural.is_empty());
  return result.is_empty() ? natural : result;
}

}  // namespace ivroot
