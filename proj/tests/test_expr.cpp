#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ivroot/expr.hpp"
#include "oracle.hpp"

using ivroot::Expr;
using ivroot::Interval;
using ivroot::SyntaxError;

namespace {

Expr x() { return Expr::variable(); }
Expr c(double v) { return Expr::constant(v); }

// Random polynomial/rational tree for fuzzing.
Expr random_expr(std::mt19937_64& gen, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  std::uniform_int_distribution<int> consts(-6, 6);
  std::uniform_int_distribution<int> exps(0, 4);
  switch (pick(gen)) {
    case 0:
      return c(consts(gen) / 2.0);
    case 1:
      return x();
    case 2:
      return Expr::add(random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 3:
      return Expr::sub(random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 4:
      return Expr::mul(random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 5:
      return Expr::neg(random_expr(gen, depth - 1));
    case 6:
      return Expr::pow(random_expr(gen, depth - 1), exps(gen));
    default:
      return Expr::div(random_expr(gen, depth - 1), random_expr(gen, depth - 1));
  }
}

}  // namespace

TEST_CASE("parser accepts the stress polynomial") {
  const Expr f = ivroot::parse("(x-1)*(x-2)*(x-3)*(x-4)*(x-5)");
  // Five-factor product tree: four mul nodes chained on the left spine.
  int muls = 0;
  const Expr::Node* n = &f.root();
  while (n->kind == Expr::Kind::mul) {
    ++muls;
    n = n->lhs.get();
  }
  CHECK(muls == 4);
  CHECK(n->kind == Expr::Kind::sub);
  CHECK(ivroot::eval_double(f, 3.0) == 0.0);
  CHECK(ivroot::eval_double(f, 0.0) == -120.0);
}

TEST_CASE("parser basics and errors") {
  CHECK(ivroot::structurally_equal(ivroot::parse("x"), x()));
  CHECK(ivroot::structurally_equal(ivroot::parse(" ( x ) "), x()));
  CHECK(ivroot::structurally_equal(ivroot::parse("-x"), Expr::neg(x())));
  CHECK(ivroot::structurally_equal(ivroot::parse("x^3"), Expr::pow(x(), 3)));
  CHECK(ivroot::structurally_equal(ivroot::parse("2*x+1"),
                                   Expr::add(Expr::mul(c(2), x()), c(1))));
  CHECK(ivroot::eval_double(ivroot::parse("1.5e2"), 0.0) == 150.0);
  CHECK(ivroot::eval_double(ivroot::parse(".5"), 0.0) == 0.5);

  // Precedence: -x^2 is -(x^2), 1+2*x binds * first.
  CHECK(ivroot::structurally_equal(ivroot::parse("-x^2"), Expr::neg(Expr::pow(x(), 2))));
  CHECK(ivroot::structurally_equal(ivroot::parse("1+2*x"),
                                   Expr::add(c(1), Expr::mul(c(2), x()))));

  CHECK_THROWS_AS(ivroot::parse(""), SyntaxError);
  CHECK_THROWS_AS(ivroot::parse("x+"), SyntaxError);
  CHECK_THROWS_AS(ivroot::parse("(x"), SyntaxError);
  CHECK_THROWS_AS(ivroot::parse("x)"), SyntaxError);
  CHECK_THROWS_AS(ivroot::parse("y"), SyntaxError);
  CHECK_THROWS_AS(ivroot::parse("x^-2"), SyntaxError);

  try {
    ivroot::parse("x^");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("to_string round-trips parsed trees") {
  const char* cases[] = {
      "x",
      "(x-1)*(x-2)*(x-3)*(x-4)*(x-5)",
      "-x^2+3*x-1",
      "x/(x+1)",
      "1.25*x^4",
      "-(x-0.5)^3",
  };
  for (const char* text : cases) {
    const Expr f = ivroot::parse(text);
    const Expr g = ivroot::parse(ivroot::to_string(f));
    CHECK(ivroot::structurally_equal(f, g));
  }
}

TEST_CASE("natural extension examples") {
  const Expr f = ivroot::parse("x^2-2");
  const Interval r = eval_interval(f, Interval::make(1, 2));
  CHECK(r.contains(Interval::make(-1, 2)));
  CHECK(oracle::within_one_ulp_below(oracle::Rational(-1), r.lo()));
  CHECK(oracle::within_one_ulp_above(oracle::Rational(2), r.hi()));

  // Identity is exact.
  CHECK(eval_interval(ivroot::parse("x"), Interval::make(-3, 5)) == Interval::make(-3, 5));

  // (x-1)(x-2) on [0,3] must cover the true range [-0.25, 2].
  const Interval q = eval_interval(ivroot::parse("(x-1)*(x-2)"), Interval::make(0, 3));
  CHECK(q.contains(Interval::make(-0.25, 2)));

  // Division with a zero-containing denominator yields the whole line.
  CHECK(eval_interval(ivroot::parse("1/x"), Interval::make(-1, 1)) == Interval::whole());
}

TEST_CASE("point evaluation is narrow") {
  const Expr f = ivroot::parse("x^2-2");
  const Interval r = eval_point(f, 1.0);
  CHECK(r.contains(-1.0));
  CHECK(r.width() == 0.0);  // exact in binary64

  CHECK(eval_point(ivroot::parse("x"), 0.75) == Interval::point(0.75));

  const Expr bughw = ivroot::parse("(x-1)*(x-2)*(x-3)*(x-4)*(x-5)");
  const Interval z = eval_point(bughw, 3.0);
  CHECK(z.contains(0.0));
  CHECK(z.width() == 0.0);  // integer arguments keep every factor exact
}

TEST_CASE("symbolic derivative") {
  // d/dx x^2 == 2*x structurally.
  const Expr d = derivative(ivroot::parse("x^2"));
  CHECK(ivroot::structurally_equal(d, Expr::mul(c(2), x())));

  // Derivative of the stress polynomial at 1 is (1-2)(1-3)(1-4)(1-5) = 24.
  const Expr bughw = ivroot::parse("(x-1)*(x-2)*(x-3)*(x-4)*(x-5)");
  const Interval dv = eval_point(derivative(bughw), 1.0);
  CHECK(dv.contains(24.0));
  CHECK(dv.width() <= 1e-9);

  // Finite differences stay inside a slightly widened enclosure.
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> pts(-2.0, 2.0);
  const double h = std::ldexp(1.0, -20);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const Expr f = random_expr(gen, 3);
    const Expr fp = derivative(f);
    const double t = pts(gen);
    const double f0 = eval_double(f, t);
    const double f1 = eval_double(f, t + h);
    if (!std::isfinite(f0) || !std::isfinite(f1)) continue;
    const double fd = (f1 - f0) / h;
    const Interval enc = eval_interval(fp, Interval::make(t, t + h));
    if (enc == Interval::whole() || !enc.is_bounded()) continue;
    const double slack = 1e-4 * (1.0 + std::fabs(fd)) + 1e-4 * enc.width();
    CHECK(ivroot::Interval::make(enc.lo() - slack, enc.hi() + slack).contains(fd));
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("slope extension") {
  // f = x^2 at c = 0 over [-1,1]: slope enclosure is [-1,1], derivative
  // enclosure is twice as wide.
  const Expr f = ivroot::parse("x^2");
  const auto sp = eval_slope(f, 0.0, Interval::make(-1, 1));
  CHECK(sp.slope == Interval::make(-1, 1));
  const Interval denc = eval_interval(derivative(f), Interval::make(-1, 1));
  CHECK(denc == Interval::make(-2, 2));

  // Linear: slope is the coefficient regardless of c and x.
  const auto lin = eval_slope(ivroot::parse("3*x+1"), 0.25, Interval::make(-2, 5));
  CHECK(lin.slope.contains(3.0));
  CHECK(lin.slope.width() <= 1e-12);

  // Sampled difference quotients lie in the slope enclosure.
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> pts(-2.0, 2.0);
  for (int i = 0; i < 20000; ++i) {
    std::uniform_int_distribution<int> coef(-4, 4);
    const Expr cubic = Expr::add(
        Expr::mul(c(coef(gen)), Expr::pow(x(), 3)),
        Expr::add(Expr::mul(c(coef(gen)), Expr::pow(x(), 2)),
                  Expr::add(Expr::mul(c(coef(gen)), x()), c(coef(gen)))));
    double a = pts(gen), b = pts(gen);
    if (a > b) std::swap(a, b);
    const Interval xs = Interval::make(a, b);
    std::uniform_real_distribution<double> inside(a, b);
    const double cc = inside(gen);
    const double t = inside(gen);
    if (t == cc) continue;
    const auto pair = eval_slope(cubic, cc, xs);
    const auto fc = oracle::eval_rational(cubic, oracle::to_rational(cc));
    const auto ft = oracle::eval_rational(cubic, oracle::to_rational(t));
    REQUIRE(fc.has_value());
    REQUIRE(ft.has_value());
    const oracle::Rational q =
        (*ft - *fc) / (oracle::to_rational(t) - oracle::to_rational(cc));
    CHECK(oracle::in_interval(q, pair.slope));
    CHECK(oracle::in_interval(*fc, pair.value_at_center));
  }
}

TEST_CASE("slope and derivative enclosures overlap") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> pts(-2.0, 2.0);
  for (int i = 0; i < 5000; ++i) {
    const Expr f = random_expr(gen, 3);
    double a = pts(gen), b = pts(gen);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    const Interval xs = Interval::make(a, b);
    std::uniform_real_distribution<double> inside(a, b);
    const double cc = inside(gen);
    const auto sp = eval_slope(f, cc, xs);
    const Interval de = eval_interval(derivative(f), xs);
    if (sp.slope.is_empty() || de.is_empty()) continue;
    CHECK(!intersect(sp.slope, de).is_empty());
  }
}

TEST_CASE("centered form") {
  // Never worse than the natural extension (asserted by construction).
  const Expr f = ivroot::parse("x^2");
  const Interval xs = Interval::make(0.9, 1.1);
  const Interval cf = centered_form(f, xs.midpoint(), xs);
  const Interval nat = eval_interval(f, xs);
  CHECK(cf.width() <= nat.width());
  CHECK(nat.contains(cf));

  // Degenerate input reduces to point evaluation.
  const Interval pt = centered_form(f, 2.0, Interval::point(2.0));
  CHECK(pt.contains(4.0));
  CHECK(pt.width() <= 1e-12);

  // The stress polynomial near x = 3: centered form contains the true
  // range and is no wider than the natural extension.
  const Expr bughw = ivroot::parse("(x-1)*(x-2)*(x-3)*(x-4)*(x-5)");
  const Interval near3 = Interval::make(2.9, 3.1);
  const Interval cf3 = centered_form(bughw, 3.0, near3);
  const Interval nat3 = eval_interval(bughw, near3);
  CHECK(cf3.width() <= nat3.width());
  // Dense subdivision oracle for the true range.
  double true_lo = 1e300, true_hi = -1e300;
  for (int k = 0; k <= 4096; ++k) {
    const double t = 2.9 + 0.2 * k / 4096;
    const double v = eval_double(bughw, t);
    true_lo = std::min(true_lo, v);
    true_hi = std::max(true_hi, v);
  }
  CHECK(cf3.contains(Interval::make(true_lo, true_hi)));
}

TEST_CASE("extension containment fuzz against the rational oracle") {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> pts(-3.0, 3.0);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const Expr f = random_expr(gen, 4);
    double a = pts(gen), b = pts(gen);
    if (a > b) std::swap(a, b);
    const Interval xs = Interval::make(a, b);
    std::uniform_real_distribution<double> inside(a, b);
    const double t = a == b ? a : inside(gen);
    const auto exact = oracle::eval_rational(f, oracle::to_rational(t));
    if (!exact) continue;
    const Interval enc = eval_interval(f, xs);
    CHECK(oracle::in_interval(*exact, enc));
    const auto exact_pt = oracle::eval_rational(f, oracle::to_rational(t));
    const Interval pt = eval_point(f, t);
    CHECK(oracle::in_interval(*exact_pt, pt));
    ++checked;
  }
  CHECK(checked > 10000);
}

TEST_CASE("evaluation counters") {
  auto& counters = ivroot::eval_counters();
  counters.reset();
  const Expr f = ivroot::parse("x^2-2");
  eval_interval(f, Interval::make(1, 2));
  eval_point(f, 1.5);
  eval_interval(f, Interval::point(1.5));
  eval_double(f, 1.5);
  CHECK(counters.interval_nondegenerate == 1);
  CHECK(counters.point_evals == 1);
  CHECK(counters.interval_degenerate == 1);
  CHECK(counters.double_evals == 1);
}
