#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ivroot/monotone.hpp"
#include "ivroot/point_newton.hpp"

using ivroot::Expr;
using ivroot::Interval;
using ivroot::MonotoneConfig;
using ivroot::RootStatus;
using ivroot::Sign;
using ivroot::solve_increasing;

namespace {

struct Problem {
  Expr f;
  Expr fp;
};

Problem make_problem(const char* text) {
  Expr f = ivroot::parse(text);
  Expr fp = derivative(f);
  return {std::move(f), std::move(fp)};
}

}  // namespace

TEST_CASE("linear function certified at once") {
  const auto [f, fp] = make_problem("x-1");
  const auto r = solve_increasing(Interval::make(0, 2), f, fp, {1.0, 1e-9, 1e-12});
  REQUIRE(r.candidate.has_value());
  CHECK(r.candidate->status == RootStatus::certified);
  CHECK(r.candidate->interval.contains(1.0));
  CHECK(r.candidate->interval.width() <= 1e-9);
  CHECK(r.candidate->sign_lo == Sign::minus);
  CHECK(r.candidate->sign_hi == Sign::plus);
}

TEST_CASE("sqrt(2) with kappa = 2") {
  const auto [f, fp] = make_problem("x^2-2");
  const auto r = solve_increasing(Interval::make(1, 2), f, fp, {2.0, 1e-9, 1e-12});
  REQUIRE(r.candidate.has_value());
  CHECK(r.candidate->status == RootStatus::certified);
  CHECK(r.candidate->interval.contains(1.4142135623730951));
  CHECK(r.candidate->interval.width() <= 1e-9);
}

TEST_CASE("certified no-root rejections") {
  const auto [f, fp] = make_problem("x-1");
  CHECK(!solve_increasing(Interval::make(2, 3), f, fp, {1.0, 1e-9, 1e-12})
             .candidate.has_value());
  CHECK(!solve_increasing(Interval::make(-3, 0), f, fp, {1.0, 1e-9, 1e-12})
             .candidate.has_value());
}

TEST_CASE("exact root at the left endpoint goes through zero expansion") {
  // f(x) = x^3 + x on [0, 2]: f(0) = 0 exactly, f' >= 1.
  const auto [f, fp] = make_problem("x^3+x");
  const auto r = solve_increasing(Interval::make(0, 2), f, fp, {1.0, 1e-6, 1e-12});
  REQUIRE(r.candidate.has_value());
  CHECK(r.stats.expanded);
  CHECK(r.candidate->interval.contains(0.0));
  CHECK(r.candidate->interval.lo() == 0.0);
  CHECK(r.candidate->interval.width() <= 1e-6);
  CHECK(r.candidate->sign_lo == Sign::unknown);
  CHECK(r.candidate->sign_hi == Sign::plus);
  CHECK(r.candidate->status == RootStatus::possible);
}

TEST_CASE("tau_w never decreases") {
  const auto [f, fp] = make_problem("x^3-2*x^2+x-0.3333333333");
  const double tau_w0 = 1e-14;
  const auto r = solve_increasing(Interval::make(1, 2), f, fp, {0.1, 1e-12, tau_w0});
  CHECK(r.tau_w_final >= tau_w0);
}

TEST_CASE("zero expansion marches symmetrically on f = x") {
  // Hand march with step 0.25 and tiny tau_w: f(+-0.25) = +-0.25 is
  // certified at the first probe each way, so the cluster spans exactly
  // one step per flank and the core stays degenerate.
  const Expr f = ivroot::parse("x");
  double tau_w = 1e-9;
  const auto ze = ivroot::expand_zero_march(
      0.0, Interval::make(-1, 1), [&](double t) { return eval_point(f, t); },
      0.25, tau_w);
  CHECK(ze.cluster == Interval::make(-0.25, 0.25));
  CHECK(ze.core == Interval::point(0.0));
  CHECK(ze.left_sign == Sign::minus);
  CHECK(ze.right_sign == Sign::plus);
  CHECK(ze.left == Interval::make(-1, -0.25));
  CHECK(ze.right == Interval::make(0.25, 1));
}

TEST_CASE("zero expansion at the boundary leaves no remainder there") {
  const Expr f = ivroot::parse("x-1");
  double tau_w = 1e-9;
  const MonotoneConfig cfg{1.0, 0.25, tau_w};
  // z at the supremum: the rightward loop guard fails immediately.
  const auto ze = expand_zero_monotone(1.0, Interval::make(0, 1), f, cfg, tau_w);
  CHECK(ze.right.is_empty());
  CHECK(ze.cluster.hi() == 1.0);
  CHECK(ze.cluster.lo() == 0.875);  // one tau_x/2 step out, certified there
  CHECK(ze.left == Interval::make(0, 0.875));
  CHECK(ze.left_sign == Sign::minus);
}

TEST_CASE("constant zero expression clusters the whole interval") {
  const Expr f = ivroot::parse("0*x");
  double tau_w = 1e-9;
  const MonotoneConfig cfg{1.0, 0.25, tau_w};
  const auto ze = expand_zero_monotone(0.0, Interval::make(-1, 1), f, cfg, tau_w);
  CHECK(ze.left.is_empty());
  CHECK(ze.right.is_empty());
  CHECK(ze.cluster == Interval::make(-1, 1));
  CHECK(ze.left_sign == Sign::unknown);
  CHECK(ze.right_sign == Sign::unknown);
}

TEST_CASE("no non-degenerate extension evaluations inside the solver") {
  const auto [f, fp] = make_problem("x^3+2*x-1");
  auto& counters = ivroot::eval_counters();
  counters.reset();
  const auto r = solve_increasing(Interval::make(-2, 2), f, fp, {2.0, 1e-10, 1e-12});
  REQUIRE(r.candidate.has_value());
  CHECK(counters.interval_nondegenerate == 0);
  CHECK(counters.point_evals > 0);
}

TEST_CASE("fuzz: increasing cubics against the bracketing oracle") {
  std::mt19937_64 gen(97);
  std::uniform_real_distribution<double> roots(-1.5, 1.5);
  std::uniform_real_distribution<double> slopes(0.5, 3.0);
  const double tau_x = 1e-10;
  int expanded = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    const double p = slopes(gen);
    const double q = roots(gen);
    // f = x^3 + p x - q, strictly increasing with f' >= p on any interval.
    const Expr f = Expr::sub(
        Expr::add(Expr::pow(Expr::variable(), 3),
                  Expr::mul(Expr::constant(p), Expr::variable())),
        Expr::constant(q));
    const Expr fp = derivative(f);
    const Interval x = Interval::make(-2, 2);

    const auto r = solve_increasing(x, f, fp, {p, tau_x, 1e-13});
    REQUIRE(r.candidate.has_value());

    // A Newton iterate can land inside the evaluation noise band and force
    // an expansion; those candidates carry the tau_w floor instead of the
    // tau_x width and are checked for containment only.
    if (r.stats.expanded) {
      ++expanded;
      const auto root_bracket = ivroot::exact_newton(
          x, [&](double t) { return eval_double(f, t); },
          [&](double t) { return eval_double(fp, t); }, 1e-14, 0.0);
      REQUIRE(root_bracket.has_value());
      CHECK(r.candidate->interval.contains(root_bracket->midpoint()));
      continue;
    }

    const auto oracle = ivroot::exact_newton(
        x, [&](double t) { return eval_double(f, t); },
        [&](double t) { return eval_double(fp, t); }, tau_x, 0.0);
    REQUIRE(oracle.has_value());

    // Both carry the root; they agree to within tau_x per endpoint.
    CHECK(std::fabs(r.candidate->interval.lo() - oracle->lo()) <= tau_x);
    CHECK(std::fabs(r.candidate->interval.hi() - oracle->hi()) <= tau_x);
    CHECK(r.candidate->status == RootStatus::certified);
  }
  CHECK(expanded < 500);  // the regular path dominates
}
