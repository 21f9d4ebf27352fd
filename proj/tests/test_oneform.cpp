#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hcmu/oneform.hpp"

using namespace hcmu;

namespace {

RationalOneForm football() {
  return build_form({{Complex(0, 0), 1.0 / 3.0}, {Complex(1, 0), -1.0 / 3.0}});
}

// numerical line integral of w along the straight segment [a, b]
Complex segment_integral(const RationalOneForm& form, Complex a, Complex b) {
  // composite Gauss-Legendre 5 on 64 panels
  static const double node[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
  static const double wght[5] = {0.2369268850561891, 0.4786286704993665,
                                 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
  Complex acc = 0.0;
  const int panels = 64;
  for (int p = 0; p < panels; ++p) {
    double t0 = static_cast<double>(p) / panels;
    double t1 = static_cast<double>(p + 1) / panels;
    double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    for (int i = 0; i < 5; ++i) {
      double t = mid + half * node[i];
      acc += wght[i] * half * evaluate(form, a + t * (b - a));
    }
  }
  return acc * (b - a);
}

}  // namespace

TEST_SUITE("oneform") {

TEST_CASE("construction accepts balanced residues and rejects the rest") {
  CHECK_NOTHROW(football());
  CHECK_NOTHROW(build_form({{Complex(0, 0), 2.0 / 3.0},
                            {Complex(1, 0), -1.0 / 3.0},
                            {Complex(2, 0), -1.0 / 3.0}}));

  CHECK_THROWS_AS(build_form({{Complex(0, 0), 1.0}, {Complex(1, 0), -0.5}}),
                  ResidueSumNonzero);
  CHECK_THROWS_AS(build_form({{Complex(0, 0), 1.0}}), TooFewPoles);
  // collisions are judged after rescaling to unit diameter
  CHECK_THROWS_AS(build_form({{Complex(0, 0), 1.0},
                              {Complex(1e-12, 0), -0.5},
                              {Complex(1, 0), -0.5}}),
                  DuplicatePole);
  // a tiny but well-separated two-pole configuration is legitimate
  CHECK_NOTHROW(build_form({{Complex(0, 0), 1.0}, {Complex(1e-12, 0), -1.0}}));
}

TEST_CASE("evaluate: hand values and reflection symmetry") {
  auto f = football();
  CHECK(evaluate(f, Complex(0.5, 0)).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(evaluate(f, Complex(0.5, 0)).imag() == doctest::Approx(0.0));

  auto g = build_form({{Complex(0, 0), 2.0 / 3.0},
                       {Complex(1, 0), -1.0 / 3.0},
                       {Complex(2, 0), -1.0 / 3.0}});
  CHECK(std::abs(evaluate(g, Complex(4.0 / 3.0, 0))) < 1e-14);

  // real poles + real residues: rho(conj z) = conj(rho(z))
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    Complex z(u(rng), u(rng));
    if (f.min_pole_distance(z) < 0.1) continue;
    Complex a = evaluate(f, std::conj(z));
    Complex b = std::conj(evaluate(f, z));
    CHECK(std::abs(a - b) < 1e-13);
  }

  CHECK_THROWS_AS(evaluate(f, Complex(0, 0)), EvaluationAtPole);
}

TEST_CASE("potential: symmetry line, hand value, pole blow-up") {
  auto f = football();
  CHECK(std::fabs(potential(f, Complex(0.5, 0.7))) < 1e-14);
  CHECK(std::fabs(potential(f, Complex(0.5, -2.0))) < 1e-14);
  CHECK(potential(f, Complex(2, 0)) ==
        doctest::Approx(2.0 / 3.0 * std::log(2.0)).epsilon(1e-14));
  // approach the positive-residue pole: f0 -> -inf
  CHECK(potential(f, Complex(1e-9, 0)) < -10.0);
  CHECK_THROWS_AS(potential(f, Complex(1, 0)), EvaluationAtPole);
}

TEST_CASE("zeros: football has none, three poles give 4/3, symmetry puts one at infinity") {
  CHECK(zeros(football()).empty());

  auto g = build_form({{Complex(0, 0), 2.0 / 3.0},
                       {Complex(1, 0), -1.0 / 3.0},
                       {Complex(2, 0), -1.0 / 3.0}});
  auto zg = zeros(g);
  REQUIRE(zg.size() == 1);
  CHECK(!zg[0].at_infinity);
  CHECK(zg[0].multiplicity == 1);
  CHECK(std::abs(zg[0].location - Complex(4.0 / 3.0, 0)) < 1e-10);

  auto h = build_form({{Complex(0, 0), 2.0 / 3.0},
                       {Complex(1, 0), -1.0 / 3.0},
                       {Complex(-1, 0), -1.0 / 3.0}});
  auto zh = zeros(h);
  REQUIRE(zh.size() == 1);
  CHECK(zh[0].at_infinity);
  CHECK(zh[0].multiplicity == 1);
}

TEST_CASE("divisor degree: total zero multiplicity is #poles - 2") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> loc(-1.0, 1.0);
  std::uniform_real_distribution<double> res(0.1, 1.0);
  for (int trial = 0; trial < 120; ++trial) {
    int m = 2 + static_cast<int>(rng() % 7);
    std::vector<PoleSpec> poles;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      Complex b;
      bool ok = false;
      while (!ok) {
        b = Complex(loc(rng), loc(rng));
        ok = true;
        for (const auto& p : poles)
          if (std::abs(b - p.location) < 1e-3) ok = false;
      }
      double r = (k + 1 < m) ? (rng() % 2 ? res(rng) : -res(rng)) : -sum;
      if (k + 1 == m && std::fabs(r) < 1e-6) r = -sum;  // keep it nonzero-ish
      poles.push_back({b, r});
      sum += r;
    }
    if (std::fabs(poles.back().residue) < 1e-9) continue;
    auto form = build_form(poles);
    int total = 0;
    for (const auto& z : zeros(form)) total += z.multiplicity;
    CHECK(total == m - 2);
  }
}

TEST_CASE("contour residues recover the prescribed values") {
  auto f = football();
  Complex r0 = contour_residue(f, Complex(0, 0), 0.3);
  Complex r1 = contour_residue(f, Complex(1, 0), 0.3);
  CHECK(std::abs(r0 - Complex(1.0 / 3.0, 0)) < 1e-10);
  CHECK(std::abs(r1 - Complex(-1.0 / 3.0, 0)) < 1e-10);
  CHECK_THROWS_AS(contour_residue(f, Complex(0.5, 0), 0.1), AmbiguousContour);
  CHECK_THROWS_AS(contour_residue(f, Complex(0.5, 0), 0.8), AmbiguousContour);
}

TEST_CASE("residue theorem over random forms") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> loc(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 3 + static_cast<int>(rng() % 3);
    std::vector<PoleSpec> poles;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      Complex b(3.0 * k + loc(rng), loc(rng));  // well separated
      double r = (k + 1 < m) ? loc(rng) + 1.5 : -sum;
      poles.push_back({b, r});
      sum += r;
    }
    auto form = build_form(poles);
    Complex total = 0.0;
    for (const auto& p : form.poles())
      total += contour_residue(form, p.location, 0.5);
    CHECK(std::abs(total) < 1e-9);
  }
}

TEST_CASE("exactness: closed loops vanish, potential equals the line integral") {
  auto f = build_form({{Complex(0, 0), 0.5},
                       {Complex(1, 0.5), -0.2},
                       {Complex(-1, 1), -0.3}});
  // closed polygon avoiding the poles
  std::vector<Complex> loop = {{2, -2}, {2, 2}, {-2.5, 2.2}, {-2, -2.3}, {2, -2}};
  Complex circ = 0.0;
  double length = 0.0;
  for (size_t i = 0; i + 1 < loop.size(); ++i) {
    circ += segment_integral(f, loop[i], loop[i + 1]);
    length += std::abs(loop[i + 1] - loop[i]);
  }
  CHECK(std::fabs(2.0 * circ.real()) <= 1e-8 * length);  // integral of w + conj w

  // two different polygonal paths from a to b give the same potential drop
  Complex a(1.7, -1.3), b(-1.4, 2.0), via1(2.4, 1.9), via2(-2.2, -1.8);
  double drop1 = 2.0 * (segment_integral(f, a, via1) + segment_integral(f, via1, b)).real();
  double drop2 = 2.0 * (segment_integral(f, a, via2) + segment_integral(f, via2, b)).real();
  double expected = potential(f, b) - potential(f, a);
  CHECK(drop1 == doctest::Approx(expected).epsilon(1e-9));
  CHECK(drop2 == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("offset and w-chart evaluators agree with the direct ones") {
  auto g = build_form({{Complex(0, 0), 2.0 / 3.0},
                       {Complex(1, 0), -1.0 / 3.0},
                       {Complex(2, 0), -1.0 / 3.0}});
  for (double log_r : {-1.0, -5.0, -15.0}) {
    for (double th : {0.3, 2.0, 4.4}) {
      double r = std::exp(log_r);
      Complex z = Complex(1, 0) + r * Complex(std::cos(th), std::sin(th));
      CHECK(potential_at_offset(g, 1, log_r, th) ==
            doctest::Approx(potential(g, z)).epsilon(1e-11));
      Complex eta = eta2_at_offset(g, 1, log_r, th);
      CHECK(std::abs(eta - (z - Complex(1, 0)) * evaluate(g, z)) < 1e-10);
    }
  }
  // deep offsets stay finite and approach the residue
  Complex eta_deep = eta2_at_offset(g, 0, -600.0, 1.0);
  CHECK(std::abs(eta_deep - Complex(2.0 / 3.0, 0)) < 1e-12);
  CHECK(std::isfinite(potential_at_offset(g, 0, -600.0, 1.0)));

  for (Complex w : {Complex(0.3, 0.1), Complex(-0.2, 0.25)}) {
    Complex z = 1.0 / w;
    CHECK(potential_wchart(g, w) == doctest::Approx(potential(g, z)).epsilon(1e-12));
    Complex expect = -evaluate(g, z) / (w * w);
    CHECK(std::abs(rho_wchart(g, w) - expect) < 1e-10 * std::abs(expect));
  }
  // value at w = 0 equals the negated first moment
  CHECK(std::abs(rho_wchart(g, Complex(0, 0)) - Complex(1.0, 0)) < 1e-14);
}

}  // TEST_SUITE
