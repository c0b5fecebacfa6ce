// Copyright (c) 2026 The dce-bands authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dce/errors.hpp"
#include "dce/lorentz.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace dce;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using std::numbers::pi;

TEST_CASE("eval", "[lorentz]") {
  PeakedSum one;
  one.add(1.0, Lorentzian(0.0, 1.0));
  CHECK_THAT(eval(one, 0.0).real(), WithinRel(1.0 / pi, 1e-15));
  CHECK(eval(PeakedSum{}, 3.7) == Complex{});

  PeakedSum two = one;
  two.add(1.0, Lorentzian(0.0, 1.0));
  for (double x : {-2.0, 0.3, 5.0})
    CHECK_THAT(std::abs(eval(two, x) - 2.0 * eval(one, x)), WithinAbs(0.0, 1e-16));
}

TEST_CASE("lorentzian validation", "[lorentz]") {
  CHECK_THROWS_AS(Lorentzian(0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(Lorentzian(0.0, -1.0), ValidationError);
  CHECK_THROWS_AS(Lorentzian(std::nan(""), 1.0), ValidationError);
  PeakedSum s;
  CHECK_THROWS_AS(s.add(Complex(std::numeric_limits<double>::infinity(), 0.0), Lorentzian(0.0, 1.0)),
                  ValidationError);
}

TEST_CASE("unit area over a finite window", "[lorentz]") {
  for (auto [c, w] : {std::pair{0.0, 1.0}, {3.0, 1e-3}, {-2.0, 40.0}}) {
    const Lorentzian l(c, w);
    const double area = test::gk([&](double x) { return l(x); }, c - 1e4 * w, c + 1e4 * w, 1e-12);
    CHECK(area >= 1.0 - 1e-3);
    CHECK(area <= 1.0 + 1e-12);
    CHECK_THAT(area, WithinRel(0.999936338022975, 1e-9));
  }
}

TEST_CASE("product integral", "[lorentz]") {
  const Lorentzian a(0.0, 1.0);
  CHECK_THAT(product_integral(a, a), WithinRel(1.0 / (2.0 * pi), 1e-15));
  // frozen from an independent quadrature, equal to (1/pi) 2/13
  CHECK_THAT(product_integral(a, Lorentzian(3.0, 1.0)), WithinRel(0.0489707517205832, 1e-14));
  CHECK(product_integral(a, Lorentzian(1e9, 1.0)) < 1e-18);

  const Lorentzian b(0.4, 0.25), c(-1.1, 2.0);
  CHECK(product_integral(b, c) == product_integral(c, b));
  CHECK(product_integral(c, c) == 1.0 / (2.0 * pi * 2.0));
}

TEST_CASE("convolution against quadrature", "[lorentz]") {
  const Lorentzian a(1.5, 0.3), b(-0.5, 0.7);
  const Lorentzian ab = convolve(a, b);
  CHECK(ab.center() == 1.0);
  CHECK(ab.width() == 1.0);
  for (double x : {-3.0, 0.0, 0.8, 1.0, 4.0}) {
    const double q = test::real_line([&](double y) { return a(y) * b(x - y); },
                                     test::graded({{a.center(), a.width()}, {x - b.center(), b.width()}}, 10.0), 10.0);
    CHECK_THAT(q, WithinRel(ab(x), 1e-8));
  }
  CHECK(convolve(Lorentzian(0.0, 1.0), Lorentzian(0.0, 1.0)) == Lorentzian(0.0, 2.0));
  CHECK(convolve(Lorentzian(2.5, 0.1), Lorentzian(0.0, 0.4)) == Lorentzian(2.5, 0.5));
}

TEST_CASE("convolution is commutative and associative", "[lorentz]") {
  const Lorentzian a(1.0, 1.0), b(-2.0, 3.0), c(0.5, 0.25);
  CHECK(convolve(a, b) == convolve(b, a));
  CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
}

TEST_CASE("localize samples the smooth factor at peak centers", "[lorentz]") {
  PeakedSum s;
  s.add(3.0, Lorentzian(5.0, 0.2));
  CHECK(localize([](double) { return Complex(1.0); }, s) == Complex(3.0));

  PeakedSum t;
  t.add(1.0, Lorentzian(2.0, 0.05));
  CHECK(localize([](double x) { return Complex(x); }, t) == Complex(2.0));

  const double w = 0.01;
  PeakedSum u;
  u.add(1.0, Lorentzian(1.0, w));
  u.add(1.0, Lorentzian(-1.0, w));
  const auto sq = [](double x) { return Complex(x * x); };
  CHECK(localize(sq, u) == Complex(2.0));
  // x^2 times a Lorentzian is not integrable on the line; compare on a window
  // holding both peaks. The finite-width correction is a few w.
  const double q = test::gk([&](double x) { return (x * x * eval(u, x)).real(); }, -1.5, 1.5, 1e-12);
  CHECK_THAT(q, WithinAbs(2.0, 5.0 * w));
}

TEST_CASE("localize with unit smooth factor returns the coefficient sum", "[lorentz]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-10.0, 10.0), wid(1e-4, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    PeakedSum s;
    Complex sum{};
    for (int i = 0; i < 6; ++i) {
      const Complex c(pos(rng), pos(rng));
      s.add(c, Lorentzian(pos(rng), wid(rng)));
      sum += c;
    }
    CHECK(localize([](double) { return Complex(1.0); }, s, 0.0) == sum);
    CHECK(s.integral() == sum);
  }
}

TEST_CASE("coincident centers share one sample", "[lorentz]") {
  PeakedSum s;
  s.add(1.0, Lorentzian(1.0, 0.1));
  s.add(1.0, Lorentzian(1.0 + 1e-9, 0.1));
  int calls = 0;
  const auto f = [&](double) {
    ++calls;
    return Complex(2.0);
  };
  CHECK(localize(f, s) == Complex(4.0));
  CHECK(calls == 1);
  CHECK_THAT(default_coincidence_tol(s), WithinRel(0.01, 1e-12));
}

TEST_CASE("localize reports a non-finite sample", "[lorentz]") {
  PeakedSum s;
  s.add(1.0, Lorentzian(0.0, 0.1));
  CHECK_THROWS_AS(localize([](double x) { return Complex(1.0 / x); }, s), SingularEvaluationError);
  CHECK_THROWS_AS(localize([](double) { return Complex(1.0); }, s, -1.0), ValidationError);
}

TEST_CASE("pair product and overlap ratio", "[lorentz]") {
  PeakedSum a, b;
  a.add(Complex(0.0, 2.0), Lorentzian(0.0, 1.0));
  b.add(3.0, Lorentzian(1.0, 1.0));
  b.add(1.0, Lorentzian(0.0, 1.0));
  const auto pairs = pair_product(a, b);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].coeff == Complex(0.0, -6.0));
  CHECK(pairs[1].coeff == Complex(0.0, -2.0));
  CHECK(overlap_ratio(pairs[1]) == 1.0);
  CHECK_THAT(overlap_ratio(pairs[0]), WithinRel(4.0 / 5.0, 1e-15));
}

TEST_CASE("drop subleading", "[lorentz]") {
  const double omega0 = 1.0, tau = 1000.0, scale = omega0 * tau;
  const Lorentzian p0(0.0, 1.0 / tau), p1(omega0, 1.0 / tau);

  const PairedSum single{{1.0, p0, p0}};
  CHECK(drop_subleading(single, scale, 1.0 / scale).size() == 1);

  // Cross pairing one omega0 apart relative to the same pairing on a common
  // center: (2/tau)^2 / (omega0^2 + (2/tau)^2), about (2 / (omega0 tau))^2.
  const PairedSum mixed{{1.0, p0, p0}, {1.0, p0, p1}, {1.0, p1, p0}, {1.0, p1, p1}};
  const double ratio = product_integral(p0, p1) / product_integral(p0, p0);
  CHECK_THAT(ratio, WithinRel(std::pow(2.0 / scale, 2), 1e-5));
  CHECK_THAT(overlap_ratio(mixed[1]), WithinRel(ratio, 1e-12));
  const auto kept = drop_subleading(mixed, scale, 1.0 / scale);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].a == kept[0].b);
  CHECK(kept[1].a == kept[1].b);
  CHECK(drop_subleading(mixed, scale, 0.0).size() == 4);
  CHECK(drop_subleading(mixed, scale, 1e-7).size() == 4);
  CHECK_THROWS_AS(drop_subleading(mixed, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(drop_subleading(mixed, scale, -0.1), ValidationError);
}

TEST_CASE("paired localize against quadrature for narrow peaks", "[lorentz]") {
  const double w = 1e-4;
  const auto f = [](double x) { return Complex(std::exp(-x * x), x); };
  const PairedSum pairs{{Complex(1.0, 0.5), Lorentzian(0.3, w), Lorentzian(0.3, 2 * w)},
                        {Complex(-0.7, 0.0), Lorentzian(-0.4, w), Lorentzian(-0.4, w)}};
  const Complex mono = localize(f, pairs, w / 10.0);
  const auto integrand = [&](double x) {
    Complex s{};
    for (const auto &p : pairs)
      s += p.coeff * p.a(x) * p.b(x);
    return s * f(x);
  };
  const Complex q = test::real_line(integrand, test::graded({{0.3, w}, {-0.4, w}}, 1.0), 1.0);
  CHECK(std::abs(q - mono) < 1e-3 * std::abs(mono));
}
