#include <doctest.h>

#include <cmath>

#include "fracspec/fraccore.hpp"
#include "oracles.hpp"

using namespace fracspec;

namespace {
SampledSignal unit_gaussian(std::size_t N, double T = 12.0) {
  return sample_uniform([](double t) { return cplx(oracle::gauss(t)); }, T, N);
}
}  // namespace

TEST_SUITE("fraccore") {

TEST_CASE("constants at pi/2 and pi/4") {
  const auto p = make_frac_param(kPi / 2);
  CHECK(p.kind == AngleKind::Regular);
  CHECK(std::abs(p.c1) < 1e-15);
  CHECK(p.c2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(p.c_alpha - cplx(0.3989422804014327)) < 1e-15);

  const auto q = make_frac_param(kPi / 4);
  CHECK(q.c1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.c2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(q.c_alpha - std::sqrt(cplx(1, -1) / (2 * kPi))) < 1e-15);
}

TEST_CASE("singular classification") {
  CHECK(make_frac_param(0.0).kind == AngleKind::IdentityAngle);
  CHECK(make_frac_param(kPi).kind == AngleKind::ParityAngle);
  CHECK(make_frac_param(2 * kPi).kind == AngleKind::IdentityAngle);
  CHECK(make_frac_param(5e-4).kind == AngleKind::IdentityAngle);
  CHECK(make_frac_param(2e-3).kind == AngleKind::Regular);
  CHECK(make_frac_param(kPi - 5e-4).kind == AngleKind::ParityAngle);
  CHECK_THROWS_AS(make_frac_param(NAN), Error);
}

TEST_CASE("reduction mod 2pi is flagged") {
  const auto p = make_frac_param(kPi / 3 + 2 * kPi);
  CHECK(p.reduced);
  CHECK(p.alpha == doctest::Approx(kPi / 3).epsilon(1e-13));
  const auto q = make_frac_param(-kPi / 3);
  CHECK(q.alpha == doctest::Approx(5 * kPi / 3).epsilon(1e-13));
  CHECK(!make_frac_param(1.0).reduced);
}

TEST_CASE("classical_param has exact constants") {
  const auto p = classical_param();
  CHECK(p.c1 == 0.0);
  CHECK(p.c2 == 1.0);
  CHECK(p.c_alpha.imag() == 0.0);
}

TEST_CASE("kernel_eval examples") {
  const auto p = make_frac_param(kPi / 2);
  CHECK(std::abs(kernel_eval(p, 0, 0) - cplx(1 / std::sqrt(2 * kPi))) < 1e-15);
  CHECK(std::abs(kernel_eval(p, 1, 1) - std::polar(1.0, -1.0) / std::sqrt(2 * kPi)) < 1e-15);
  const auto q = make_frac_param(kPi / 4);
  const cplx expect = std::sqrt(cplx(1, -1) / (2 * kPi)) * std::polar(1.0, 1.0 - std::sqrt(2.0));
  CHECK(std::abs(kernel_eval(q, 1, 1) - expect) < 1e-14);
  CHECK_THROWS_AS(kernel_eval(make_frac_param(kPi), 0, 0), Error);
}

TEST_CASE("property: Pythagorean identity and constant kernel modulus") {
  for (int i = 0; i < 1000000; ++i) {
    const auto p = make_frac_param(oracle::uniform(0, 2 * kPi));
    if (!p.regular()) continue;
    const double d = std::abs(p.c1 * p.c1 + 1 - p.c2 * p.c2) / (p.c2 * p.c2);
    if (d > 1e-12) FAIL("c1^2 + 1 != c2^2 at alpha=" << p.alpha);
  }
  for (int i = 0; i < 2000; ++i) {
    const auto p = make_frac_param(oracle::uniform(0.01, kPi - 0.01));
    const double x = oracle::uniform(-20, 20), xi = oracle::uniform(-20, 20);
    CHECK(std::abs(std::abs(kernel_eval(p, x, xi)) - std::abs(p.c_alpha)) < 1e-12);
  }
}

TEST_CASE("identity and parity branches") {
  const auto f = sample_uniform([](double t) { return cplx(std::exp(-(t - 1) * (t - 1)), t); }, 6.0, 301);
  const auto grid = f.times();
  const auto same = frft(make_frac_param(2 * kPi), f, grid);
  CHECK(max_abs_diff(same, f.samples) < 1e-14);
  const auto flipped = frft(make_frac_param(kPi), f, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) CHECK(std::abs(flipped[j] - f.samples[grid.size() - 1 - j]) < 1e-12);

  const auto g = unit_gaussian(257);
  const auto gg = frft(make_frac_param(kPi), g, g.times());
  CHECK(max_abs_diff(gg, g.samples) < 1e-14);
}

TEST_CASE("unit gaussian is fixed at pi/2") {
  const auto f = unit_gaussian(1024);
  const auto xi = f.times();
  const auto F = frft(make_frac_param(kPi / 2), f, xi);
  double err = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) err = std::max(err, std::abs(F[k] - oracle::gauss(xi[k])));
  CHECK(err <= 1e-6);
}

TEST_CASE("pi/2 agrees with a direct Fourier quadrature") {
  const auto fn = [](double t) { return cplx(std::exp(-t * t / 3.0) * std::cos(t), 0.5 * std::exp(-t * t)); };
  const auto f = sample_uniform(fn, 12.0, 1024);
  const std::vector<double> xi{-4.0, -1.3, 0.0, 0.7, 2.5, 5.0};
  const auto F = frft(make_frac_param(kPi / 2), f, xi);
  for (std::size_t k = 0; k < xi.size(); ++k) CHECK(std::abs(F[k] - oracle::fourier(fn, xi[k])) < 1e-6);
}

TEST_CASE("general angle agrees with the kernel formula oracle") {
  const auto fn = [](double t) { return cplx(oracle::gauss(t - 0.5), 0.0) * std::polar(1.0, 0.8 * t); };
  const auto f = sample_uniform(fn, 12.0, 2048);
  for (double alpha : {0.4, kPi / 3, 2.0, 4.0}) {
    const auto p = make_frac_param(alpha);
    const std::vector<double> xi{-3.0, -0.2, 0.0, 1.0, 2.7};
    const auto F = frft(p, f, xi);
    for (std::size_t k = 0; k < xi.size(); ++k) CHECK(std::abs(F[k] - oracle::frft(fn, alpha, xi[k])) < 1e-8);
  }
}

TEST_CASE("undersampled chirp is rejected") {
  const auto f = unit_gaussian(64);
  CHECK_THROWS_AS(frft(make_frac_param(0.05), f, f.times()), Error);
  try {
    check_oscillation(make_frac_param(0.05), 0.5, 12.0, 12.0);
    FAIL("expected UndersampledChirp");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndersampledChirp);
  }
  CHECK(kernel_max_frequency(make_frac_param(kPi / 2), 12.0, 3.0) == doctest::Approx(3.0));
}

TEST_CASE("compose check") {
  const auto f = unit_gaussian(2048);
  CHECK(frft_compose_check(make_frac_param(kPi / 6), make_frac_param(kPi / 3), f).relative_l2 <= 1e-4);
  CHECK(frft_compose_check(make_frac_param(kPi / 2), make_frac_param(kPi / 2), f).relative_l2 <= 1e-4);
  try {
    frft_compose_check(make_frac_param(kPi / 2), make_frac_param(1e-5), f);
    FAIL("expected SingularAngle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularAngle);
  }
}

TEST_CASE("property: compose deviation does not grow under refinement") {
  // pi/2 with pi/4 keeps the chirp resolvable at N = 256
  double prev = INFINITY;
  for (std::size_t N : {256u, 512u, 1024u, 2048u}) {
    const double d =
        frft_compose_check(make_frac_param(kPi / 4), make_frac_param(kPi / 2), unit_gaussian(N, 6.0)).relative_l2;
    CHECK(d <= std::max(prev, 1e-13));
    prev = d;
  }
}

TEST_CASE("relative_l2 and max_abs_diff") {
  const std::vector<cplx> a{1.0, 2.0}, b{1.0, 1.0};
  CHECK(relative_l2(a, b) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(max_abs_diff(a, b) == 1.0);
  CHECK_THROWS(relative_l2(a, std::vector<cplx>{1.0}));
}

TEST_CASE("trapezoid weights and signal helpers") {
  const auto w = trapezoid_weights(5, 0.5);
  CHECK(w.front() == 0.25);
  CHECK(w[2] == 0.5);
  const auto f = unit_gaussian(1024);
  CHECK(f.dt == doctest::Approx(24.0 / 1023.0).epsilon(1e-15));
  CHECK(f.half_width() == doctest::Approx(12.0));
  CHECK(std::abs(f.interpolate(100.0)) == 0.0);
  SampledSignal bad{0.0, -1.0, {1.0, 2.0}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

}
