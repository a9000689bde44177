#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "fracspec/distributions.hpp"
#include "fracspec/io.hpp"
#include "oracles.hpp"

using namespace fracspec;

namespace {

TestFunction gauss_phi(double center = 0.0, double width = 1.0) {
  return {[=](double x) { return cplx(std::exp(-0.5 * (x - center) * (x - center) / (width * width))); }, center, width,
          "gauss"};
}

// int |x|^{1/2} phi(x) dx with x = +-u^2, which removes the kink at the origin
cplx sqrt_abs_oracle(const std::function<cplx(double)>& phi) {
  return oracle::simpson([&](double u) { return 2.0 * u * u * (phi(u * u) + phi(-u * u)); }, 0.0, 6.0, 6000);
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("delta pairings") {
  CHECK(std::abs(pair(delta(), gauss_phi()) - 1.0) < 1e-15);
  CHECK(std::abs(pair(delta(0.0, 1), gauss_phi())) < 1e-12);
  // <delta', phi> = -phi'(0); for phi = e^{-(x-1)^2/2}, phi'(0) = e^{-1/2}
  CHECK(std::abs(pair(delta(0.0, 1), gauss_phi(1.0)) + std::exp(-0.5)) < 1e-8);
  CHECK(std::abs(pair(delta(0.0, 2), gauss_phi()) + 1.0) < 1e-7);
  CHECK(std::abs(pair(delta(0.5, 0, {2.0, 1.0}), gauss_phi()) - cplx(2.0, 1.0) * std::exp(-0.125)) < 1e-15);
  CHECK_THROWS_AS(delta(0.0, 5), Error);
}

TEST_CASE("homogeneous pairing against the quadrature oracle") {
  const auto f = homogeneous(HomogeneousPattern::Abs, 0.5);
  const cplx ref = sqrt_abs_oracle([](double x) { return cplx(oracle::gauss(x)); });
  CHECK(ref.real() == doctest::Approx(std::pow(2.0, 0.75) * std::tgamma(0.75)).epsilon(1e-9));
  CHECK(ref.real() == doctest::Approx(2.060).epsilon(1e-3));
  CHECK(std::abs(pair(f, gauss_phi()) - ref) < 1e-8);
  const auto plus = homogeneous(HomogeneousPattern::Plus, 0.5);
  const auto minus = homogeneous(HomogeneousPattern::Minus, 0.5);
  const auto phi = gauss_phi(0.7);
  CHECK(std::abs(pair(plus, phi) + pair(minus, phi) - pair(f, phi)) < 1e-9);
  CHECK_THROWS_AS(homogeneous(HomogeneousPattern::Abs, -1.0), Error);
}

TEST_CASE("sampled and closed form densities") {
  const auto s = sample_uniform([](double t) { return cplx(std::cos(t)); }, 12.0, 4001);
  const auto d = sampled_density(s);
  // int cos(x) e^{-x^2/2} = sqrt(2pi) e^{-1/2}
  CHECK(std::abs(pair(d, gauss_phi()) - std::sqrt(2 * oracle::pi) * std::exp(-0.5)) < 1e-5);
  const auto c = closed_form("cos", [](double x) { return cplx(std::cos(x)); }, {}, 0);
  CHECK(std::abs(pair(c, gauss_phi()) - std::sqrt(2 * oracle::pi) * std::exp(-0.5)) < 1e-10);
}

TEST_CASE("modulation and scaling wrappers") {
  const auto phi = gauss_phi();
  const auto h = homogeneous(HomogeneousPattern::Abs, 0.5);
  const auto mh = modulate(h, 1.3);
  const cplx ref = sqrt_abs_oracle([](double x) { return oracle::gauss(x) * std::polar(1.0, 1.3 * x); });
  CHECK(std::abs(pair(mh, phi) - ref) < 1e-8);
  CHECK(std::abs(pair(scale(h, {0, 2}), phi) - cplx(0, 2) * pair(h, phi)) < 1e-12);
  CHECK(std::abs(pair(modulate(delta(0.5), 2.0), phi) - std::polar(1.0, 1.0) * std::exp(-0.125)) < 1e-14);
  CHECK(zero_distribution().is_zero());
  CHECK(!delta().is_zero());
}

TEST_CASE("property: pairing is linear") {
  const auto battery = test_battery(1.3);
  const auto f = homogeneous(HomogeneousPattern::Plus, 0.25);
  for (const auto& phi : battery) {
    const cplx a(0.3, -1.1);
    TestFunction twice = phi;
    twice.eval = [phi, a](double x) { return a * phi(x); };
    CHECK(std::abs(pair(f, twice) - a * pair(f, phi)) < 1e-12 * (1 + std::abs(pair(f, phi))));
    CHECK(std::abs(pair(scale(f, a), phi) - a * pair(f, phi)) < 1e-12 * (1 + std::abs(pair(f, phi))));
  }
  const auto comb = delta_comb({{0.0, 0, 1.0}, {1.0, 1, {0, 2}}});
  for (const auto& phi : battery)
    CHECK(std::abs(pair(comb, phi) - pair(delta(), phi) - pair(delta(1.0, 1, {0, 2}), phi)) < 1e-12);
}

TEST_CASE("battery has eight members") {
  const auto b = test_battery(2.0);
  CHECK(b.size() == 8);
  CHECK(std::abs(b[6](1.0) - std::polar(1.0, 2.0) * std::exp(-0.5)) < 1e-15);
}

TEST_CASE("scaled pairings are exact for homogeneous descriptors") {
  const auto one = SlowlyVarying::one();
  const auto phi = gauss_phi(0.3, 0.8);
  for (double eps : {0.5, 0.01, 1e-4}) {
    CHECK(std::abs(scaled_pair(delta(), phi, eps, -1.0, one) - phi(0.0)) < 1e-12);
    const auto h = homogeneous(HomogeneousPattern::Abs, 0.5);
    CHECK(std::abs(scaled_pair(h, phi, eps, 0.5, one) - pair(h, phi)) < 1e-9);
    // phi'(0) = 0.3/0.64 e^{-0.09/1.28}
    CHECK(std::abs(scaled_pair(delta(0, 1), phi, eps, -2.0, one) + 0.3 / 0.64 * std::exp(-0.09 / 1.28)) < 1e-6);
  }
}

TEST_CASE("degree estimates") {
  const auto seq = ScaleSequence::powers_of_two(2, 12);
  const auto phi = gauss_phi(0.5);
  CHECK(quasi_degree_estimate(delta(), phi, seq).slope == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(quasi_degree_estimate(homogeneous(HomogeneousPattern::Abs, 0.5), phi, seq).slope ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(quasi_degree_estimate(delta(0, 1), phi, seq).slope == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(quasi_degree_estimate(delta(), phi, seq).residual < 1e-10);
}

TEST_CASE("property: degree estimate is invariant under scaling f") {
  const auto seq = ScaleSequence::powers_of_two(2, 12);
  const auto phi = gauss_phi(-0.4, 1.5);
  for (const auto& f : {delta(), homogeneous(HomogeneousPattern::Plus, 0.3), abs_pow_log(0.5)}) {
    const double s0 = quasi_degree_estimate(f, phi, seq).slope;
    for (cplx lam : {cplx(3.0), cplx(0, -0.2), cplx(1e3, 1e3)})
      CHECK(std::abs(quasi_degree_estimate(scale(f, lam), phi, seq).slope - s0) < 1e-10);
  }
}

TEST_CASE("fit_log_slope") {
  std::vector<double> x, y;
  for (int k = 0; k < 10; ++k) {
    x.push_back(std::exp2(-k));
    y.push_back(3.0 * std::pow(x.back(), 1.7));
  }
  const auto d = fit_log_slope(x, y);
  CHECK(d.slope == doctest::Approx(1.7).epsilon(1e-12));
  CHECK_THROWS_AS(fit_log_slope(std::span(x).first(2), std::span(y).first(2)), Error);
}

TEST_CASE("slowly varying models") {
  CHECK(SlowlyVarying::one()(1e-5) == 1.0);
  CHECK(SlowlyVarying::log_power(2.0)(std::exp(-3.0)) == doctest::Approx(9.0));
  CHECK(SlowlyVarying::iter_log()(std::exp(-std::exp(1.0))) == doctest::Approx(1.0));
  CHECK_THROWS_AS(SlowlyVarying::log_power(1.0)(0.9), Error);
  CHECK_THROWS_AS(SlowlyVarying::iter_log()(0.3), Error);
}

TEST_CASE("property: slowly varying ratio test") {
  const auto dev = [](const SlowlyVarying& L, double eps, double a) { return std::abs(L(a * eps) / L(eps) - 1.0); };
  CHECK(dev(SlowlyVarying::one(), std::ldexp(1.0, -30), 0.5) == 0.0);
  for (const auto& L : {SlowlyVarying::log_power(1.0), SlowlyVarying::log_power(0.5), SlowlyVarying::iter_log()}) {
    for (double a : {0.5, 2.0}) {
      double prev = INFINITY;
      for (int k = 10; k <= 1000; k += 10) {
        const double d = dev(L, std::ldexp(1.0, -k), a);
        CHECK(d < prev);
        prev = d;
      }
      // |ln eps| must reach about 70a before the first-order term ln 2 / |ln eps| drops below 1%
      CHECK(dev(L, std::ldexp(1.0, -200), a) < 0.01);
    }
  }
  CHECK(dev(SlowlyVarying::iter_log(), std::ldexp(1.0, -40), 2.0) < 0.01);
}

TEST_CASE("scale sequences") {
  CHECK(ScaleSequence::powers_of_two(2, 12).eps.size() == 11);
  CHECK_NOTHROW(ScaleSequence::powers_of_two(2, 20).validate());
  CHECK_THROWS_AS(ScaleSequence::powers_of_two(2, 21).validate(), Error);
  CHECK_THROWS_AS((ScaleSequence{{0.5, 0.5}}).validate(), Error);
  CHECK_THROWS_AS((ScaleSequence{{}}).validate(), Error);
}

TEST_CASE("chirp factor equivalence") {
  const auto seq = ScaleSequence::powers_of_two(2, 12);
  const auto phi = gauss_phi();
  const auto rd = chirp_factor_check(delta(), phi, 1.0, -1.0, SlowlyVarying::one(), seq);
  CHECK(rd.plain_converged);
  CHECK(rd.chirped_converged);
  CHECK(rd.limit_gap < 1e-14);
  for (const auto& v : rd.plain) CHECK(std::abs(v - 1.0) < 1e-14);

  const auto rh = chirp_factor_check(homogeneous(HomogeneousPattern::Abs, 0.5), phi, 1.0, 0.5, SlowlyVarying::one(), seq);
  CHECK(rh.plain_converged);
  CHECK(rh.chirped_converged);
  CHECK(rh.limit_gap < 1e-4);
  CHECK(std::isfinite(rh.boundedness_proxy));
  CHECK(!rh.note.empty());

  const auto rz = chirp_factor_check(zero_distribution(), phi, 1.0, 0.0, SlowlyVarying::one(), seq);
  for (const auto& v : rz.chirped) CHECK(v == cplx{});
}

TEST_CASE("cauchy proxy") {
  std::vector<cplx> v{1.0, 0.5, 0.25, 0.25 + 1e-6, 0.25 + 2e-6, 0.25 + 3e-6};
  CHECK(cauchy_converged(v));
  v.push_back(0.3);
  CHECK(!cauchy_converged(v));
}

TEST_CASE("known quasiasymptotics") {
  CHECK(known_quasiasymptotics(delta())->m == -1.0);
  CHECK(known_quasiasymptotics(delta(0, 2))->m == -3.0);
  CHECK(!known_quasiasymptotics(delta(1.0)));
  CHECK(known_quasiasymptotics(homogeneous(HomogeneousPattern::Minus, 0.25))->m == 0.25);
  const auto q = known_quasiasymptotics(abs_pow_log(0.5));
  REQUIRE(q);
  CHECK(q->L.model() == SlowlyVarying::Model::LogPower);
  // |eps x|^m ln|eps x| / (eps^m |ln eps|) tends to -|x|^m
  const auto phi = gauss_phi();
  const cplx lim = pair(q->u, phi);
  const cplx v = scaled_pair(abs_pow_log(0.5), phi, std::ldexp(1.0, -40), 0.5, q->L);
  CHECK(std::abs(v - lim) / std::abs(lim) < 0.05);
}

TEST_CASE("descriptor JSON") {
  using nlohmann::json;
  const auto phi = gauss_phi(0.2);
  CHECK(std::abs(pair(distribution_from_json(json::parse(R"({"kind":"delta"})")), phi) - phi(0.0)) < 1e-15);
  const auto d = distribution_from_json(json::parse(R"({"kind":"delta","terms":[[0.5,0,2.0,1.0]]})"));
  CHECK(std::abs(pair(d, phi) - cplx(2, 1) * phi(0.5)) < 1e-15);
  const auto h = distribution_from_json(json::parse(R"({"kind":"homogeneous","pattern":"plus","degree":0.5})"));
  CHECK(h.pattern == HomogeneousPattern::Plus);
  CHECK(distribution_from_json(json::parse(R"({"kind":"closed","expr":"abs_pow_log","degree":0.5})")).expr ==
        "abs_pow_log");
  CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"kind":"wat"})")), Error);
  CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"degree":1})")), Error);

  const auto dir = std::filesystem::temp_directory_path() / "fracspec_dist_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "s.csv");
    write_signal_csv(sample_uniform([](double t) { return cplx(std::cos(t)); }, 12.0, 2001), out);
  }
  const auto s = distribution_from_json(json::parse(R"({"kind":"sampled","file":"s.csv"})"), dir);
  CHECK(s.kind == Distribution::Kind::SampledDensity);
  CHECK(std::abs(pair(s, gauss_phi()) - std::sqrt(2 * oracle::pi) * std::exp(-0.5)) < 1e-4);
}

}
