#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fracspec/io.hpp"
#include "oracles.hpp"

using namespace fracspec;

namespace {
ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double keeps 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.0) == "-2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("synthetic gaussian") {
  const auto s = synthetic_signal(nlohmann::json::parse(R"({"gaussian":{"width":1},"N":1024,"T":12})"));
  CHECK(s.size() == 1024);
  CHECK(s.dt == doctest::Approx(24.0 / 1023.0).epsilon(1e-15));
  CHECK(s.t0 == -12.0);
  CHECK(std::abs(s.samples[0] - std::exp(-72.0)) < 1e-40);
  const auto m = synthetic_signal(nlohmann::json::parse(R"({"gaussian":{"width":2,"modulation":1.5,"chirp":-0.5},"N":11,"T":1})"));
  const double t = m.t(3);
  CHECK(std::abs(m.samples[3] - std::exp(-t * t / 8) * std::polar(1.0, 1.5 * t - 0.25 * t * t)) < 1e-15);
  CHECK(code_of([] { synthetic_signal(nlohmann::json::parse(R"({"gaussian":{"width":0},"N":8,"T":1})")); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("signal CSV round trip is bit exact") {
  SampledSignal s = sample_uniform([](double t) { return std::polar(std::exp(-t * t), std::sqrt(2.0) * t); }, 3.0, 301);
  s.samples[5] = {1e-300, -3.141592653589793e200};
  std::stringstream buf;
  write_signal_csv(s, buf);
  CHECK(buf.str().rfind("t,re,im\n", 0) == 0);
  CHECK(buf.str().find('\r') == std::string::npos);
  const auto back = read_signal_csv(buf);
  REQUIRE(back.size() == s.size());
  for (std::size_t j = 0; j < s.size(); ++j) CHECK(back.samples[j] == s.samples[j]);
  CHECK(back.t0 == s.t0);
}

TEST_CASE("signal CSV errors") {
  std::istringstream empty("");
  CHECK(code_of([&] { read_signal_csv(empty); }) == ErrorCode::MalformedCSV);
  std::istringstream header("x,y,z\n0,1,2\n");
  CHECK(code_of([&] { read_signal_csv(header); }) == ErrorCode::MalformedCSV);
  std::istringstream junk("t,re,im\n0,1,abc\n1,1,1\n");
  CHECK(code_of([&] { read_signal_csv(junk); }) == ErrorCode::MalformedCSV);
  std::istringstream short_row("t,re,im\n0,1\n1,1,1\n");
  CHECK(code_of([&] { read_signal_csv(short_row); }) == ErrorCode::MalformedCSV);
  std::istringstream jitter("t,re,im\n0,1,0\n0.1,1,0\n0.2003,1,0\n0.3,1,0\n");
  CHECK(code_of([&] { read_signal_csv(jitter); }) == ErrorCode::NonUniformGrid);
  std::istringstream tiny("t,re,im\n0,1,0\n0.1,1,0\n0.2000000000000001,1,0\n0.3,1,0\n");
  CHECK_NOTHROW(read_signal_csv(tiny));
  CHECK(code_of([] { read_signal_csv(std::filesystem::path("/nonexistent/f.csv")); }) == ErrorCode::MalformedCSV);
}

TEST_CASE("grid CSV round trip is bit exact") {
  TFGrid g(LinearAxis{-1, 1, 5}.points(), ScaleAxis{0.5, 2, 3, true}.points(), {"FRST", 1.0471975511965976, "hermite1"});
  for (std::size_t n = 0; n < g.values.size(); ++n) g.values[n] = {std::sin(1.0 + n), std::cos(0.3 * n) / 7.0};
  std::stringstream buf;
  write_grid_csv(g, buf);
  CHECK(buf.str().rfind("x,xi,re,im\n", 0) == 0);
  const auto back = read_grid_csv(buf);
  CHECK(back.x_axis == g.x_axis);
  CHECK(back.xi_axis == g.xi_axis);
  CHECK(back.values == g.values);

  const auto meta = grid_meta_json(g);
  CHECK(meta.at("transform") == "FRST");
  CHECK(meta.at("window") == "hermite1");

  std::istringstream broken("x,xi,re,im\n0,1,0,0\n0,2,0,0\n1,1,0,0\n");
  CHECK(code_of([&] { read_grid_csv(broken); }) == ErrorCode::MalformedCSV);
}

TEST_CASE("axes") {
  const auto xi = ScaleAxis{0.25, 4.0, 5, true}.points();
  REQUIRE(xi.size() == 10);
  CHECK(xi.front() == doctest::Approx(-4.0));
  CHECK(xi[5] == doctest::Approx(0.25));
  CHECK(xi[7] == doctest::Approx(1.0));
  const auto x = LinearAxis{-8, 8, 128}.points();
  CHECK(x.back() == 8.0);
  AxesSpec bad{{0, 1, 3}, {1e-3, 1, 4, false}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

}
