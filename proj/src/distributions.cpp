#include "fracspec/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fracspec/io.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec {

namespace {

// Central-difference weights at offsets -4..4 (eighth order for k <= 2, sixth for k = 3, 4).
constexpr std::array<std::array<double, 9>, 5> kDiffWeights{{
    {0, 0, 0, 0, 1, 0, 0, 0, 0},
    {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280},
    {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560},
    {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0, -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240},
    {7.0 / 240, -2.0 / 5, 169.0 / 60, -122.0 / 15, 91.0 / 8, -122.0 / 15, 169.0 / 60, -2.0 / 5, 7.0 / 240},
}};

template <class Fn>
cplx derivative(Fn&& fn, double x, int k, double h) {
  if (k == 0) return fn(x);
  const auto& w = kDiffWeights[static_cast<std::size_t>(k)];
  cplx acc{};
  for (int o = -4; o <= 4; ++o)
    if (w[static_cast<std::size_t>(o + 4)] != 0.0) acc += w[static_cast<std::size_t>(o + 4)] * fn(x + o * h);
  return acc / std::pow(h, k);
}

cplx raw_density(const Distribution& f, double x) {
  switch (f.kind) {
    case Distribution::Kind::Homogeneous: {
      const double a = std::abs(x);
      if (a == 0.0) return 0.0;
      switch (f.pattern) {
        case HomogeneousPattern::Abs: return std::pow(a, f.degree);
        case HomogeneousPattern::Plus: return x > 0.0 ? std::pow(a, f.degree) : 0.0;
        case HomogeneousPattern::Minus: return x < 0.0 ? std::pow(a, f.degree) : 0.0;
      }
      return 0.0;
    }
    case Distribution::Kind::SampledDensity: return f.density.interpolate(x);
    case Distribution::Kind::ClosedForm: return f.closed(x);
    case Distribution::Kind::DeltaComb: break;
  }
  throw Error(ErrorCode::InvalidArgument, "delta combs have no pointwise density");
}

PairingResult pair_delta(const Distribution& f, const TestFunction& phi, double eps) {
  // <delta^(k)(eps x - a), psi(x)> = eps^{-1-k} (-1)^k psi^(k)(a / eps), psi(x) = e^{i b eps x} phi(x)
  const double b = f.modulation;
  auto psi = [&](double x) { return b == 0.0 ? phi(x) : std::polar(1.0, b * eps * x) * phi(x); };
  const double h = 0.05 * phi.width;
  cplx acc{};
  for (const auto& term : f.terms) {
    if (term.order < 0 || term.order > 4) throw Error(ErrorCode::InvalidArgument, "delta derivative order must be 0..4");
    const cplx d = derivative(psi, term.location / eps, term.order, h);
    const double sign = (term.order % 2) ? -1.0 : 1.0;
    acc += term.weight * sign * std::pow(eps, -1.0 - term.order) * d;
  }
  return {f.scale * acc, 0.0};
}

PairingResult pair_sampled(const Distribution& f, const TestFunction& phi, double eps) {
  const auto& s = f.density;
  const auto w = trapezoid_weights(s.size(), s.dt);
  cplx full{};
  cplx half{};
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double t = s.t(j);
    const cplx term = f.density_at(t) * phi(t / eps);
    full += w[j] * term;
    if (j % 2 == 0) {
      const bool edge = j == 0 || j + 2 >= s.size();
      half += (edge ? s.dt : 2.0 * s.dt) * term;
    }
  }
  return {full / eps, std::abs(full - half) / eps};
}

PairingResult pair_function(const Distribution& f, const TestFunction& phi, double eps) {
  const double w = phi.width;
  const double radius = 14.0 * w;
  const double lo = phi.center - radius;
  const double hi = phi.center + radius;
  std::vector<double> breaks;
  const double panel = phi.panel > 0.0 ? std::min(phi.panel, w) : w;
  const double count = std::ceil(2.0 * radius / panel);
  if (count > 20000.0)
    throw Error(ErrorCode::PairingDiverged, "test function " + phi.name + " oscillates too fast to resolve");
  const auto panels = static_cast<int>(count);
  for (int i = 0; i <= panels; ++i) breaks.push_back(lo + (hi - lo) * i / panels);
  for (const double s : f.singular_points) {
    const double x = s / eps;
    if (x > lo && x < hi) breaks.push_back(x);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto integrand = [&](double x) { return f.density_at(eps * x) * phi(x); };
  PairingResult out;
  double magnitude = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto r = integrate_tanh_sinh(integrand, breaks[i], breaks[i + 1], 1e-11);
    out.value += r.value;
    out.error += r.error;
    magnitude += std::abs(r.value);
  }
  const double tail = w * std::max(std::abs(integrand(lo)), std::abs(integrand(hi)));
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()) ||
      (tail > 1e-9 * std::max(magnitude, 1e-300) && tail > 1e-300))
    throw Error(ErrorCode::PairingDiverged, "pairing of " + f.describe() + " with " + phi.name +
                                                " has tail estimate " + format_double(tail));
  out.error += tail;
  return out;
}

cplx gaussian(double x, double center, double width) {
  const double u = (x - center) / width;
  return std::exp(-0.5 * u * u);
}

}  // namespace

TestFunction test_function(const Window& w) { return {w.eval_fn, 0.0, w.decay_scale, w.name}; }

std::vector<TestFunction> test_battery(double c2) {
  std::vector<TestFunction> out;
  for (const double width : {0.5, 1.0, 2.0})
    out.push_back({[width](double x) { return gaussian(x, 0.0, width); }, 0.0, width, "gauss:" + format_double(width)});
  out.push_back(test_function(hermite1()));
  out.push_back(test_function(mexican_hat()));
  for (const double a : {1.0, c2})
    out.push_back({[a](double x) { return std::polar(1.0, a * x) * gaussian(x, 0.0, 1.0); }, 0.0, 1.0,
                   "modulated:gauss:" + format_double(a)});
  out.push_back({[](double x) { return gaussian(x, 1.0, 1.0); }, 1.0, 1.0, "gauss@1"});
  return out;
}

double SlowlyVarying::operator()(double eps) const {
  if (!(eps > 0.0) || eps > eps_max_)
    throw Error(ErrorCode::InvalidArgument, name() + " is defined on (0, " + format_double(eps_max_) + "]");
  switch (model_) {
    case Model::One: return 1.0;
    case Model::LogPower: return std::pow(std::abs(std::log(eps)), power_);
    case Model::IterLog: return std::log(std::abs(std::log(eps)));
  }
  return 1.0;
}

std::string SlowlyVarying::name() const {
  switch (model_) {
    case Model::One: return "one";
    case Model::LogPower: return "log_power:" + format_double(power_);
    case Model::IterLog: return "iter_log";
  }
  return "?";
}

ScaleSequence ScaleSequence::powers_of_two(int kmin, int kmax) {
  ScaleSequence s;
  for (int k = kmin; k <= kmax; ++k) s.eps.push_back(std::ldexp(1.0, -k));
  s.validate();
  return s;
}

void ScaleSequence::validate() const {
  if (eps.empty()) throw Error(ErrorCode::DegenerateSequence, "empty scale sequence");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale sequence entries must be positive");
    if (eps[i] < std::ldexp(1.0, -20)) throw Error(ErrorCode::InvalidArgument, "scale sequence reaches below 2^-20");
    if (i > 0 && !(eps[i] < eps[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "scale sequence must be strictly decreasing");
  }
}

cplx Distribution::density_at(double x) const {
  cplx v = scale * raw_density(*this, x);
  if (modulation != 0.0) v *= std::polar(1.0, modulation * x);
  return v;
}

bool Distribution::is_zero() const noexcept {
  if (scale == cplx{}) return true;
  if (kind == Kind::DeltaComb)
    return std::all_of(terms.begin(), terms.end(), [](const DeltaTerm& t) { return t.weight == cplx{}; });
  if (kind == Kind::SampledDensity)
    return std::all_of(density.samples.begin(), density.samples.end(), [](const cplx& z) { return z == cplx{}; });
  return false;
}

std::string Distribution::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::DeltaComb:
      if (terms.empty()) os << "0";
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        os << "(" << terms[i].weight.real() << (terms[i].weight.imag() < 0 ? "" : "+") << terms[i].weight.imag()
           << "i)*delta";
        if (terms[i].order) os << "^(" << terms[i].order << ")";
        os << "(x-" << terms[i].location << ")";
      }
      break;
    case Kind::Homogeneous:
      os << (pattern == HomogeneousPattern::Abs ? "|x|" : pattern == HomogeneousPattern::Plus ? "x_+" : "x_-") << "^"
         << degree;
      break;
    case Kind::SampledDensity: os << "sampled(" << density.size() << " pts)"; break;
    case Kind::ClosedForm: os << expr; break;
  }
  std::string s = os.str();
  if (scale != cplx{1.0, 0.0}) s = "(" + format_double(scale.real()) + "," + format_double(scale.imag()) + ")*" + s;
  if (modulation != 0.0) s = "M_" + format_double(modulation) + "[" + s + "]";
  return s;
}

Distribution delta(double location, int order, cplx weight) { return delta_comb({{location, order, weight}}); }

Distribution delta_comb(std::vector<DeltaTerm> terms) {
  for (const auto& t : terms)
    if (t.order < 0 || t.order > 4) throw Error(ErrorCode::InvalidArgument, "delta derivative order must be 0..4");
  Distribution d;
  d.kind = Distribution::Kind::DeltaComb;
  d.terms = std::move(terms);
  d.growth_order = 0;
  return d;
}

Distribution zero_distribution() { return delta_comb({}); }

Distribution homogeneous(HomogeneousPattern pattern, double m) {
  if (!(m > -1.0) || !std::isfinite(m))
    throw Error(ErrorCode::InvalidExponent, "homogeneous degree must exceed -1, got " + format_double(m));
  Distribution d;
  d.kind = Distribution::Kind::Homogeneous;
  d.pattern = pattern;
  d.degree = m;
  d.singular_points = {0.0};
  d.growth_order = static_cast<int>(std::ceil(std::max(m, 0.0)));
  return d;
}

Distribution sampled_density(SampledSignal s) {
  s.validate();
  Distribution d;
  d.kind = Distribution::Kind::SampledDensity;
  d.density = std::move(s);
  return d;
}

Distribution abs_pow_log(double m) {
  if (!(m > -1.0)) throw Error(ErrorCode::InvalidExponent, "abs_pow_log needs m > -1");
  Distribution d = closed_form(
      "|x|^" + format_double(m) + " ln|x|",
      [m](double x) {
        const double a = std::abs(x);
        return a == 0.0 ? cplx{} : cplx(std::pow(a, m) * std::log(a), 0.0);
      },
      {0.0}, static_cast<int>(std::ceil(std::max(m, 0.0))) + 1);
  d.degree = m;
  d.expr = "abs_pow_log";
  return d;
}

Distribution closed_form(std::string name, std::function<cplx(double)> fn, std::vector<double> singular_points,
                         int growth_order) {
  Distribution d;
  d.kind = Distribution::Kind::ClosedForm;
  d.expr = std::move(name);
  d.closed = std::move(fn);
  d.singular_points = std::move(singular_points);
  d.growth_order = growth_order;
  return d;
}

Distribution modulate(const Distribution& f, double a) {
  Distribution d = f;
  d.modulation += a;
  return d;
}

Distribution scale(const Distribution& f, cplx lambda) {
  Distribution d = f;
  d.scale *= lambda;
  return d;
}

Distribution distribution_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    Distribution d;
    if (kind == "delta") {
      std::vector<DeltaTerm> terms;
      if (!j.contains("terms")) terms.push_back({});
      for (const auto& t : j.value("terms", nlohmann::json::array())) {
        if (!t.is_array() || t.size() < 3 || t.size() > 4)
          throw Error(ErrorCode::InvalidArgument, "delta term must be [location, order, re(, im)]");
        terms.push_back({t[0].get<double>(), t[1].get<int>(), {t[2].get<double>(), t.size() == 4 ? t[3].get<double>() : 0.0}});
      }
      d = delta_comb(std::move(terms));
    } else if (kind == "zero") {
      d = zero_distribution();
    } else if (kind == "homogeneous") {
      const std::string p = j.value("pattern", std::string("abs"));
      HomogeneousPattern pattern;
      if (p == "abs") pattern = HomogeneousPattern::Abs;
      else if (p == "plus") pattern = HomogeneousPattern::Plus;
      else if (p == "minus") pattern = HomogeneousPattern::Minus;
      else throw Error(ErrorCode::InvalidArgument, "unknown homogeneous pattern '" + p + "'");
      d = homogeneous(pattern, j.at("degree").get<double>());
    } else if (kind == "sampled") {
      std::filesystem::path file = j.at("file").get<std::string>();
      if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
      d = sampled_density(read_signal_csv(file));
    } else if (kind == "closed") {
      const std::string expr = j.at("expr").get<std::string>();
      if (expr != "abs_pow_log") throw Error(ErrorCode::InvalidArgument, "unknown closed form '" + expr + "'");
      d = abs_pow_log(j.at("degree").get<double>());
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown distribution kind '" + kind + "'");
    }
    if (j.contains("scale")) {
      const auto& s = j["scale"];
      d = scale(d, s.is_array() ? cplx(s.at(0).get<double>(), s.at(1).get<double>()) : cplx(s.get<double>(), 0.0));
    }
    if (j.contains("modulation")) d = modulate(d, j["modulation"].get<double>());
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("distribution spec: ") + e.what());
  }
}

PairingResult pair_dilated(const Distribution& f, const TestFunction& phi, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::NonPositiveScale, "dilation needs eps > 0");
  if (!(phi.width > 0.0)) throw Error(ErrorCode::InvalidArgument, "test function width must be positive");
  switch (f.kind) {
    case Distribution::Kind::DeltaComb: return pair_delta(f, phi, eps);
    case Distribution::Kind::SampledDensity: return pair_sampled(f, phi, eps);
    default: return pair_function(f, phi, eps);
  }
}

cplx pair(const Distribution& f, const TestFunction& phi) { return pair_dilated(f, phi, 1.0).value; }

cplx scaled_pair(const Distribution& f, const TestFunction& phi, double eps, double m, const SlowlyVarying& L) {
  return pair_dilated(f, phi, eps).value / (std::pow(eps, m) * L(eps));
}

DegreeEstimate fit_log_slope(std::span<const double> x, std::span<const double> y, std::size_t tail) {
  std::vector<double> lx;
  std::vector<double> ly;
  const std::size_t start = x.size() > tail ? x.size() - tail : 0;
  for (std::size_t i = start; i < x.size(); ++i) {
    if (!(y[i] > 1e-300) || !(x[i] > 0.0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 3) throw Error(ErrorCode::DegenerateSequence, "fewer than 3 usable points for the slope fit");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  double residual = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i)
    residual = std::max(residual, std::abs(ly[i] - (my + slope * (lx[i] - mx))));
  return {slope, residual};
}

DegreeEstimate quasi_degree_estimate(const Distribution& f, const TestFunction& phi, const ScaleSequence& seq) {
  seq.validate();
  std::vector<double> mags;
  for (const double eps : seq.eps) mags.push_back(std::abs(pair_dilated(f, phi, eps).value));
  return fit_log_slope(seq.eps, mags);
}

bool cauchy_converged(std::span<const cplx> v) {
  if (v.size() < 4) return false;
  for (std::size_t k = v.size() - 4; k + 1 < v.size(); ++k)
    if (!(std::abs(v[k + 1] - v[k]) < 1e-4 * (1.0 + std::abs(v[k])))) return false;
  return true;
}

ChirpFactorReport chirp_factor_check(const Distribution& f, const TestFunction& phi, double c, double m,
                                     const SlowlyVarying& L, const ScaleSequence& seq) {
  seq.validate();
  ChirpFactorReport rep;
  for (const double eps : seq.eps) {
    rep.plain.push_back(scaled_pair(f, phi, eps, m, L));
    TestFunction chirped = phi;
    chirped.eval = [phi, c, eps](double x) { return std::polar(1.0, 0.5 * c * eps * eps * x * x) * phi(x); };
    chirped.name = phi.name + "*chirp";
    rep.chirped.push_back(scaled_pair(f, chirped, eps, m, L));
  }
  rep.plain_converged = cauchy_converged(rep.plain);
  rep.chirped_converged = cauchy_converged(rep.chirped);
  rep.limit_gap = std::abs(rep.plain.back() - rep.chirped.back());
  for (const auto& probe : test_battery(c))
    for (const double eps : seq.eps)
      rep.boundedness_proxy = std::max(rep.boundedness_proxy, std::abs(scaled_pair(f, probe, eps, m, L)));
  rep.note = "boundedness in S'(R) is approximated by the supremum of scaled pairings over the test battery";
  return rep;
}

std::optional<Quasiasymptotics> known_quasiasymptotics(const Distribution& f) {
  switch (f.kind) {
    case Distribution::Kind::DeltaComb: {
      if (f.terms.size() != 1 || f.terms[0].location != 0.0) return std::nullopt;
      if (f.modulation != 0.0 && f.terms[0].order != 0) return std::nullopt;
      Distribution u = f;
      u.modulation = 0.0;
      return Quasiasymptotics{-1.0 - f.terms[0].order, SlowlyVarying::one(), u};
    }
    case Distribution::Kind::Homogeneous: {
      Distribution u = f;
      u.modulation = 0.0;
      return Quasiasymptotics{f.degree, SlowlyVarying::one(), u};
    }
    case Distribution::Kind::ClosedForm: {
      if (f.expr != "abs_pow_log") return std::nullopt;
      // |eps x|^m ln|eps x| = eps^m |ln eps| (-|x|^m + |x|^m ln|x| / |ln eps|)
      Distribution u = scale(homogeneous(HomogeneousPattern::Abs, f.degree), -f.scale);
      return Quasiasymptotics{f.degree, SlowlyVarying::log_power(1.0), u};
    }
    case Distribution::Kind::SampledDensity: break;
  }
  return std::nullopt;
}

}  // namespace fracspec
