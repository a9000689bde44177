#include "fracspec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <vector>

namespace fracspec {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line_no) {
  s = trim(s);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end)
    throw Error(ErrorCode::MalformedCSV, "line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  return v;
}

// Reads header + rows of exactly `cols` numeric fields.
std::vector<std::vector<double>> read_table(std::istream& in, std::string_view header, std::size_t cols) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (!have_header) {
      if (t != header) throw Error(ErrorCode::MalformedCSV, "expected header '" + std::string(header) + "'");
      have_header = true;
      continue;
    }
    const auto fields = split(t);
    if (fields.size() != cols)
      throw Error(ErrorCode::MalformedCSV, "line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                                               " fields");
    std::vector<double> row(cols);
    for (std::size_t c = 0; c < cols; ++c) row[c] = parse_number(fields[c], line_no);
    rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorCode::MalformedCSV, "empty input");
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SampledSignal read_signal_csv(std::istream& in) {
  const auto rows = read_table(in, "t,re,im", 3);
  if (rows.size() < 2) throw Error(ErrorCode::MalformedCSV, "signal needs at least 2 rows");
  SampledSignal s;
  s.t0 = rows.front()[0];
  const double span = rows.back()[0] - s.t0;
  if (!(span > 0.0)) throw Error(ErrorCode::NonUniformGrid, "t must increase");
  s.dt = span / static_cast<double>(rows.size() - 1);
  s.samples.reserve(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (std::abs(rows[j][0] - s.t(j)) > 1e-9 * span)
      throw Error(ErrorCode::NonUniformGrid, "sample " + std::to_string(j) + " is off the uniform grid");
    s.samples.emplace_back(rows[j][1], rows[j][2]);
  }
  s.validate();
  return s;
}

SampledSignal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedCSV, "cannot open '" + path.string() + "'");
  return read_signal_csv(in);
}

void write_signal_csv(const SampledSignal& s, std::ostream& out) {
  out << "t,re,im\n";
  for (std::size_t j = 0; j < s.size(); ++j)
    out << format_double(s.t(j)) << ',' << format_double(s.samples[j].real()) << ','
        << format_double(s.samples[j].imag()) << '\n';
}

SampledSignal synthetic_signal(const nlohmann::json& spec) {
  try {
    const auto& g = spec.at("gaussian");
    const double width = g.at("width").get<double>();
    const double mod = g.value("modulation", 0.0);
    const double chirp = g.value("chirp", 0.0);
    const auto n = spec.at("N").get<std::size_t>();
    const double T = spec.at("T").get<double>();
    if (!(width > 0.0) || n < 2 || !(T > 0.0))
      throw Error(ErrorCode::InvalidArgument, "synthetic signal needs width > 0, N >= 2, T > 0");
    return sample_uniform(
        [&](double t) { return std::exp(-t * t / (2.0 * width * width)) * std::polar(1.0, mod * t + 0.5 * chirp * t * t); },
        T, n);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("synthetic signal spec: ") + e.what());
  }
}

void write_grid_csv(const TFGrid& g, std::ostream& out) {
  out << "x,xi,re,im\n";
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    const std::string xs = format_double(g.x_axis[ix]);
    for (std::size_t ik = 0; ik < g.nxi(); ++ik) {
      const auto& v = g.at(ix, ik);
      out << xs << ',' << format_double(g.xi_axis[ik]) << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << '\n';
    }
  }
}

TFGrid read_grid_csv(std::istream& in) {
  const auto rows = read_table(in, "x,xi,re,im", 4);
  if (rows.empty()) throw Error(ErrorCode::MalformedCSV, "grid has no rows");
  std::vector<double> xi;
  for (const auto& r : rows) {
    if (r[0] != rows.front()[0]) break;
    xi.push_back(r[1]);
  }
  if (rows.size() % xi.size() != 0) throw Error(ErrorCode::MalformedCSV, "grid rows do not form a rectangle");
  std::vector<double> x;
  for (std::size_t i = 0; i < rows.size(); i += xi.size()) x.push_back(rows[i][0]);
  TFGrid g(std::move(x), std::move(xi), {});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t ix = i / g.nxi();
    const std::size_t ik = i % g.nxi();
    if (rows[i][0] != g.x_axis[ix] || rows[i][1] != g.xi_axis[ik])
      throw Error(ErrorCode::MalformedCSV, "grid row " + std::to_string(i + 2) + " breaks the x-then-xi ordering");
    g.at(ix, ik) = {rows[i][2], rows[i][3]};
  }
  return g;
}

nlohmann::json grid_meta_json(const TFGrid& g) {
  nlohmann::json axes;
  axes["x"] = g.x_axis;
  axes["xi"] = g.xi_axis;
  return {{"transform", g.meta.transform}, {"alpha", g.meta.alpha}, {"window", g.meta.window}, {"axes", axes}};
}

}  // namespace fracspec
