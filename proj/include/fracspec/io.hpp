#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "fracspec/fraccore.hpp"
#include "fracspec/grid.hpp"

namespace fracspec {

/// %.17g: enough digits for exact double round trips.
std::string format_double(double v);

/// CSV with header `t,re,im` on a uniform t grid (relative tolerance 1e-9 of the span).
SampledSignal read_signal_csv(std::istream& in);
SampledSignal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const SampledSignal& s, std::ostream& out);

/// {"gaussian": {"width": w, "modulation": a, "chirp": c}, "N": n, "T": T}; modulation and chirp optional.
/// Samples exp(-t^2/(2w^2)) * exp(i a t) * exp(i c t^2/2) on [-T, T].
SampledSignal synthetic_signal(const nlohmann::json& spec);

/// CSV with header `x,xi,re,im`, rows ordered by x then xi.
void write_grid_csv(const TFGrid& g, std::ostream& out);
TFGrid read_grid_csv(std::istream& in);

nlohmann::json grid_meta_json(const TFGrid& g);

}  // namespace fracspec
