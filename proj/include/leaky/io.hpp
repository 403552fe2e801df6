#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "leaky/band_assembly.hpp"
#include "leaky/curvature.hpp"
#include "leaky/curve_geometry.hpp"
#include "leaky/fiber2d.hpp"
#include "leaky/gap_analysis.hpp"
#include "leaky/hill_floquet.hpp"
#include "leaky/straight_line.hpp"
#include "leaky/transverse_delta.hpp"

namespace leaky::io {

using json = nlohmann::ordered_json;

/// Round-trip decimal form, 17 significant digits ("inf", "-inf", "nan" otherwise).
std::string format_number(double v);

/// Finite values as numbers, non-finite ones as the strings "inf", "-inf", "nan".
json number(double v);

/// Writes `content` to `path` through a temporary sibling and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Profile documents:
///   {"kind":"fourier","L":1.0,"sin":[0.3],"cos":[]}   sin[k-1] and cos[k] multiply
///     sin/cos(2 pi k s / L); cos[0], the mean, must be 0.
///   {"kind":"preset","name":"sech","c":0.8}           remaining numeric fields are parameters.
/// Both accept an optional "shift". Unknown fields raise ConfigError.
CurvatureProfile profile_from_json(const json& doc);
json profile_to_json(const CurvatureProfile& profile);

json to_json(const AssumptionReport& report);
json to_json(const DecayingProfileReport& report);
json to_json(const GapReport& report);
json to_json(const FiberSpectrum& spectrum);
json to_json(const GapPersistenceRow& row);
json to_json(const BandStructureResult& result);
json to_json(const LineSpectrum& spectrum);

std::string curve_csv(std::span<const CurveSample> samples);
/// theta,mu_1,...,mu_J with the exact theta = pi edge row merged in order.
std::string band_table_csv(const FloquetBandTable& table);
std::string lambda_table_csv(const BandStructureResult& result);
std::string transverse_csv(const std::vector<std::pair<TransverseSpec, TransverseMode>>& rows);
std::string line_spectrum_csv(const LineSpectrum& spectrum);
std::string line_asymptotics_csv(const std::vector<LineAsymptoticRow>& rows);

}  // namespace leaky::io
