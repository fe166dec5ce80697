#pragma once
// Mixture specification documents (JSON):
//
//   {"family": "gaussian",
//    "weights": [0.5, 0.5],
//    "components": [{"mean": [0, 0], "cov": [[1, 0], [0, 1]]}, ...]}
//
//   {"family": "uniform",
//    "weights": [1],
//    "components": [{"lower": [0, 0], "upper": [1, 1]}]}
//
// Covariances are full matrices given row by row. Noise files for the
// mutual-information command hold {"cov": [[...], ...]}.

#include "mixent/mixture.hpp"
#include "mixent/mutual_info.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace mixent {

MixtureModel parse_mixture_spec(std::string_view text);
MixtureModel load_mixture_spec(const std::filesystem::path& path);
std::string mixture_spec_json(const MixtureModel& mix);

AwgnChannel parse_noise_spec(std::string_view text);
AwgnChannel load_noise_spec(const std::filesystem::path& path);

} // namespace mixent
