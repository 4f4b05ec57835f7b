#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decaylab/analysis.hpp"

namespace decaylab {

// Dependency-free diagnostic plot: norm history against time with the fitted
// line and the predicted reference slope. Log-log for power-law fits,
// log-linear for exponential ones.
std::string render_decay_svg(const std::vector<double>& t, const std::vector<double>& v,
                             const std::optional<DecayReport>& report, const std::string& title);

} // namespace decaylab
