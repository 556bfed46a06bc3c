#pragma once

// JSON and CSV serialization of chains, towers, spectra and separation curves.

#include <string>
#include <vector>

#include <json.hpp>

#include "ilim/bowen.hpp"
#include "ilim/chains.hpp"
#include "ilim/inverse_limit.hpp"
#include "ilim/renorm.hpp"

namespace ilim {

/// Shortest decimal that round-trips.
std::string format_number(double v);

/// Levels as numbers, infinity as the string "inf".
nlohmann::json to_json(const FoldingPattern& fp);
FoldingPattern folding_pattern_from_json(const nlohmann::json& j);

/// {slope, p, breakpoints[], mesh}
nlohmann::json to_json(const IntervalChain& chain);
IntervalChain chain_from_json(const nlohmann::json& j);

/// {periods[], entropies[], spectrum[], h_max}
nlohmann::json tower_json(const RenormTower& tower, const std::vector<double>& spectrum, double h_max);
RenormTower tower_from_json(const nlohmann::json& j);

/// Header eps,n,count,log_count.
std::string separation_csv(const std::vector<SeparationCurve>& curves);

}  // namespace ilim
