#include "ilim/io.hpp"

#include <cmath>
#include <sstream>

#include "ilim/error.hpp"

namespace ilim {

std::string format_number(double v) {
  for (int prec = 1; prec <= 17; ++prec) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    if (std::stod(os.str()) == v) return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

nlohmann::json to_json(const FoldingPattern& fp) {
  auto arr = nlohmann::json::array();
  for (const auto& l : fp.entries) {
    if (l.is_infinite()) {
      arr.push_back("inf");
    } else {
      arr.push_back(l.value());
    }
  }
  return arr;
}

FoldingPattern folding_pattern_from_json(const nlohmann::json& j) {
  FoldingPattern fp;
  for (const auto& e : j) {
    if (e.is_string() && e.get<std::string>() == "inf") {
      fp.entries.push_back(Level::infinite());
    } else if (e.is_number_integer() && e.get<int>() >= 0) {
      fp.entries.push_back(Level::finite(e.get<int>()));
    } else {
      throw PreconditionError("bad folding-pattern entry " + e.dump());
    }
  }
  return fp;
}

nlohmann::json to_json(const IntervalChain& chain) {
  return {{"slope", chain.slope()}, {"p", chain.p()}, {"breakpoints", chain.breakpoints()}, {"mesh", chain.mesh()}};
}

IntervalChain chain_from_json(const nlohmann::json& j) {
  try {
    return IntervalChain(j.at("slope").get<double>(), j.at("p").get<int>(), j.at("breakpoints").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed chain JSON: ") + e.what());
  }
}

nlohmann::json tower_json(const RenormTower& tower, const std::vector<double>& spectrum, double h_max) {
  return {{"periods", tower.periods}, {"entropies", tower.entropies}, {"spectrum", spectrum}, {"h_max", h_max}};
}

RenormTower tower_from_json(const nlohmann::json& j) {
  try {
    return make_tower(j.at("periods").get<std::vector<int>>(), j.at("entropies").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed tower JSON: ") + e.what());
  }
}

std::string separation_csv(const std::vector<SeparationCurve>& curves) {
  std::ostringstream os;
  os << "eps,n,count,log_count\n";
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < c.counts.size(); ++k) {
      os << format_number(c.eps) << ',' << k + 1 << ',' << c.counts[k] << ','
         << format_number(std::log(static_cast<double>(c.counts[k]))) << '\n';
    }
  }
  return os.str();
}

}  // namespace ilim
