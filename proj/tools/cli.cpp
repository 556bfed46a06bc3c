#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "ilim/bowen.hpp"
#include "ilim/chains.hpp"
#include "ilim/error.hpp"
#include "ilim/inverse_limit.hpp"
#include "ilim/io.hpp"
#include "ilim/lap_entropy.hpp"
#include "ilim/maps.hpp"
#include "ilim/renorm.hpp"

namespace ilim::cli {

namespace {

using nlohmann::json;

struct Output {
  json inputs = json::object();
  json outputs = json::object();
  json tolerances = json::object();
  std::string csv;
  std::string plain;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw PreconditionError(std::string("missing required option ") + flag);
  return *v;
}

std::string join(const std::vector<double>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_number(v[i]);
  }
  return out;
}

LapOptions lap_opts(const RunConfig& c) {
  LapOptions o;
  o.max_nodes = c.max_nodes;
  if (c.tol) o.tol = *c.tol;
  return o;
}

RenormTower user_tower(const RunConfig& c) {
  if (c.periods.empty()) throw PreconditionError("missing required option --periods");
  if (c.entropies.empty()) throw PreconditionError("missing required option --entropies");
  // Hypothetical towers are allowed here; detected towers are validated in renorm-detect.
  RenormTower t = make_tower(c.periods, c.entropies);
  check_tower_structure(t);
  return t;
}

Output cmd_entropy_lap(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int n_max = c.n_max.value_or(24);
  const EntropyMethod method = parse_entropy_method(c.method);
  const LapOptions lo = lap_opts(c);
  const TentMap map(s, lo.tol);
  if (n_max < 4) throw PreconditionError("--n-max must be >= 4");
  const LapTable table = lap_table(map, n_max, lo);
  const EntropyEstimate e = entropy_from_laps(table, method, 1);
  o.inputs = {{"slope", s}, {"n_max", n_max}, {"method", to_string(method)}};
  o.outputs = {{"value", e.value},       {"method", to_string(e.method)}, {"n_used", e.n_used},
               {"residual", e.residual}, {"log_slope", std::log(s)},       {"laps", table.counts()}};
  o.tolerances = {{"dedup", lo.tol}, {"max_nodes", lo.max_nodes}};
  std::ostringstream csv;
  csv << "n,lap\n";
  for (int n = 1; n <= table.n_max(); ++n) csv << n << ',' << table.lap(n) << '\n';
  o.csv = csv.str();
  o.plain = format_number(e.value) + "\n";
  return o;
}

Output cmd_lap_count(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int n = need(c.n, "--n");
  const LapOptions lo = lap_opts(c);
  const std::uint64_t laps = lap_count(TentMap(s, lo.tol), n, lo);
  o.inputs = {{"slope", s}, {"n", n}};
  o.outputs = {{"laps", laps}};
  o.tolerances = {{"dedup", lo.tol}, {"max_nodes", lo.max_nodes}};
  o.csv = "n,lap\n" + std::to_string(n) + "," + std::to_string(laps) + "\n";
  o.plain = std::to_string(laps) + "\n";
  return o;
}

Output cmd_deep_branches(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int k = need(c.k, "--k");
  const double delta = need(c.delta, "--delta");
  const LapOptions lo = lap_opts(c);
  const std::uint64_t count = deep_branch_count(TentMap(s, lo.tol), k, delta, lo);
  o.inputs = {{"slope", s}, {"k", k}, {"delta", delta}};
  o.outputs = {{"count", count}};
  o.tolerances = {{"dedup", lo.tol}, {"max_nodes", lo.max_nodes}};
  o.csv = "k,delta,count\n" + std::to_string(k) + "," + format_number(delta) + "," + std::to_string(count) + "\n";
  o.plain = std::to_string(count) + "\n";
  return o;
}

Output cmd_entropy_bowen(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int R = c.R.value_or(1);
  const int depth = c.depth.value_or(12);
  const int n_max = c.n_max.value_or(10);
  BowenOptions bo;
  if (!c.eps_list.empty()) bo.eps_list = c.eps_list;
  if (c.seeds) bo.seeds = static_cast<std::size_t>(*c.seeds);
  if (c.per_branch_cap) bo.per_branch_cap = static_cast<std::size_t>(*c.per_branch_cap);
  if (depth < 0) throw PreconditionError("--depth must be >= 0");
  if (c.seeds && *c.seeds < 1) throw PreconditionError("--seeds must be >= 1");
  if (c.per_branch_cap && *c.per_branch_cap < 1) throw PreconditionError("--per-branch-cap must be >= 1");
  bo.lap = lap_opts(c);
  const BowenEstimate e = entropy_bowen(s, R, static_cast<std::size_t>(depth), n_max, bo);
  o.inputs = {{"slope", s},
              {"R", R},
              {"depth", depth},
              {"n_max", n_max},
              {"eps", bo.eps_list},
              {"seeds", bo.seeds},
              {"per_branch_cap", bo.per_branch_cap}};
  json curves = json::array();
  for (const auto& cv : e.curves) {
    curves.push_back({{"eps", cv.eps},
                      {"counts", cv.counts},
                      {"estimate", cv.estimate},
                      {"window", {cv.window_lo, cv.window_hi}},
                      {"rms_residual", cv.rms_residual}});
  }
  o.outputs = {{"value", e.value},
               {"eps", e.eps},
               {"cloud_size", e.cloud_size},
               {"curves", curves},
               {"warnings", e.warnings},
               {"target", std::abs(R) * std::log(s)}};
  o.tolerances = {{"max_rms", bo.max_rms}, {"dedup_distance", std::ldexp(1.0, -depth)}, {"saturation", "cloud/2"}};
  o.csv = separation_csv(e.curves);
  o.plain = format_number(e.value) + "\n";
  return o;
}

Output cmd_slope_of_quadratic(const RunConfig& c) {
  Output o;
  const double a = need(c.a, "--a");
  const double tol = c.tol.value_or(0.01);
  AdaptiveLapOptions ao;
  ao.lap.max_nodes = c.max_nodes;
  const SlopeEstimate e = tent_slope_of_quadratic(a, tol, ao);
  o.inputs = {{"a", a}};
  o.outputs = {{"slope", e.slope},
               {"zero_entropy", e.zero_entropy},
               {"entropy", e.entropy.value},
               {"n_used", e.entropy.n_used},
               {"stride", e.entropy.stride}};
  o.tolerances = {{"zero_entropy_tol", tol}, {"node_budget", ao.node_budget}, {"max_nodes", ao.lap.max_nodes}};
  o.csv = "a,slope,entropy,zero_entropy\n" + format_number(a) + "," + format_number(e.slope) + "," +
          format_number(e.entropy.value) + "," + (e.zero_entropy ? "true" : "false") + "\n";
  o.plain = format_number(e.slope) + "\n";
  return o;
}

Output cmd_folding_pattern(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int count = c.count.value_or(7);
  if (count < 1) throw PreconditionError("--count must be >= 1");
  const LapOptions lo = lap_opts(c);
  const FoldingPattern fp = folding_pattern_prefix(s, static_cast<std::size_t>(count), lo);
  o.inputs = {{"slope", s}, {"count", count}};
  o.outputs = {{"pattern", to_json(fp)}, {"text", fp.str("inf")}};
  o.tolerances = {{"dedup", lo.tol}};
  std::ostringstream csv;
  csv << "index,level\n";
  for (std::size_t i = 0; i < fp.size(); ++i) csv << i << ',' << fp.entries[i].str() << '\n';
  o.csv = csv.str();
  o.plain = fp.str() + "\n";
  return o;
}

Output cmd_salient(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int n = need(c.n, "--n");
  const LapOptions lo = lap_opts(c);
  const std::vector<double> pos = salient_positions(s, n, lo);
  std::vector<int> levels;
  for (int i = 1; i <= n; ++i) levels.push_back(i);
  o.inputs = {{"slope", s}, {"n", n}};
  o.outputs = {{"positions", pos}, {"levels", levels}, {"pattern", to_json(arc_to_salient(s, n, lo))}};
  o.tolerances = {{"dedup", lo.tol}};
  std::ostringstream csv, plain;
  csv << "index,position,level\n";
  for (int i = 1; i <= n; ++i) {
    csv << i << ',' << format_number(pos[static_cast<std::size_t>(i - 1)]) << ',' << i << '\n';
    plain << "s_" << i << " " << format_number(pos[static_cast<std::size_t>(i - 1)]) << "\n";
  }
  o.csv = csv.str();
  o.plain = plain.str();
  return o;
}

Output cmd_chain_build(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int p = need(c.p, "--p");
  const double eps = c.eps.value_or(1.0);
  const LapOptions lo = lap_opts(c);
  const IntervalChain ch = build_chain(s, p, eps, lo);
  o.inputs = {{"slope", s}, {"p", p}, {"eps", eps}};
  o.outputs = to_json(ch);
  o.outputs["link_count"] = ch.link_count();
  o.outputs["kspace_mesh_bound"] = ch.kspace_mesh_bound();
  o.outputs["chainable"] = ch.chainable();
  o.tolerances = {{"dedup", lo.tol}, {"max_nodes", lo.max_nodes}};
  std::ostringstream csv;
  csv << "link,lo,hi\n";
  for (std::size_t j = 0; j < ch.link_count(); ++j) {
    csv << j << ',' << format_number(ch.link(j).lo) << ',' << format_number(ch.link(j).hi) << '\n';
  }
  o.csv = csv.str();
  o.plain = std::to_string(ch.link_count()) + " links, mesh " + format_number(ch.mesh()) + "\n";
  return o;
}

Output cmd_chain_verify(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int p = need(c.p, "--p");
  const double eps = c.eps.value_or(1.0);
  const LapOptions lo = lap_opts(c);
  const IntervalChain coarse = build_chain(s, p, eps, lo);
  const IntervalChain fine = build_chain(s, p + 1, eps / 2, lo);
  const TentMap t(s);
  // Mandatory breakpoints: every point of T^{-i}(c) in [0, c_1], i <= p.
  bool mandatory = true;
  PreimageTree<Restricted<TentMap>> tree(Restricted<TentMap>(t, {0.0, t.critical_value()}), lo);
  for (int i = 0; i <= p; ++i) tree.grow();
  const auto& b = coarse.breakpoints();
  for (const auto& tp : tree.interior_points()) {
    auto it = std::lower_bound(b.begin(), b.end(), tp.x - 1e-12);
    if (it == b.end() || *it > tp.x + 1e-12) mandatory = false;
  }
  const bool chainable = coarse.chainable() && fine.chainable();
  const bool refine = refines(fine, coarse);
  o.inputs = {{"slope", s}, {"p", p}, {"eps", eps}};
  o.outputs = {{"chainable", chainable},
               {"mandatory_breakpoints", mandatory},
               {"refines", refine},
               {"links_coarse", coarse.link_count()},
               {"links_fine", fine.link_count()},
               {"pass", chainable && mandatory && refine}};
  o.tolerances = {{"closure", 1e-12}, {"dedup", lo.tol}};
  auto yn = [](bool v) { return std::string(v ? "true" : "false"); };
  o.csv = "chainable,mandatory_breakpoints,refines\n" + yn(chainable) + "," + yn(mandatory) + "," + yn(refine) + "\n";
  o.plain = std::string(chainable && mandatory && refine ? "pass" : "fail") + "\n";
  return o;
}

Output cmd_plevel_align(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int q = need(c.q, "--q");
  const int p = need(c.p, "--p");
  const int R = need(c.R, "--R");
  const int n = c.n.value_or(8);
  const LapOptions lo = lap_opts(c);
  const AlignmentReport r = verify_plevel_alignment(s, q, p, R, n, lo);
  o.inputs = {{"slope", s}, {"q", q}, {"p", p}, {"R", R}, {"n", n}};
  o.outputs = {{"M", r.M}, {"checked", r.checked}, {"passed", r.passed}, {"failed", r.failed}, {"all_pass", r.all_pass()}};
  o.tolerances = {{"p_level", 1e-9}, {"dedup", lo.tol}};
  o.csv = "M,checked,passed,failed\n" + std::to_string(r.M) + "," + std::to_string(r.checked) + "," +
          std::to_string(r.passed) + "," + std::to_string(r.failed) + "\n";
  o.plain = "M=" + std::to_string(r.M) + " passed " + std::to_string(r.passed) + "/" + std::to_string(r.checked) + "\n";
  return o;
}

Output cmd_separated(const RunConfig& c) {
  Output o;
  const double s = need(c.slope, "--slope");
  const int depth = c.depth.value_or(12);
  const int R = c.R.value_or(1);
  const int n = need(c.n, "--n");
  const double eps = need(c.eps, "--eps");
  if (depth < 0) throw PreconditionError("--depth must be >= 0");
  if (c.seeds.value_or(1) < 1 || c.per_branch_cap.value_or(1) < 1) {
    throw PreconditionError("--seeds and --per-branch-cap must be >= 1");
  }
  CloudOptions co;
  co.seeds = static_cast<std::size_t>(c.seeds.value_or(16384));
  co.lap = lap_opts(c);
  const std::size_t cap = static_cast<std::size_t>(c.per_branch_cap.value_or(2));
  const PointCloud cloud = sample_points(s, static_cast<std::size_t>(depth), cap, co);
  const std::size_t count = separated_count(cloud, R, n, eps);
  o.inputs = {{"slope", s}, {"depth", depth}, {"R", R}, {"n", n}, {"eps", eps}, {"seeds", co.seeds}, {"per_branch_cap", cap}};
  o.outputs = {{"count", count}, {"cloud_size", cloud.size()}};
  o.tolerances = {{"dedup_distance", std::ldexp(1.0, -depth)}};
  o.csv = "eps,n,count,log_count\n" + format_number(eps) + "," + std::to_string(n) + "," + std::to_string(count) + "," +
          format_number(std::log(static_cast<double>(count))) + "\n";
  o.plain = std::to_string(count) + "\n";
  return o;
}

Output cmd_renorm_detect(const RunConfig& c) {
  Output o;
  const double a = need(c.a, "--a");
  const int maxp = c.max_period.value_or(64);
  const double tol = c.tol.value_or(1e-9);
  RenormOptions ro;
  ro.lap.lap.max_nodes = c.max_nodes;
  const RenormTower t = detect_renormalization(a, maxp, tol, ro);
  o.inputs = {{"a", a}, {"max_period", maxp}};
  json cands = json::array();
  for (const auto& cr : t.candidates) {
    cands.push_back({{"period", cr.period},
                     {"accepted", cr.accepted},
                     {"boundary", cr.boundary},
                     {"symbolic_agrees", cr.symbolic_agrees},
                     {"reason", cr.reason}});
  }
  o.outputs = {{"periods", t.periods},
               {"entropies", t.entropies},
               {"boundaries", t.boundaries},
               {"ambiguous", t.ambiguous},
               {"candidates", cands}};
  o.tolerances = {{"tol", tol}, {"zero_entropy_tol", ro.zero_tol}};
  std::ostringstream csv, plain;
  csv << "level,period,entropy,boundary\n";
  for (std::size_t i = 0; i < t.levels(); ++i) {
    csv << i << ',' << t.periods[i] << ',' << format_number(t.entropies[i]) << ',' << format_number(t.boundaries[i])
        << '\n';
    plain << "p_" << i << "=" << t.periods[i] << " log s_" << i << "=" << format_number(t.entropies[i]) << "\n";
  }
  if (t.ambiguous) plain << "warning: numeric and symbolic criteria disagree for some period\n";
  o.csv = csv.str();
  o.plain = plain.str();
  return o;
}

// Number of decimals needed to write v exactly (capped at 17).
int decimals(double v) {
  for (int d = 0; d < 17; ++d) {
    const double scale = std::pow(10.0, d);
    if (std::abs(std::round(v * scale) / scale - v) <= 1e-15 * std::max(1.0, std::abs(v))) return d;
  }
  return 17;
}

// Entropies written with 4 to 12 decimals are read as rounded logs (short
// decimals such as 0.5 are taken as exact). Each then carries an error of up
// to 5e-(d+1); a spectrum value h is a multiple of at most h / h_min such
// errors, so two spellings of one exact value differ by at most
// (h_max / h_min) 10^-d.
double spectrum_dedup_tol(const RenormTower& t, double h_max) {
  double h_min = 0.0;
  int d = 0;
  for (double h : t.entropies) {
    if (h <= 0.0) continue;
    h_min = h_min == 0.0 ? h : std::min(h_min, h);
    d = std::max(d, decimals(h));
  }
  if (h_min == 0.0 || d < 4 || d > 12) return 1e-12;
  return std::max(1e-12, h_max / h_min * std::pow(10.0, -d));
}

Output cmd_spectrum(const RunConfig& c) {
  Output o;
  const RenormTower t = user_tower(c);
  const double h_max = need(c.h_max, "--h-max");
  const double dedup = c.tol ? *c.tol : spectrum_dedup_tol(t, h_max);
  if (!(dedup >= 0.0)) throw PreconditionError("--tol must be nonnegative");
  const std::vector<double> spec = entropy_spectrum(t, h_max, dedup);
  o.inputs = {{"periods", t.periods}, {"entropies", t.entropies}, {"h_max", h_max}};
  o.outputs = tower_json(t, spec, h_max);
  o.tolerances = {{"dedup", dedup}};
  std::ostringstream csv;
  csv << "value\n";
  for (double v : spec) csv << format_number(v) << '\n';
  o.csv = csv.str();
  o.plain = join(spec, " ") + "\n";
  return o;
}

Output cmd_spectrum_member(const RunConfig& c) {
  Output o;
  const RenormTower t = user_tower(c);
  const double value = need(c.value, "--value");
  const double tol = c.tol.value_or(1e-9);
  const Membership m = spectrum_membership(t, value, tol);
  o.inputs = {{"periods", t.periods}, {"entropies", t.entropies}, {"value", value}};
  o.outputs = {{"member", m.member}};
  if (m.witness) {
    o.outputs["witness"] = {{"j", m.witness->j}, {"i", m.witness->i}, {"N", m.witness->N}};
  } else {
    o.outputs["witness"] = nullptr;
  }
  o.tolerances = {{"tol", tol}};
  std::string w = m.witness ? std::to_string(m.witness->j) + "," + std::to_string(m.witness->i) + "," +
                                  std::to_string(m.witness->N)
                            : ",,";
  o.csv = "member,j,i,N\n" + std::string(m.member ? "true" : "false") + "," + w + "\n";
  o.plain = std::string(m.member ? "true" : "false") +
            (m.witness ? " (j=" + std::to_string(m.witness->j) + ", i=" + std::to_string(m.witness->i) +
                             ", N=" + std::to_string(m.witness->N) + ")"
                       : "") +
            "\n";
  return o;
}

Output cmd_block_entropy(const RunConfig& c) {
  Output o;
  const RenormTower t = user_tower(c);
  BlockModel bm;
  bm.R = need(c.R, "--R");
  bm.powers = c.powers;
  const double h = block_model_entropy(t, bm);
  const Membership m = spectrum_membership(t, h, 1e-9);
  std::vector<std::vector<int>> orbits;
  if (t.levels() >= 2) orbits = rotation_orbits(bm.R, t.periods[1]);
  o.inputs = {{"periods", t.periods}, {"entropies", t.entropies}, {"R", bm.R}, {"powers", bm.powers}};
  o.outputs = {{"entropy", h}, {"orbits", orbits}, {"in_spectrum", m.member}};
  o.tolerances = {{"membership", 1e-9}};
  o.csv = "entropy,in_spectrum\n" + format_number(h) + "," + (m.member ? "true" : "false") + "\n";
  o.plain = format_number(h) + "\n";
  return o;
}

const std::map<std::string, std::function<Output(const RunConfig&)>>& handlers() {
  static const std::map<std::string, std::function<Output(const RunConfig&)>> h{
      {"entropy-lap", cmd_entropy_lap},
      {"entropy-bowen", cmd_entropy_bowen},
      {"slope-of-quadratic", cmd_slope_of_quadratic},
      {"folding-pattern", cmd_folding_pattern},
      {"salient", cmd_salient},
      {"chain-build", cmd_chain_build},
      {"chain-verify", cmd_chain_verify},
      {"plevel-align", cmd_plevel_align},
      {"separated", cmd_separated},
      {"renorm-detect", cmd_renorm_detect},
      {"spectrum", cmd_spectrum},
      {"spectrum-member", cmd_spectrum_member},
      {"block-entropy", cmd_block_entropy},
      {"lap-count", cmd_lap_count},
      {"deep-branches", cmd_deep_branches},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

bool known_command(const std::string& name) { return handlers().count(name) > 0; }

Format parse_format(const std::string& s) {
  if (s == "plain") return Format::plain;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw PreconditionError("unknown format '" + s + "' (expected json, csv or plain)");
}

RunResult run(const RunConfig& config) {
  RunResult res;
  auto it = handlers().find(config.command);
  if (it == handlers().end()) {
    res.exit_code = 1;
    res.text = "unknown command '" + config.command + "'\n";
    return res;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Output out;
  try {
    out = it->second(config);
  } catch (const ResourceError& e) {
    res.exit_code = 3;
    res.text = std::string("resource cap: ") + e.what() + "\n";
    return res;
  } catch (const std::invalid_argument& e) {
    res.exit_code = 2;
    res.text = std::string("precondition: ") + e.what() + "\n";
    return res;
  } catch (const std::domain_error& e) {
    res.exit_code = 2;
    res.text = std::string("domain: ") + e.what() + "\n";
    return res;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.report = {{"schema", "ilim/1"},          {"command", config.command},       {"inputs", out.inputs},
                {"outputs", out.outputs},      {"tolerances", out.tolerances},    {"wall_time_s", wall}};
  switch (config.format) {
    case Format::json: res.text = res.report.dump(2) + "\n"; break;
    case Format::csv: res.text = out.csv; break;
    case Format::plain: res.text = out.plain; break;
  }
  return res;
}

std::string validate_report(const nlohmann::json& r) {
  if (!r.is_object()) return "report is not an object";
  if (!r.contains("schema") || r["schema"] != "ilim/1") return "schema must be \"ilim/1\"";
  if (!r.contains("command") || !r["command"].is_string()) return "command missing";
  if (!known_command(r["command"].get<std::string>())) return "unknown command " + r["command"].dump();
  for (const char* key : {"inputs", "outputs", "tolerances"}) {
    if (!r.contains(key) || !r[key].is_object()) return std::string(key) + " must be an object";
  }
  if (!r.contains("wall_time_s") || !r["wall_time_s"].is_number() || r["wall_time_s"].get<double>() < 0.0) {
    return "wall_time_s must be a nonnegative number";
  }
  for (const auto& [k, _] : r.items()) {
    if (k != "schema" && k != "command" && k != "inputs" && k != "outputs" && k != "tolerances" && k != "wall_time_s") {
      return "unexpected field " + k;
    }
  }
  return {};
}

nlohmann::json strip_timing(nlohmann::json report) {
  report.erase("wall_time_s");
  return report;
}

}  // namespace ilim::cli
