#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

using ilim::cli::RunConfig;

namespace {

void add_options(CLI::App& sub, RunConfig& c, std::string& format) {
  sub.add_option("--format", format, "json | csv | plain")->check(CLI::IsMember({"json", "csv", "plain"}));
  sub.add_option("-o,--output", c.output_path, "write the report to a file");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: ilim <command> [options]; commands:";
    for (const auto& name : ilim::cli::commands()) std::cerr << ' ' << name;
    std::cerr << '\n';
    return 1;
  }
  const std::string first = argv[1];
  if (first != "-h" && first != "--help" && !ilim::cli::known_command(first)) {
    std::cerr << "unknown command '" << first << "'\n";
    return 1;
  }

  RunConfig c;
  std::string format = "plain";
  std::string eps_list;
  std::string method = c.method;

  if (const char* env = std::getenv("ILIM_MAX_NODES")) {
    try {
      std::size_t used = 0;
      c.max_nodes = std::stoull(env, &used);
      if (used != std::string(env).size() || c.max_nodes == 0) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "malformed ILIM_MAX_NODES '" << env << "'\n";
      return 2;
    }
  }

  CLI::App app{"Entropy, folding patterns and chains of tent inverse limits"};
  app.require_subcommand(1);

  auto slope = [&](CLI::App* s) { s->add_option("--slope", c.slope, "tent slope s in (1, 2]"); };
  auto a_param = [&](CLI::App* s) { s->add_option("--a", c.a, "quadratic parameter a in (0, 2]"); };
  auto tol = [&](CLI::App* s) { s->add_option("--tol", c.tol, "tolerance"); };
  auto tower = [&](CLI::App* s) {
    s->add_option("--periods", c.periods, "tower periods, e.g. 1,2")->delimiter(',');
    s->add_option("--entropies", c.entropies, "tower entropies in nats")->delimiter(',');
  };
  auto cloud = [&](CLI::App* s) {
    s->add_option("--depth", c.depth, "truncation depth");
    s->add_option("--seeds", c.seeds, "seed count on the core");
    s->add_option("--per-branch-cap", c.per_branch_cap, "backward branches kept per seed");
    s->add_option("--R", c.R, "power of the shift");
  };

  auto* s = app.add_subcommand("entropy-lap", "entropy of T_s from lap numbers");
  slope(s);
  s->add_option("--n-max", c.n_max, "largest iterate");
  s->add_option("--method", method, "ratio | slope");
  tol(s);
  add_options(*s, c, format);

  s = app.add_subcommand("lap-count", "lap(T_s^n)");
  slope(s);
  s->add_option("--n", c.n, "iterate");
  tol(s);
  add_options(*s, c, format);

  s = app.add_subcommand("deep-branches", "laps of T_s^k on [0, c_1] with image of length >= 2 delta");
  slope(s);
  s->add_option("--k", c.k, "iterate");
  s->add_option("--delta", c.delta, "half the minimal image length");
  add_options(*s, c, format);

  s = app.add_subcommand("entropy-bowen", "entropy of sigma^R from (n, eps)-separated sets");
  slope(s);
  cloud(s);
  s->add_option("--n-max", c.n_max, "largest orbit length");
  s->add_option("--eps", eps_list, "comma separated eps list");
  add_options(*s, c, format);

  s = app.add_subcommand("slope-of-quadratic", "slope of the tent map semiconjugate to q_a");
  a_param(s);
  tol(s);
  add_options(*s, c, format);

  s = app.add_subcommand("folding-pattern", "prefix of the folding pattern of C");
  slope(s);
  s->add_option("--count", c.count, "number of entries");
  add_options(*s, c, format);

  s = app.add_subcommand("salient", "positions of the salient points s_1..s_n");
  slope(s);
  s->add_option("--n", c.n, "number of salient points");
  add_options(*s, c, format);

  s = app.add_subcommand("chain-build", "chain C_p of [0, c_1]");
  slope(s);
  s->add_option("--p", c.p, "chain index");
  s->add_option("--eps", c.eps, "target mesh on K_s");
  add_options(*s, c, format);

  s = app.add_subcommand("chain-verify", "check chain axioms and refinement");
  slope(s);
  s->add_option("--p", c.p, "chain index");
  s->add_option("--eps", c.eps, "target mesh on K_s");
  add_options(*s, c, format);

  s = app.add_subcommand("plevel-align", "p-level alignment under sigma^R");
  slope(s);
  s->add_option("--q", c.q, "q");
  s->add_option("--p", c.p, "p");
  s->add_option("--R", c.R, "power of the shift");
  s->add_option("--n", c.n, "salient index bound");
  add_options(*s, c, format);

  s = app.add_subcommand("separated", "greedy (n, eps)-separated set size");
  slope(s);
  cloud(s);
  s->add_option("--n", c.n, "orbit length");
  s->add_option("--eps", c.eps, "separation scale");
  add_options(*s, c, format);

  s = app.add_subcommand("renorm-detect", "renormalization tower of q_a");
  a_param(s);
  s->add_option("--max-period", c.max_period, "largest period tried (<= 64)");
  tol(s);
  add_options(*s, c, format);

  s = app.add_subcommand("spectrum", "admissible entropies of homeomorphisms");
  tower(s);
  s->add_option("--h-max", c.h_max, "upper bound");
  s->add_option("--tol", c.tol, "dedup tolerance (default from the precision of --entropies)");
  add_options(*s, c, format);

  s = app.add_subcommand("spectrum-member", "is a value an admissible entropy");
  tower(s);
  s->add_option("--value", c.value, "entropy value");
  tol(s);
  add_options(*s, c, format);

  s = app.add_subcommand("block-entropy", "entropy of a block model");
  tower(s);
  s->add_option("--R", c.R, "rotation of the first layer");
  s->add_option("--powers", c.powers, "shift power per subcontinuum")->delimiter(',');
  add_options(*s, c, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.method = method;
  try {
    c.format = ilim::cli::parse_format(format);
    if (!eps_list.empty()) {
      std::stringstream ss(eps_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        c.eps_list.push_back(v);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "malformed parameter: " << e.what() << '\n';
    return 2;
  }

  const auto res = ilim::cli::run(c);
  if (res.exit_code != 0) {
    std::cerr << res.text;
    return res.exit_code;
  }
  if (c.output_path.empty()) {
    std::cout << res.text;
  } else {
    std::ofstream out(c.output_path);
    if (!out) {
      std::cerr << "cannot write " << c.output_path << '\n';
      return 2;
    }
    out << res.text;
  }
  return 0;
}
