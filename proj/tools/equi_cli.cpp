#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "equi/constructions.hpp"
#include "equi/experiments.hpp"
#include "equi/halving.hpp"
#include "equi/hypergraph.hpp"
#include "equi/sidecars.hpp"
#include "equi/solvers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// thrown for bad flag combinations the parser cannot express
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path sidecar(const fs::path& out, const std::string& kind) {
  fs::path p = out;
  return p.replace_extension(kind + ".json");
}

struct GenerateArgs {
  std::string kind;
  int n = 0;
  int m = 0;
  int t = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& g) {
  const fs::path out = g.out;
  json report{{"kind", g.kind}, {"out", g.out}};
  if (g.kind == "counterexample") {
    const auto cx = equi::counterexample_square(g.n);
    equi::write_square(cx.square, out);
    const auto side = sidecar(out, "pairing");
    equi::write_json(side, equi::to_json(cx.pairing));
    report["sidecar"] = side.string();
    report["implied_bound"] = cx.pairing.implied_bound();
    std::cerr << "counterexample n=" << g.n << " (m=" << cx.pairing.m << ", r=" << cx.pairing.r
              << "), no transversal above " << cx.pairing.implied_bound() << "\n";
  } else if (g.kind == "random") {
    equi::write_square(equi::random_equi_square(g.n, g.seed), out);
    std::cerr << "random equi-square n=" << g.n << " seed=" << g.seed << "\n";
  } else if (g.kind == "block") {
    if (g.m <= 0) throw UsageError("--kind block needs --m");
    const auto bsq = equi::block_structured_square(g.n, g.m, g.seed);
    equi::write_square(bsq.square, out);
    const auto side = sidecar(out, "blocks");
    equi::write_json(side, equi::to_json(bsq.blocks));
    report["sidecar"] = side.string();
    std::cerr << "block square n=" << g.n << " m=" << g.m << " seed=" << g.seed << "\n";
  } else if (g.kind == "cyclic") {
    equi::write_square(equi::cyclic_latin(g.n), out);
    std::cerr << "cyclic Latin square n=" << g.n << "\n";
  } else if (g.kind == "alon-kim") {
    if (g.t <= 0) throw UsageError("--kind alon-kim needs --t >= 1");
    equi::write_text(out, equi::format_hypergraph(equi::alon_kim(g.t)));
    std::cerr << "Alon-Kim hypergraph t=" << g.t << "\n";
  } else {
    throw UsageError("unknown kind '" + g.kind + "'");
  }
  std::cout << report.dump() << "\n";
  return kOk;
}

struct SolveArgs {
  std::string method;
  std::string in;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  std::string blocks;
  int s = 0;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const fs::path in = a.in;
  const auto square = equi::read_square(in);
  fs::path out = a.out.empty() ? fs::path(in).replace_extension(a.method + ".cells.txt") : fs::path(a.out);
  auto rng = equi::SeedStreams(a.seed).stream("cli.solve");
  equi::Transversal t;
  bool optimal = false;
  json extra = json::object();
  if (a.method == "exact") {
    const auto r = equi::exact_max(square, a.budget);
    t = r.transversal;
    optimal = r.optimal;
    extra["nodes"] = r.nodes;
  } else if (a.method == "brute") {
    t = equi::brute_force_max(square).transversal;
    optimal = true;
  } else if (a.method == "greedy") {
    t = equi::random_greedy(square, rng);
  } else if (a.method == "local") {
    t = equi::local_search(square, equi::random_greedy(square, rng), rng, 40 * square.order());
  } else if (a.method == "block") {
    const fs::path side = a.blocks.empty() ? sidecar(in, "blocks") : fs::path(a.blocks);
    if (!fs::exists(side)) throw UsageError("block method needs a blocks sidecar, " + side.string() + " not found");
    const auto blocks = equi::blocks_from_json(equi::read_json(side));
    const int s = a.s > 0 ? a.s : equi::default_cap(square.order());
    const auto r = equi::block_transversal(square, blocks, s, a.seed);
    t = r.transversal;
    extra["s"] = s;
    extra["matching_size"] = r.trace.result().size();
  } else {
    throw UsageError("unknown method '" + a.method + "'");
  }
  equi::write_transversal(t, out);
  json report{{"size", t.size()}, {"optimal", optimal}, {"cells_file", out.string()}};
  report.update(extra);
  std::cout << report.dump() << "\n";
  std::cerr << a.method << ": transversal of size " << t.size() << " of " << square.order()
            << (optimal ? " (optimal)" : "") << "\n";
  return kOk;
}

struct VerifyArgs {
  std::string square;
  std::string transversal;
  std::string pairing;
};

int cmd_verify(const VerifyArgs& a) {
  json report{{"square", a.square}};
  try {
    const auto square = equi::read_square(a.square);
    report["order"] = square.order();
    std::optional<equi::Transversal> t;
    if (!a.transversal.empty()) {
      const auto cells = equi::read_cells(a.transversal);
      t = equi::validate_transversal(square, cells);
      report["transversal_size"] = t->size();
    }
    if (!a.pairing.empty()) {
      const auto pairing = equi::pairing_from_json(equi::read_json(a.pairing));
      const auto cert =
          equi::missing_colour_certificate(square, pairing, t.value_or(equi::Transversal{}));
      report["implied_bound"] = cert.implied_bound;
      if (cert.transversal_size > cert.implied_bound) {
        throw equi::ConstructionError(equi::ConstructionError::Kind::CertificateViolation,
                                      "BoundExceeded(" + std::to_string(cert.transversal_size) + " > " +
                                          std::to_string(cert.implied_bound) + ")");
      }
    }
  } catch (const equi::IoError&) {
    throw;
  } catch (const equi::Error& e) {
    report["ok"] = false;
    report["violation"] = e.what();
    std::cout << report.dump() << "\n";
    std::cerr << "verification failed: " << e.what() << "\n";
    return kFailed;
  }
  report["ok"] = true;
  std::cout << report.dump() << "\n";
  std::cerr << "ok\n";
  return kOk;
}

int cmd_experiment(const equi::ExperimentConfig& cfg, const std::string& csv) {
  const auto res = equi::run_experiment(cfg);
  if (csv.empty()) {
    std::cout << res.to_csv();
    std::cerr << res.summary.dump() << "\n";
  } else {
    equi::write_text(csv, res.to_csv());
    std::cout << res.summary.dump() << "\n";
    std::cerr << cfg.name << ": " << res.rows.size() << " trials written to " << csv << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equi-n-square transversal toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a square (or hypergraph) and its sidecar");
  generate->add_option("--kind", gen.kind, "counterexample | random | block | cyclic | alon-kim")->required();
  generate->add_option("--n", gen.n, "order");
  generate->add_option("--m", gen.m, "block size (block)");
  generate->add_option("--t", gen.t, "Alon-Kim parameter");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--out", gen.out)->required();

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "find a transversal");
  solve->add_option("--method", sol.method, "exact | brute | greedy | local | block")->required();
  solve->add_option("--in", sol.in)->required();
  solve->add_option("--seed", sol.seed);
  solve->add_option("--budget", sol.budget, "node budget for exact");
  solve->add_option("--blocks", sol.blocks, "blocks sidecar (default <in>.blocks.json)");
  solve->add_option("--s", sol.s, "component cap for block (default max(4, n^(1/3)/ln^2 n))");
  solve->add_option("--out", sol.out, "cells file (default <in>.<method>.cells.txt)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "check a square, a transversal and a certificate");
  verify->add_option("--square", ver.square)->required();
  verify->add_option("--transversal", ver.transversal);
  verify->add_option("--pairing", ver.pairing);

  equi::ExperimentConfig exp;
  std::string csv;
  auto* experiment = app.add_subcommand("experiment", "run a seeded experiment suite");
  experiment->add_option("name", exp.name, "missing-colour | concentration | greedy-baseline | peel | survival")
      ->required();
  experiment->add_option("--n", exp.n)->required();
  experiment->add_option("--m", exp.m);
  experiment->add_option("--trials", exp.trials);
  experiment->add_option("--seed", exp.seed);
  experiment->add_option("--s", exp.cap, "component cap");
  experiment->add_option("--min-size", exp.min_size, "peel layer size");
  experiment->add_option("--parallel", exp.threads, "worker threads");
  experiment->add_option("--csv", csv, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*solve) return cmd_solve(sol);
    if (*verify) return cmd_verify(ver);
    return cmd_experiment(exp, csv);
  } catch (const equi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
