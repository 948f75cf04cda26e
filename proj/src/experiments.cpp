#include "equi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "equi/constructions.hpp"
#include "equi/halving.hpp"
#include "equi/solvers.hpp"
#include "equi/trials.hpp"

namespace equi {

namespace {

using Row = std::vector<std::string>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <class T>
std::string str(T v) {
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(v);
  } else {
    return std::to_string(v);
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ExperimentError(ExperimentError::Kind::InvalidParam, what);
}

double column_mean(const std::vector<Row>& rows, std::size_t col) {
  if (rows.empty()) return 0;
  double sum = 0;
  for (const auto& r : rows) sum += std::stod(r[col]);
  return sum / static_cast<double>(rows.size());
}

ExperimentResult missing_colour(const ExperimentConfig& cfg) {
  require(cfg.n >= 8, "missing-colour needs --n >= 8");
  const auto cx = counterexample_square(cfg.n);
  auto trial = [&](int index, std::uint64_t seed) -> Row {
    auto rng = SeedStreams(seed).stream("missing-colour.solver");
    const Transversal greedy = random_greedy(cx.square, rng);
    const Transversal local = local_search(cx.square, greedy, rng, 20 * cfg.n);
    const auto g = audit_missing_colours(cx.square, cx.pairing, greedy);
    const auto l = audit_missing_colours(cx.square, cx.pairing, local);
    std::size_t min_missing = cx.pairing.b > 0 ? static_cast<std::size_t>(cfg.n) : 0;
    for (const auto* rep : {&g, &l}) {
      for (const auto& miss : rep->missing) min_missing = std::min(min_missing, miss.size());
    }
    const std::size_t violations = g.violations.size() + l.violations.size() +
                                   (g.transversal_size > g.implied_bound) +
                                   (l.transversal_size > l.implied_bound);
    return {str(index), str(seed), str(cfg.n), str(greedy.size()), str(local.size()),
            str(cx.pairing.implied_bound()), str(min_missing), str(violations)};
  };
  ExperimentResult res;
  res.header = {"trial", "seed", "n", "greedy_size", "local_size", "implied_bound", "min_missing", "violations"};
  res.rows = run_trials(cfg.trials, cfg.seed, cfg.threads, trial);
  long long violations = 0;
  int best = 0;
  for (const auto& r : res.rows) {
    violations += std::stoll(r[7]);
    best = std::max(best, std::stoi(r[4]));
  }
  res.summary = {{"experiment", "missing-colour"}, {"n", cfg.n}, {"trials", cfg.trials},
                 {"m", cx.pairing.m}, {"r", cx.pairing.r}, {"a", cx.pairing.a}, {"b", cx.pairing.b},
                 {"implied_bound", cx.pairing.implied_bound()}, {"best_size", best},
                 {"violations", violations}};
  return res;
}

ExperimentResult concentration(const ExperimentConfig& cfg) {
  require(cfg.n >= 1 && cfg.m >= 1 && cfg.n % cfg.m == 0, "concentration needs m dividing n");
  const int k = cfg.n / cfg.m;
  const int s = cfg.cap > 0 ? cfg.cap : default_cap(cfg.n);
  const double tolerance = cfg.n / 8.0;
  auto trial = [&](int index, std::uint64_t seed) -> Row {
    const auto bsq = block_structured_square(cfg.n, cfg.m, seed);
    const auto res = block_transversal(bsq.square, bsq.blocks, s, seed);
    std::vector<double> dev;
    dev.reserve(cfg.n);
    int within = 0;
    for (int load : res.loads.loads) {
      const double d = std::abs(load - static_cast<double>(cfg.m));
      dev.push_back(d);
      within += d <= tolerance;
    }
    const double q99 = quantile(dev, 0.99);

    // Lipschitz constants of the last round's coins for the worst row: a coin
    // moves m(i) by at most the number of its component's blocks meeting row i
    double worst_sum = 0;
    if (res.trace.depth() > 0) {
      std::vector<double> sum_sq(cfg.n, 0.0);
      std::vector<int> hits(cfg.n, 0);
      for (const auto& pair : res.trace.levels.back().pairs) {
        for (const auto& comp : pair.cap.components.components) {
          std::vector<int> touched;
          for (int label : comp.labels) {
            for (int row : bsq.blocks.blocks[label].rows) {
              if (hits[row]++ == 0) touched.push_back(row);
            }
          }
          for (int row : touched) {
            sum_sq[row] += static_cast<double>(hits[row]) * hits[row];
            hits[row] = 0;
          }
        }
      }
      worst_sum = *std::max_element(sum_sq.begin(), sum_sq.end());
    }
    double prediction = 1.0;
    if (worst_sum > 0 && q99 > 0) {
      const std::vector<double> c{std::sqrt(worst_sum)};
      prediction = mcdiarmid_bound(c, q99);
    }
    return {str(index), str(seed), str(cfg.n), str(cfg.m), str(k), str(s),
            str(res.trace.result().size()), str(res.transversal.size()), str(within),
            str(within / static_cast<double>(cfg.n)), str(quantile(dev, 0.5)), str(quantile(dev, 0.9)),
            str(q99), str(quantile(dev, 1.0)), str(prediction)};
  };
  ExperimentResult res;
  res.header = {"trial", "seed", "n", "m", "k", "s", "matching_size", "transversal_size", "rows_within",
                "fraction_within", "q50", "q90", "q99", "max_dev", "mcdiarmid_q99"};
  res.rows = run_trials(cfg.trials, cfg.seed, cfg.threads, trial);
  long long within = 0;
  std::vector<double> sizes;
  for (const auto& r : res.rows) {
    within += std::stoll(r[8]);
    sizes.push_back(std::stod(r[7]));
  }
  const double total_rows = static_cast<double>(cfg.n) * std::max(1, cfg.trials);
  res.summary = {{"experiment", "concentration"}, {"n", cfg.n}, {"m", cfg.m}, {"k", k}, {"s", s},
                 {"trials", cfg.trials}, {"tolerance", tolerance},
                 {"fraction_within", within / total_rows},
                 {"mean_q99", column_mean(res.rows, 12)},
                 {"median_transversal_size", sizes.empty() ? 0.0 : quantile(sizes, 0.5)}};
  return res;
}

ExperimentResult greedy_baseline(const ExperimentConfig& cfg) {
  require(cfg.n >= 1, "greedy-baseline needs --n >= 1");
  auto trial = [&](int index, std::uint64_t seed) -> Row {
    const auto square = random_equi_square(cfg.n, seed);
    auto rng = SeedStreams(seed).stream("greedy-baseline.solver");
    const auto t = random_greedy(square, rng);
    return {str(index), str(seed), str(cfg.n), str(t.size()), str(t.size() / static_cast<double>(cfg.n))};
  };
  ExperimentResult res;
  res.header = {"trial", "seed", "n", "size", "fraction"};
  res.rows = run_trials(cfg.trials, cfg.seed, cfg.threads, trial);
  res.summary = {{"experiment", "greedy-baseline"}, {"n", cfg.n}, {"trials", cfg.trials},
                 {"mean_size", column_mean(res.rows, 3)},
                 {"stein_reference", (1.0 - std::exp(-1.0)) * cfg.n}};
  return res;
}

ExperimentResult peel(const ExperimentConfig& cfg) {
  require(cfg.n >= 1, "peel needs --n >= 1");
  const int min_size = cfg.min_size > 0 ? cfg.min_size : static_cast<int>(std::ceil(0.9 * cfg.n));
  require(min_size <= cfg.n, "peel needs min_size <= n");
  auto trial = [&](int index, std::uint64_t seed) -> Row {
    const auto square = random_equi_square(cfg.n, seed);
    auto rng = SeedStreams(seed).stream("peel.solver");
    const auto layers = peel_decomposition(square, rng, min_size);
    std::size_t smallest = 0, covered = 0;
    for (const auto& t : layers) {
      smallest = smallest == 0 ? t.size() : std::min(smallest, t.size());
      covered += t.size();
    }
    return {str(index), str(seed), str(cfg.n), str(min_size), str(layers.size()), str(smallest), str(covered)};
  };
  ExperimentResult res;
  res.header = {"trial", "seed", "n", "min_size", "count", "smallest", "cells_covered"};
  res.rows = run_trials(cfg.trials, cfg.seed, cfg.threads, trial);
  res.summary = {{"experiment", "peel"}, {"n", cfg.n}, {"min_size", min_size}, {"trials", cfg.trials},
                 {"mean_count", column_mean(res.rows, 4)}};
  return res;
}

ExperimentResult survival(const ExperimentConfig& cfg) {
  require(cfg.n >= 1 && cfg.m >= 1 && cfg.n % cfg.m == 0, "survival needs m dividing n");
  // a union of two matchings on 2n vertices has components of at most 2n
  // edges, so this default cap never deletes anything
  const int s = cfg.cap > 0 ? cfg.cap : 2 * cfg.n;
  const auto bsq = block_structured_square(cfg.n, cfg.m, cfg.seed);
  const auto graph = block_multigraph(bsq.blocks);
  const auto inputs = decompose_regular(graph, bsq.blocks.blocks_per_column());
  const int edge = inputs.front().front();
  auto trial = [&](int index, std::uint64_t seed) -> Row {
    const auto [result, trace] = iterated_halving(graph, inputs, s, seed);
    bool deleted = false;
    for (const auto& lt : trace.levels) {
      for (const auto& pt : lt.pairs) {
        deleted |= std::binary_search(pt.cap.deleted.begin(), pt.cap.deleted.end(), edge);
      }
    }
    const bool survived = std::binary_search(result.begin(), result.end(), edge);
    return {str(index), str(seed), str(cfg.n), str(cfg.m), str(s), str(edge), str(int{deleted}),
            str(int{survived})};
  };
  ExperimentResult res;
  res.header = {"trial", "seed", "n", "m", "s", "edge", "deleted", "survived"};
  res.rows = run_trials(cfg.trials, cfg.seed, cfg.threads, trial);
  long long kept = 0, survived = 0;
  for (const auto& r : res.rows) {
    if (r[6] == "0") {
      ++kept;
      survived += r[7] == "1";
    }
  }
  const int levels = static_cast<int>(std::log2(static_cast<double>(inputs.size())));
  res.summary = {{"experiment", "survival"}, {"n", cfg.n}, {"m", cfg.m}, {"s", s}, {"edge", edge},
                 {"trials", cfg.trials}, {"non_deleted_trials", kept},
                 {"frequency", kept ? static_cast<double>(survived) / kept : 0.0},
                 {"expected", std::ldexp(1.0, -levels)}};
  return res;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"missing-colour", "concentration", "greedy-baseline", "peel",
                                              "survival"};
  return names;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ExperimentError(ExperimentError::Kind::InvalidParam, "quantile of nothing");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

std::string ExperimentResult::to_csv() const {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    return out + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, "--trials must be >= 1");
  if (cfg.name == "missing-colour") return missing_colour(cfg);
  if (cfg.name == "concentration") return concentration(cfg);
  if (cfg.name == "greedy-baseline") return greedy_baseline(cfg);
  if (cfg.name == "peel") return peel(cfg);
  if (cfg.name == "survival") return survival(cfg);
  throw ExperimentError(ExperimentError::Kind::UnknownName, "unknown experiment '" + cfg.name + "'");
}

}  // namespace equi
