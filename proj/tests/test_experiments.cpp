#include <doctest.h>

#include <stdexcept>

#include "equi/experiments.hpp"
#include "equi/sidecars.hpp"
#include "equi/trials.hpp"

using namespace equi;

TEST_CASE("seed streams") {
  const SeedStreams s(42);
  CHECK(s.derive("a") == SeedStreams(42).derive("a"));
  CHECK(s.derive("a") != s.derive("b"));
  CHECK(s.derive("a") != SeedStreams(43).derive("a"));
  auto x = s.stream("x");
  auto y = s.stream("x");
  CHECK(x() == y());
}

TEST_CASE("parallel trials reproduce the serial rows") {
  auto trial = [](int i, std::uint64_t seed) {
    Rng rng(seed);
    std::uint64_t acc = 0;
    for (int k = 0; k < 1000 + 37 * i; ++k) acc ^= rng();
    return std::pair<int, std::uint64_t>{i, acc};
  };
  const auto serial = run_trials_serial(50, 7, trial);
  for (int threads : {0, 2, 4}) CHECK(run_trials_parallel(50, 7, threads, trial) == serial);
  CHECK(serial[3].first == 3);
  CHECK(trial_seed(7, 3) == 10);
}

TEST_CASE("parallel trials rethrow") {
  auto trial = [](int i, std::uint64_t) -> int {
    if (i == 5) throw std::runtime_error("boom");
    return i;
  };
  CHECK_THROWS_AS(run_trials_parallel(10, 0, 3, trial), std::runtime_error);
  CHECK_THROWS_AS(run_trials_serial(10, 0, trial), std::runtime_error);
}

TEST_CASE("quantile uses the nearest rank") {
  const std::vector<double> v{5, 1, 4, 2, 3};
  CHECK(quantile(v, 0.0) == 1);
  CHECK(quantile(v, 0.5) == 3);
  CHECK(quantile(v, 0.99) == 5);
  CHECK(quantile(v, 1.0) == 5);
  CHECK_THROWS_AS(quantile({}, 0.5), ExperimentError);
}

TEST_CASE("every experiment is deterministic and parallel-safe") {
  struct Case {
    std::string name;
    int n, m;
  };
  for (const auto& c : {Case{"missing-colour", 18, 0}, Case{"concentration", 64, 16},
                        Case{"greedy-baseline", 30, 0}, Case{"peel", 20, 0}, Case{"survival", 8, 2}}) {
    ExperimentConfig cfg;
    cfg.name = c.name;
    cfg.n = c.n;
    cfg.m = c.m;
    cfg.trials = 6;
    cfg.seed = 100;
    const auto serial = run_experiment(cfg);
    cfg.threads = 3;
    const auto parallel = run_experiment(cfg);
    CHECK(serial.to_csv() == parallel.to_csv());
    CHECK(serial.summary == parallel.summary);
    CHECK(serial.rows.size() == 6);
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
      CHECK(serial.rows[i].size() == serial.header.size());
      CHECK(serial.rows[i][0] == std::to_string(i));
      CHECK(serial.rows[i][1] == std::to_string(100 + i));
    }
    CHECK(serial.header[0] == "trial");
    CHECK(serial.header[1] == "seed");
    CHECK(serial.summary.at("experiment") == c.name);
  }
}

TEST_CASE("experiment errors") {
  ExperimentConfig cfg;
  cfg.name = "nope";
  cfg.n = 8;
  try {
    run_experiment(cfg);
    FAIL("ran");
  } catch (const ExperimentError& e) {
    CHECK(e.kind() == ExperimentError::Kind::UnknownName);
  }
  cfg.name = "concentration";
  cfg.m = 3;
  CHECK_THROWS_AS(run_experiment(cfg), ExperimentError);
  cfg.name = "missing-colour";
  cfg.trials = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ExperimentError);
  CHECK(experiment_names().size() == 5);
}

TEST_CASE("missing-colour reports no violations") {
  ExperimentConfig cfg{"missing-colour", 50, 0, 10, 3};
  const auto r = run_experiment(cfg);
  CHECK(r.summary.at("violations") == 0);
  for (const auto& row : r.rows) CHECK(row[7] == "0");
}

TEST_CASE("sidecars round trip") {
  const auto cx = counterexample_square(51);
  const auto back = pairing_from_json(nlohmann::json::parse(to_json(cx.pairing).dump()));
  CHECK(back.a == cx.pairing.a);
  CHECK(back.pairs.size() == cx.pairing.pairs.size());
  CHECK(back.pairs[7].colour == cx.pairing.pairs[7].colour);
  CHECK(back.leftover_fill == cx.pairing.leftover_fill);
  CHECK(to_json(cx.pairing).at("format") == 1);

  const auto bsq = block_structured_square(8, 2, 1);
  auto blocks = blocks_from_json(nlohmann::json::parse(to_json(bsq.blocks).dump()));
  CHECK_NOTHROW(validate_blocks(bsq.square, blocks));
  CHECK(blocks.block_of_cell == bsq.blocks.block_of_cell);

  CHECK_THROWS_AS(pairing_from_json(nlohmann::json{{"format", 2}}), ParseError);
  CHECK_THROWS_AS(blocks_from_json(nlohmann::json{{"format", 1}}), ParseError);

  const auto r = block_transversal(bsq.square, bsq.blocks, 4, 1);
  const auto trace = to_json(r.trace);
  CHECK(trace.at("format") == 1);
  CHECK(trace.at("levels").size() == 2);
  const auto csv = row_loads_csv(r.loads);
  CHECK(csv.starts_with("row_index,load\n0,"));
}
