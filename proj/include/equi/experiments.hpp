#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "equi/square.hpp"

namespace equi {

class ExperimentError : public Error {
public:
  enum class Kind { UnknownName, InvalidParam };

  ExperimentError(Kind kind, std::string what) : Error(std::move(what)), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct ExperimentConfig {
  std::string name;
  int n = 0;
  int m = 0;
  int trials = 1;
  std::uint64_t seed = 0;
  int cap = 0;        // component cap s; 0 picks the experiment default
  int min_size = 0;   // peel: 0 means ceil(0.9 n)
  int threads = 1;    // 1 = serial reference loop
};

/// CSV table (one row per trial, sorted by trial index) plus a JSON summary.
struct ExperimentResult {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json summary;

  std::string to_csv() const;
};

/// Names: missing-colour, concentration, greedy-baseline, peel, survival.
///
/// CSV columns
///   missing-colour : trial,seed,n,greedy_size,local_size,implied_bound,min_missing,violations
///   concentration  : trial,seed,n,m,k,s,matching_size,transversal_size,rows_within,
///                    fraction_within,q50,q90,q99,max_dev,mcdiarmid_q99
///   greedy-baseline: trial,seed,n,size,fraction
///   peel           : trial,seed,n,min_size,count,smallest,cells_covered
///   survival       : trial,seed,n,m,s,edge,deleted,survived
ExperimentResult run_experiment(const ExperimentConfig& config);

const std::vector<std::string>& experiment_names();

/// Value at quantile q in [0, 1] of the samples (nearest rank).
double quantile(std::vector<double> values, double q);

}  // namespace equi
