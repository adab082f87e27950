#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "actsearch/harness.hpp"
#include "actsearch/instance.hpp"

namespace actsearch {

struct SweepConfig {
  SweepAxis axis;
  std::vector<double> values;
  std::optional<ExponentialLadder> generator;
};

// Everything needed to run one experiment, as loaded from JSON.
//
//   {
//     "instance": {
//       "M": 10, "K": 1, "L": 1, "c": 0.001,
//       "priors": [...],                      // optional, per cell
//       "subset_priors": [{"cells": [0, 1], "p": 0.5}, ...],  // optional
//       "cells": [{"f": {...}, "g": {...}}, ...]   // or "generator"
//       "generator": {"family": "exponential_ladder", "lambda_f": 0.0188,
//                     "lambda_g_offset": 9, "lambda_g_step": 1}
//     },
//     "policy": "dgfi", "trials": 1000, "seed": 1,
//     "max_horizon": 100000, "trace": false,
//     "sweep": {"axis": "c", "values": [0.1, 0.01], "generator": {...}}
//   }
//
// Unknown keys are rejected. Omitted priors mean a uniform prior.
struct ExperimentConfig {
  ProblemInstance instance;
  PolicyKind policy = PolicyKind::Dgfi;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_horizon;
  std::optional<SweepConfig> sweep;
  bool trace = false;
  std::string hash;  // of the canonical JSON text
};

// Throws ConfigError with the offending field path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

DistributionSpec parse_distribution(const nlohmann::json& j, const std::string& path = "distribution");
nlohmann::json distribution_to_json(const DistributionSpec& spec);

// 16 hex digits of FNV-1a over the canonical (key-sorted, compact) dump.
std::string config_hash(const nlohmann::json& doc);

}  // namespace actsearch
