#include "actsearch/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "actsearch/errors.hpp"

namespace actsearch {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!keys.contains(key)) fail(path + "." + key, "unknown field");
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::uint64_t get_unsigned(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(path, "expected a nonnegative integer");
}

std::vector<double> get_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    // Parameter validation inside the library does not know the field path.
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    fail(path, what);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

ExponentialLadder parse_ladder(const json& j, const std::string& path) {
  reject_unknown(j, path, {"family", "lambda_f", "lambda_g_offset", "lambda_g_step"});
  const json& fam = require(j, "family", path);
  if (fam != "exponential_ladder") fail(path + ".family", "only \"exponential_ladder\" is supported");
  ExponentialLadder ladder{get_number(require(j, "lambda_f", path), path + ".lambda_f"),
                           get_number(require(j, "lambda_g_offset", path), path + ".lambda_g_offset")};
  if (j.contains("lambda_g_step")) ladder.lambda_g_step = get_number(j["lambda_g_step"], path + ".lambda_g_step");
  return ladder;
}

ProblemInstance parse_instance(const json& j, const std::string& path) {
  reject_unknown(j, path, {"M", "K", "L", "c", "priors", "subset_priors", "cells", "generator"});
  const std::size_t probes = get_unsigned(require(j, "K", path), path + ".K");
  const std::size_t targets = j.contains("L") ? get_unsigned(j["L"], path + ".L") : 1;
  const double cost = get_number(require(j, "c", path), path + ".c");
  if (!(cost > 0.0 && cost < 1.0)) fail(path + ".c", "must lie in (0, 1)");

  std::vector<ProcessModel> models;
  if (j.contains("cells") == j.contains("generator")) fail(path, "give exactly one of \"cells\" or \"generator\"");
  if (j.contains("cells")) {
    const json& cells = j["cells"];
    if (!cells.is_array()) fail(path + ".cells", "expected an array");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string cp = path + ".cells[" + std::to_string(i) + "]";
      reject_unknown(cells[i], cp, {"f", "g"});
      DistributionSpec f = parse_distribution(require(cells[i], "f", cp), cp + ".f");
      DistributionSpec g = parse_distribution(require(cells[i], "g", cp), cp + ".g");
      models.push_back(wrap(cp, [&] { return ProcessModel(std::move(f), std::move(g)); }));
    }
    if (j.contains("M") && get_unsigned(j["M"], path + ".M") != models.size())
      fail(path + ".M", "does not match the number of cells");
  } else {
    const std::size_t num_cells = get_unsigned(require(j, "M", path), path + ".M");
    const ExponentialLadder ladder = parse_ladder(j["generator"], path + ".generator");
    models = wrap(path + ".generator", [&] { return ladder.cells(num_cells); });
  }

  PriorSpec prior = UniformPrior{};
  if (j.contains("priors") && j.contains("subset_priors")) fail(path, "give at most one of \"priors\" or \"subset_priors\"");
  if (j.contains("priors")) prior = PerCellPrior{get_number_array(j["priors"], path + ".priors")};
  if (j.contains("subset_priors")) {
    const json& sp = j["subset_priors"];
    if (!sp.is_array()) fail(path + ".subset_priors", "expected an array");
    PerSubsetPrior entries;
    for (std::size_t i = 0; i < sp.size(); ++i) {
      const std::string ep = path + ".subset_priors[" + std::to_string(i) + "]";
      reject_unknown(sp[i], ep, {"cells", "p"});
      CellSet cells;
      const json& cj = require(sp[i], "cells", ep);
      if (!cj.is_array()) fail(ep + ".cells", "expected an array of cell indices");
      for (std::size_t k = 0; k < cj.size(); ++k) cells.push_back(get_unsigned(cj[k], ep + ".cells[" + std::to_string(k) + "]"));
      entries.entries.emplace_back(std::move(cells), get_number(require(sp[i], "p", ep), ep + ".p"));
    }
    prior = std::move(entries);
  }
  return wrap(path, [&] { return ProblemInstance(std::move(models), probes, targets, cost, prior); });
}

}  // namespace

DistributionSpec parse_distribution(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const json& fam = require(j, "family", path);
  if (!fam.is_string()) fail(path + ".family", "expected a string");
  const std::string family = fam.get<std::string>();
  return wrap(path, [&]() -> DistributionSpec {
    if (family == "exponential") {
      reject_unknown(j, path, {"family", "rate"});
      return Exponential{get_number(require(j, "rate", path), path + ".rate")};
    }
    if (family == "gaussian") {
      reject_unknown(j, path, {"family", "mean", "variance"});
      return Gaussian{get_number(require(j, "mean", path), path + ".mean"),
                      get_number(require(j, "variance", path), path + ".variance")};
    }
    if (family == "bernoulli") {
      reject_unknown(j, path, {"family", "p"});
      return Bernoulli{get_number(require(j, "p", path), path + ".p")};
    }
    if (family == "discrete") {
      reject_unknown(j, path, {"family", "probs"});
      return FiniteDiscrete{get_number_array(require(j, "probs", path), path + ".probs")};
    }
    fail(path + ".family", "unknown family '" + family + "'");
  });
}

json distribution_to_json(const DistributionSpec& spec) {
  const auto& f = spec.family();
  if (const auto* e = std::get_if<Exponential>(&f)) return {{"family", "exponential"}, {"rate", e->rate}};
  if (const auto* g = std::get_if<Gaussian>(&f)) return {{"family", "gaussian"}, {"mean", g->mean}, {"variance", g->variance}};
  if (const auto* b = std::get_if<Bernoulli>(&f)) return {{"family", "bernoulli"}, {"p", b->p}};
  return {{"family", "discrete"}, {"probs", std::get<FiniteDiscrete>(f).probs}};
}

std::string config_hash(const json& doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const json& doc) {
  reject_unknown(doc, "config", {"instance", "policy", "trials", "seed", "max_horizon", "sweep", "trace"});
  ExperimentConfig cfg{parse_instance(require(doc, "instance", "config"), "config.instance"),
                       PolicyKind::Dgfi, 1000, 1, std::nullopt, std::nullopt, false, {}};
  if (doc.contains("policy")) {
    if (!doc["policy"].is_string()) fail("config.policy", "expected a string");
    cfg.policy = wrap("config.policy", [&] { return parse_policy(doc["policy"].get<std::string>()); });
  }
  if (doc.contains("trials")) {
    cfg.trials = get_unsigned(doc["trials"], "config.trials");
    if (cfg.trials == 0) fail("config.trials", "must be at least 1");
  }
  if (doc.contains("seed")) cfg.seed = get_unsigned(doc["seed"], "config.seed");
  if (doc.contains("max_horizon") && !doc["max_horizon"].is_null()) {
    cfg.max_horizon = get_unsigned(doc["max_horizon"], "config.max_horizon");
    if (*cfg.max_horizon == 0) fail("config.max_horizon", "must be positive");
  }
  if (doc.contains("trace")) {
    if (!doc["trace"].is_boolean()) fail("config.trace", "expected true or false");
    cfg.trace = doc["trace"].get<bool>();
  }
  if (doc.contains("sweep")) {
    const json& sw = doc["sweep"];
    reject_unknown(sw, "config.sweep", {"axis", "values", "generator"});
    const json& axis = require(sw, "axis", "config.sweep");
    if (!axis.is_string()) fail("config.sweep.axis", "expected \"c\" or \"M\"");
    SweepConfig s{wrap("config.sweep.axis", [&] { return parse_axis(axis.get<std::string>()); }),
                  get_number_array(require(sw, "values", "config.sweep"), "config.sweep.values"),
                  std::nullopt};
    if (s.values.empty()) fail("config.sweep.values", "must not be empty");
    if (sw.contains("generator")) s.generator = parse_ladder(sw["generator"], "config.sweep.generator");
    const json& inst = doc["instance"];
    if (!s.generator && inst.contains("generator")) s.generator = parse_ladder(inst["generator"], "config.instance.generator");
    if (s.axis == SweepAxis::Cells && !s.generator) fail("config.sweep.generator", "an M sweep needs a generator");
    cfg.sweep = std::move(s);
  }
  cfg.hash = config_hash(doc);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace actsearch
