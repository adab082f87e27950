#include <doctest.h>

#include <fstream>
#include <sstream>

#include "actsearch/config.hpp"
#include "actsearch/errors.hpp"
#include "actsearch/report_io.hpp"

using namespace actsearch;
using nlohmann::json;

namespace {

const std::string kConfigDir = ACTSEARCH_CONFIG_DIR;
const std::string kDataDir = ACTSEARCH_TEST_DATA_DIR;

json ladder_doc() {
  return json::parse(R"({
    "instance": {"M": 10, "K": 1, "c": 0.001,
                 "generator": {"family": "exponential_ladder", "lambda_f": 0.0188, "lambda_g_offset": 9}},
    "trials": 50, "seed": 7
  })");
}

std::string error_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_for(const ExperimentConfig& cfg, unsigned workers) {
  const Experiment e(cfg.instance, cfg.policy);
  const ExperimentReport r = e.run(cfg.trials, cfg.seed, {cfg.max_horizon, workers, false});
  return report_csv_header() + "\n" + report_csv_row(r, cfg.hash) + "\n";
}

}  // namespace

TEST_SUITE("cli-io") {
  TEST_CASE("the exponential example loads") {
    const ExperimentConfig cfg = load_config(kConfigDir + "/exponential_m10.json");
    CHECK(cfg.instance.M() == 10);
    CHECK(cfg.instance.K() == 1);
    CHECK(cfg.instance.L() == 1);
    CHECK(cfg.instance.cost() == 0.001);
    CHECK(cfg.policy == PolicyKind::Dgfi);
    for (double p : cfg.instance.priors()) CHECK(p == doctest::Approx(0.1));
    CHECK(cfg.instance.models()[9].present().approx_equal(DistributionSpec(Exponential{19.0})));
    CHECK(cfg.hash.size() == 16);
  }

  TEST_CASE("every shipped config loads") {
    for (const char* name : {"exponential_m_sweep.json", "two_targets.json", "homogeneous.json"})
      CHECK_NOTHROW(load_config(kConfigDir + "/" + name));
  }

  TEST_CASE("validation errors carry the field path") {
    CHECK_THROWS_AS(load_config(kDataDir + "/invalid_k.json"), ConfigError);
    CHECK_THROWS_AS(load_config(kDataDir + "/missing.json"), ConfigError);

    json doc = ladder_doc();
    doc["instance"]["colour"] = 1;
    CHECK(error_of(doc).find("config.instance.colour") != std::string::npos);

    doc = ladder_doc();
    doc["instance"]["K"] = 10;
    CHECK_FALSE(error_of(doc).empty());

    doc = ladder_doc();
    doc["instance"].erase("generator");
    doc["instance"]["cells"] = json::array({{{"f", {{"family", "exponential"}, {"rate", 1.0}}},
                                             {"g", {{"family", "exponential"}, {"rate", -2.0}}}}});
    doc["instance"]["M"] = 1;
    CHECK_FALSE(error_of(doc).empty());

    doc = ladder_doc();
    doc["instance"].erase("M");
    doc["instance"].erase("generator");
    doc["instance"]["cells"] = json::array({{{"f", {{"family", "exponential"}, {"rate", 1.0}}},
                                             {"g", {{"family", "exponential"}, {"rate", -2.0}}}},
                                            {{"f", {{"family", "exponential"}, {"rate", 1.0}}},
                                             {"g", {{"family", "exponential"}, {"rate", 3.0}}}}});
    CHECK(error_of(doc).find("config.instance.cells[0].g") != std::string::npos);

    doc = ladder_doc();
    doc["policy"] = "greedy";
    CHECK(error_of(doc).find("config.policy") != std::string::npos);

    doc = ladder_doc();
    doc["instance"]["priors"] = json::array({0.5, 0.5});
    CHECK_FALSE(error_of(doc).empty());
  }

  TEST_CASE("distribution specs round-trip through JSON") {
    const DistributionSpec specs[] = {Exponential{0.0188}, Gaussian{-1.0, 2.0}, Bernoulli{0.3},
                                      FiniteDiscrete{{0.2, 0.3, 0.5}}};
    for (const auto& s : specs) CHECK(parse_distribution(distribution_to_json(s)).approx_equal(s, 0.0));
    CHECK(distribution_to_json(Exponential{0.0188}) == json::parse(R"({"family":"exponential","rate":0.0188})"));
    CHECK_THROWS_AS(parse_distribution(json::parse(R"({"family":"cauchy"})")), ConfigError);
  }

  TEST_CASE("the hash ignores key order and whitespace") {
    const json a = json::parse(R"({"b": 1, "a": [1, 2]})");
    const json b = json::parse("{\"a\":[1,2],\n \"b\":1}");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(json::parse(R"({"b": 2, "a": [1, 2]})")));
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1000) == "1000");
    CHECK(format_number(1.0 / 3) == "0.3333333333");
    CHECK(format_number(1e-4) == "0.0001");
    CHECK(format_number(2.5e-7) == "2.5e-07");
  }

  TEST_CASE("CSV header") {
    CHECK(report_csv_header() ==
          "policy,M,K,L,c,seed,trials,pe_hat,pe_bound,mean_tau,tau_ci95,bayes_risk,rate_I,rate_Istar,truncation_rate,"
          "config_hash");
    CHECK(sweep_csv_header() == report_csv_header() + ",value,delay_ratio,risk_ratio");
  }

  TEST_CASE("CSV output matches the golden file for any worker count") {
    const ExperimentConfig cfg = load_config(kDataDir + "/golden_m10.json");
    const std::string one = csv_for(cfg, 1);
    CHECK(one == read_file(kDataDir + "/golden_m10.csv"));
    CHECK(csv_for(cfg, 3) == one);
  }

  TEST_CASE("rate report JSON") {
    const ExperimentConfig cfg = parse_config(ladder_doc());
    const json j = rate_report_to_json(analyze_rates(cfg.instance), cfg.instance.divergences());
    CHECK(j.contains("cells"));
    CHECK(j["cells"].size() == 10);
  }
}
