#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "schwarz_lab/harness.hpp"

using namespace schwarz_lab;
using nlohmann::json;

TEST_CASE("config defaults and overrides") {
  RunConfig c = config_from_json(json::object());
  CHECK(c.seed == 7);
  CHECK(c.samples == 100);
  CHECK(c.tolerance == 1e-9);
  CHECK(c.theorems.empty());
  CHECK(c.domains.empty());
  CHECK(c.threads == 1);

  c = config_from_json(json::parse(R"({"seed": 42, "samples": 3, "tolerance": 1e-7,
    "theorems": ["T2_1", "T3_7"], "domains": ["disc", "sup:2"]})"));
  CHECK(c.seed == 42);
  CHECK(c.samples == 3);
  CHECK(c.theorems == std::vector<TheoremId>{TheoremId::T2_1, TheoremId::T3_7});
  REQUIRE(c.domains.size() == 2);
  CHECK(c.domains[0].dim == 1);
  CHECK(c.domains[1].kind == NormKind::sup);
}

TEST_CASE("config rejects bad values") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"samples": 0})")), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"tolerance": -1.0})")), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"theorems": ["T9_9"]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"domains": ["weird:2"]})")),
                  std::invalid_argument);
}

TEST_CASE("thread count comes from the environment and must be positive") {
  setenv("SCHWARZ_LAB_THREADS", "4", 1);
  CHECK(config_from_json(json::object()).threads == 4);
  setenv("SCHWARZ_LAB_THREADS", "0", 1);
  CHECK_THROWS_AS(config_from_json(json::object()), std::invalid_argument);
  setenv("SCHWARZ_LAB_THREADS", "banana", 1);
  CHECK_THROWS_AS(config_from_json(json::object()), std::invalid_argument);
  unsetenv("SCHWARZ_LAB_THREADS");
}

TEST_CASE("space names round trip through the parser") {
  CHECK(space_from_name("disc").dim == 1);
  CHECK(space_from_name("euclidean:3").dim == 3);
  CHECK(space_from_name("sup:2").kind == NormKind::sup);
  CHECK(space_from_name("one:2").kind == NormKind::one);
  CHECK(space_from_name("lp:2:3").kind == NormKind::p);
  CHECK(space_from_name("real_euclidean:2").real_restricted);
  const Space prod = space_from_name("product:2,1");
  CHECK(prod.kind == NormKind::product);
  CHECK(prod.dim == 3);
  CHECK_THROWS_AS(space_from_name("euclidean"), std::invalid_argument);
  CHECK_THROWS_AS(space_from_name("euclidean:x"), std::invalid_argument);
}

TEST_CASE("applicability filter matches each bound's habitat") {
  CHECK(applicable(TheoremId::HARRIS, Space::Euclidean(1)));
  CHECK_FALSE(applicable(TheoremId::HARRIS, Space::Euclidean(2)));
  CHECK(applicable(TheoremId::T2_5, Space::Product({2, 1})));
  CHECK_FALSE(applicable(TheoremId::T2_5, Space::One(2)));
  CHECK(applicable(TheoremId::T3_10, Space::Sup(2)));
  CHECK_FALSE(applicable(TheoremId::T3_10, Space::One(2)));
  CHECK(applicable(TheoremId::T3_8A, Space::RealEuclidean(2)) ==
        !Space::RealEuclidean(2).real_restricted);
}

TEST_CASE("a small run passes every gate and every check") {
  RunConfig cfg;
  cfg.seed = 2026;
  cfg.samples = 2;
  cfg.theorems = {TheoremId::T2_1, TheoremId::T3_1, TheoremId::T3_10, TheoremId::S5_LAMBDA};
  cfg.domains = {Space::Euclidean(2), Space::Sup(2)};
  const RunReport rep = run(cfg);
  CHECK(rep.exit_code == 0);
  REQUIRE(rep.gates.size() == 4);
  for (const auto& g : rep.gates) CHECK(g.pass);
  CHECK(rep.checks.size() == 2 * 4 * 2);
  for (const auto& c : rep.checks) {
    CHECK(c.pass);
    CHECK(c.residual >= -cfg.tolerance);
  }
}

TEST_CASE("report json carries the schema, gates, and summary") {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.samples = 1;
  cfg.theorems = {TheoremId::T2_2};
  cfg.domains = {Space::Euclidean(1)};
  const RunReport rep = run(cfg);
  const auto j = report_to_json(rep, cfg);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("seed") == 5);
  CHECK(j.at("oracle_gates").size() == 4);
  REQUIRE(j.at("checks").size() == 1);
  const auto& c = j.at("checks")[0];
  CHECK(c.at("theorem") == "T2_2");
  CHECK(c.at("verdict") == "pass");
  CHECK(c.contains("residual"));
  CHECK(c.contains("instance_digest"));
  CHECK(j.at("summary").at("failures") == 0);
  CHECK(j.at("summary").at("exit_code") == 0);
}

TEST_CASE("identical seeds reproduce identical reports") {
  RunConfig cfg;
  cfg.seed = 99;
  cfg.samples = 3;
  cfg.theorems = {TheoremId::T3_2, TheoremId::P3_9};
  cfg.domains = {Space::Euclidean(2)};
  const RunReport a = run(cfg);
  const RunReport b = run(cfg);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].lhs == b.checks[i].lhs);
    CHECK(a.checks[i].rhs == b.checks[i].rhs);
    CHECK(a.checks[i].instance_digest == b.checks[i].instance_digest);
  }
}
