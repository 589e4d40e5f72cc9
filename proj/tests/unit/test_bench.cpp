#include <json.hpp>

#include "doctest.h"
#include "psibundle/bench.hpp"
#include "psibundle/errors.hpp"

using namespace psb;

namespace {

SuiteConfig config(const std::string& instance, const std::string& suite) {
  SuiteConfig c;
  c.instance = instance;
  c.suite = suite;
  c.timings = false;
  return c;
}

}  // namespace

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(run_suite(config("torus", "all")), ConfigInvalid);
  CHECK_THROWS_AS(run_suite(config("cylinder", "homology")), ConfigInvalid);
  auto c = config("cylinder", "gauge");
  c.max_degree = 9;
  CHECK_THROWS_AS(run_suite(c), ConfigInvalid);
  c = config("glq2", "all");
  c.mutate = "drop-q-power";
  CHECK_THROWS_AS(run_suite(c), ConfigInvalid);
  c = config("cylinder", "all");
  c.mutate = "shuffle";
  CHECK_THROWS_AS(run_suite(c), ConfigInvalid);
}

TEST_CASE("reports are sorted, anchored and reproducible") {
  auto c = config("cylinder", "gauge");
  const Report a = run_suite(c);
  c.threads = 1;
  const Report b = run_suite(c);
  CHECK(a.ok());
  CHECK(a.json() == b.json());
  CHECK(a.text() == b.text());
  for (std::size_t i = 0; i + 1 < a.checks.size(); ++i) CHECK(a.checks[i].id < a.checks[i + 1].id);
  for (const auto& r : a.checks) {
    CHECK(r.id.rfind("gauge.", 0) == 0);
    CHECK_FALSE(r.anchor.empty());
    CHECK(r.millis == 0);
  }
  const auto j = nlohmann::json::parse(a.json());
  CHECK(j["instance"] == "cylinder");
  CHECK(j["windows"]["max_degree"] == 4);
  CHECK(j["seed"] == 1);
  REQUIRE(j["checks"].size() == a.checks.size());
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(j["checks"][0]["counterexample"].is_null());
}

TEST_CASE("upstream failures skip dependants") {
  auto c = config("cylinder", "all");
  c.mutate = "drop-q-power";
  const Report r = run_suite(c);
  CHECK_FALSE(r.ok());
  const CheckRecord* ent = r.find("entwining.axioms");
  REQUIRE(ent);
  CHECK(ent->status == CheckStatus::fail);
  REQUIRE(ent->counterexample);
  CHECK(ent->counterexample->find("≠") != std::string::npos);
  const CheckRecord* chi = r.find("bundle.chi");
  REQUIRE(chi);
  CHECK(chi->status == CheckStatus::skipped);
  // Coalgebra checks do not depend on ψ.
  CHECK(r.find("coalgebra.axioms")->status == CheckStatus::pass);
}

TEST_CASE("every mutation is caught with a counterexample") {
  const std::map<std::string, std::string> expected{{"drop-q-power", "entwining.axioms"},
                                                    {"wrong-base", "coalgebra.psiC"},
                                                    {"broken-phi", "gauge.trivialization"},
                                                    {"non-m-gamma", "gauge.condition"},
                                                    {"non-classified-beta", "connection.trivial"},
                                                    {"identity-pi", "connection.projection"}};
  for (const auto& [m, id] : expected) {
    CAPTURE(m);
    auto c = config("cylinder", id.substr(0, id.find('.')));
    c.mutate = m;
    const Report r = run_suite(c);
    const CheckRecord* rec = r.find(id);
    REQUIRE(rec);
    CHECK(rec->status == CheckStatus::fail);
    CHECK(rec->counterexample.has_value());
  }
}

TEST_CASE("numeric pre-pass never overrides the symbolic verdict") {
  auto c = config("cylinder", "entwining");
  c.numeric_q = 2;
  c.seed = 5;
  const Report good = run_suite(c);
  CHECK(good.ok());
  for (const auto& r : good.checks) CHECK(r.notes.back() == "numeric pre-pass: 0/2 samples failed");
  c.mutate = "drop-q-power";
  const Report bad = run_suite(c);
  const CheckRecord* rec = bad.find("entwining.axioms");
  REQUIRE(rec);
  CHECK(rec->status == CheckStatus::fail);
  CHECK(rec->notes.back() == "numeric pre-pass: 2/2 samples failed, confirmed symbolically");
}

TEST_CASE("other instances") {
  const Report g = run_suite(config("glq2", "all"));
  CHECK(g.ok());
  REQUIRE_FALSE(g.conventions.empty());
  CHECK(g.conventions.front() == "coalgebra: C[q^-2,direct]");
  const Report s = run_suite(config("selfbundle", "all"));
  CHECK(s.ok());
  CHECK(s.find("dual.right_multiplication")->status == CheckStatus::pass);
}
