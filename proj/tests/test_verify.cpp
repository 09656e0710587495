#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "pconway/json_io.hpp"
#include "pconway/verify.hpp"

using namespace pconway;

namespace {

constexpr Direction R = Direction::rightward;
constexpr Direction L = Direction::leftward;

QuotientPattern quotient_hopf() {
  return {{}, {CupEvent{0, R}, CupEvent{2, R}, CrossEvent{1, 1}, CrossEvent{1, 1}, CapEvent{0}, CapEvent{0}}};
}

std::string witness(const VerificationReport& r, const std::string& key) {
  for (const auto& [k, v] : r.witness)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST_CASE("congruence for a winding-0 Hopf quotient") {
  ConwayEngine engine;
  for (std::size_t c : {2u, 3u}) {
    const auto r = verify_lemma_4_1(quotient_hopf(), c, 3, engine);
    CHECK(r.outcome == Outcome::pass);
    // Three disjoint Hopf links, and their switched versions, are split.
    CHECK(witness(r, "conway_plus") == "0");
    CHECK(witness(r, "components_zero") == "3");
  }
}

TEST_CASE("congruence preconditions") {
  ConwayEngine engine;
  CHECK(verify_lemma_4_1(quotient_hopf(), 0, 3, engine).outcome == Outcome::not_applicable);
  CHECK(verify_lemma_4_1(quotient_hopf(), 2, 4, engine).outcome == Outcome::not_applicable);
  CHECK(verify_lemma_4_1(quotient_hopf(), 99, 3, engine).outcome == Outcome::not_applicable);
}

TEST_CASE("main statement") {
  ConwayEngine engine;
  const QuotientPattern unknot{{}, {CupEvent{0, R}, CapEvent{0}}};
  const auto split = verify_main_theorem(unknot, 3, engine);
  CHECK(split.outcome == Outcome::pass);
  CHECK(witness(split, "conway") == "0");

  CHECK(verify_main_theorem(unknot, 2, engine).outcome == Outcome::not_applicable);
  CHECK(verify_main_theorem(unknot, 9, engine).outcome == Outcome::not_applicable);
  CHECK(verify_main_theorem(hopf_quotient(), 3, engine).outcome == Outcome::not_applicable);
  CHECK(verify_main_theorem(quotient_hopf(), 3, engine).outcome == Outcome::not_applicable);

  PatternConfig c;
  c.p = 3;
  c.require_os = true;
  c.require_strong = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = verify_main_theorem(random_pattern(c, seed), 3, engine);
    CHECK(r.outcome == Outcome::pass);
  }
}

TEST_CASE("Hopf exclusion at p = 2") {
  ConwayEngine engine;
  const auto r = verify_hopf_counterexample(engine);
  CHECK(r.outcome == Outcome::pass);
  CHECK(witness(r, "conway") == "z");
  CHECK(witness(r, "a0") == "1");
  CHECK(witness(r, "strongly_2_periodic") == "true");
  CHECK(witness(r, "orbitally_separated") == "true");

  CHECK(verify_main_theorem(hopf_quotient(), 3, engine).outcome == Outcome::not_applicable);
  const Lift mirrored = lift(hopf_quotient(-1), 2);
  CHECK(to_string(engine.conway(mirrored.diagram)) == "-z");
}

TEST_CASE("a0 for type-m patterns") {
  ConwayEngine engine;
  const auto r = verify_lemma_4_3({{R, L}, {CrossEvent{0, 1}, CrossEvent{0, 1}}}, 3, engine);
  CHECK(r.outcome == Outcome::pass);
  CHECK(witness(r, "a0_skein") == witness(r, "a0_matrix"));

  const QuotientPattern unknot{{}, {CupEvent{0, R}, CapEvent{0}}};
  CHECK(verify_lemma_4_3(unknot, 3, engine).outcome == Outcome::not_applicable);
  CHECK(verify_lemma_4_3({{R}, {}}, 3, engine).outcome == Outcome::not_applicable);

  PatternConfig c;
  c.p = 5;
  c.boundary_width = 2;
  c.event_count = 5;
  c.require_type_m = 1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto q = random_pattern(c, seed);
    const auto rep = verify_lemma_4_3(q, 5, engine);
    CHECK(rep.outcome == Outcome::pass);
    CHECK(witness(rep, "a0_skein") == witness(rep, "a0_matrix"));
  }
}

TEST_CASE("exhausted budgets are skipped") {
  SkeinOptions tight;
  tight.max_crossings = 2;
  ConwayEngine engine(tight);
  const auto r = verify_main_theorem({{}, {CupEvent{0, R}, CupEvent{2, R}, CrossEvent{1, 1},
                                           CrossEvent{1, -1}, CapEvent{0}, CapEvent{0}}},
                                     3, engine);
  CHECK(r.outcome == Outcome::skipped);
}

TEST_CASE("pattern JSON") {
  const QuotientPattern q{{R, L}, {CrossEvent{0, -1}, CapEvent{0}, CupEvent{0, L}}};
  const auto j = pattern_to_json(q);
  CHECK(j["boundary_width"] == 2);
  CHECK(j["boundary_directions"] == nlohmann::json::array({"R", "L"}));
  CHECK(j["events"][0]["type"] == "cross");
  CHECK(j["events"][2]["upper"] == "L");
  CHECK(pattern_from_json(j) == q);

  CHECK_THROWS_AS(pattern_from_json(nlohmann::json::parse(R"({"events": []})")), ValidationError);
  CHECK_THROWS_AS(pattern_from_json(nlohmann::json::parse(
                      R"({"boundary_directions": ["X"], "events": []})")),
                  ValidationError);
  CHECK_THROWS_AS(pattern_from_json(nlohmann::json::parse(
                      R"({"boundary_width": 3, "boundary_directions": ["R"], "events": []})")),
                  ValidationError);
  CHECK_THROWS_AS(pattern_from_json(nlohmann::json::parse(
                      R"({"boundary_directions": [], "events": [{"type": "twist", "pos": 0}]})")),
                  ValidationError);
  CHECK_THROWS_AS(pattern_from_json(nlohmann::json::parse(
                      R"({"schema": 2, "boundary_directions": [], "events": []})")),
                  ValidationError);
}

TEST_CASE("reports round-trip and replay") {
  ConwayEngine engine;
  const auto r = verify_lemma_4_1(quotient_hopf(), 3, 3, engine);
  const auto j = report_to_json(r);
  CHECK(j["schema"] == 1);
  CHECK(!j.contains("elapsed_ms"));
  CHECK(report_to_json(r, true).contains("elapsed_ms"));
  const auto back = report_from_json(j);
  CHECK(report_to_json(back) == j);
  CHECK(report_to_json(replay(back, engine)) == j);
  CHECK(report_to_json(replay(report_from_json(report_to_json(verify_hopf_counterexample(engine))),
                              engine)) == report_to_json(verify_hopf_counterexample(engine)));
}

TEST_CASE("lift JSON") {
  const auto j = lift_to_json(lift(quotient_hopf(), 3), 3);
  CHECK(j["schema"] == 1);
  CHECK(j["components"] == 6);
  CHECK(j["diagram"]["crossings"].size() == 6);
  CHECK(j["orbit_of"].size() == 6);
  CHECK(parse_pd(j["diagram"]["pd"].get<std::string>()).crossing_count() == 6);
}

TEST_CASE("memo cache JSON") {
  MemoCache a;
  ConwayEngine engine({}, std::shared_ptr<MemoCache>(&a, [](MemoCache*) {}));
  engine.conway(lift(hopf_quotient(), 2).diagram);
  engine.conway(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] X[7,9,8,10] X[9,7,10,8]"));
  MemoCache b;
  cache_from_json(cache_to_json(a), b);
  CHECK(b.entries() == a.entries());
}

TEST_CASE("suites") {
  SuiteConfig empty;
  CHECK(run_suite(empty).reports.empty());
  CHECK(run_suite(empty).totals().total() == 0);

  SuiteConfig c;
  c.suites = {"main", "lemma41", "lemma43", "hopf"};
  c.primes = {3, 5};
  c.count = 6;
  c.seed = 7;
  const auto a = run_suite(c);
  CHECK(a.reports.size() == 3 * 2 * 6 + 1);
  CHECK(a.totals().fail == 0);
  for (const auto& [name, n] : a.summary()) CHECK(n.pass > 0);

  // Same seed, different threading and caching: same JSON.
  SuiteConfig c2 = c;
  c2.threads = 3;
  c2.use_cache = false;
  const auto b = run_suite(c2);
  CHECK(suite_to_json(a)["reports"] == suite_to_json(b)["reports"]);
  CHECK(suite_to_json(a).dump() == suite_to_json(run_suite(c)).dump());

  SuiteConfig other = c;
  other.seed = 8;
  CHECK(suite_to_json(run_suite(other))["reports"] != suite_to_json(a)["reports"]);

  SuiteConfig bad;
  bad.suites = {"nonsense"};
  CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(42, "main", 3, 0) == derive_seed(42, "main", 3, 0));
  CHECK(derive_seed(42, "main", 3, 0) != derive_seed(42, "main", 3, 1));
  CHECK(derive_seed(42, "main", 3, 0) != derive_seed(42, "main", 5, 0));
  CHECK(derive_seed(42, "main", 3, 0) != derive_seed(42, "lemma41", 3, 0));
  CHECK(derive_seed(42, "main", 3, 0) != derive_seed(43, "main", 3, 0));
}

TEST_CASE("outcome names") {
  for (auto o : {Outcome::pass, Outcome::fail, Outcome::not_applicable, Outcome::skipped})
    CHECK(outcome_from_string(to_string(o)) == o);
  CHECK_THROWS_AS(outcome_from_string("maybe"), std::invalid_argument);
}

TEST_CASE("failing reports are written as witnesses") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pconway-witness-test";
  fs::remove_all(dir);
  SuiteConfig c;
  c.suites = {"main"};
  c.primes = {3};
  c.count = 3;
  c.witness_dir = dir;
  const auto r = run_suite(c);
  // No failures expected, so nothing is written.
  CHECK(r.totals().fail == 0);
  CHECK((!fs::exists(dir) || fs::is_empty(dir)));
  fs::remove_all(dir);
}
