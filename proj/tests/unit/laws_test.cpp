#include "common/laws.hpp"
#include "doctest.h"

using namespace guidecheck;

TEST_SUITE("laws") {
  TEST_CASE("randomized abstraction laws") {
    auto rep = testutil::run_law_cases(1000, 2024);
    CHECK(rep.cases == 1000);
    for (const auto& [law, n] : rep.checked) {
      INFO(law);
      CHECK(rep.failures[law] == 0);
    }
  }

  TEST_CASE("faithfulness on random guidelines") {
    std::mt19937 rng(99);
    for (int i = 0; i < 60; ++i) {
      auto g = testutil::random_automaton(rng, 1 + i % 3, 1 + i % 2);
      CHECK(testutil::faithfulness_failures(g, 8, 5) == 0);
    }
  }

  TEST_CASE("faithfulness on the corpus guidelines") {
    for (auto name : {"parity_a", "aa_bb", "auth_safety", "log_liveness", "universal"}) {
      INFO(name);
      auto g = load_guideline(testutil::corpus(std::string("golden/") + name + ".gdl"));
      CHECK(testutil::faithfulness_failures(g, 6, 3) == 0);
    }
  }
}
