#include <chrono>

#include "common/soundness.hpp"
#include "doctest.h"

using namespace guidecheck;
using namespace guidecheck::interp;

namespace {

const Alphabet kABC = testutil::letters(3);

Outcome run(const fj::Program& p, const std::string& c, const std::string& m, int fuel = 20,
            const Intrinsics* intr = nullptr) {
  Interpreter in(p, intr);
  return in.run_entry(c, m, fuel);
}

}  // namespace

TEST_SUITE("interp") {
  TEST_CASE("terminating run of the linked list") {
    auto p = testutil::load_program("golden/linked_list.fj");
    auto o = run(p, "Test", "linear");
    REQUIRE(o.kind == Outcome::Terminated);
    CHECK(p.alphabet().show(o.trace) == p.alphabet().show(p.alphabet().parse_word("a a")));
    REQUIRE(o.value != kNull);
    CHECK(o.heap.at(o.value).label == "l1");
  }

  TEST_CASE("cyclic list diverges with a lasso") {
    auto p = testutil::load_program("golden/linked_list.fj");
    auto o = run(p, "Test", "cyclic");
    REQUIRE(o.kind == Outcome::OutOfFuel);
    REQUIRE(o.lasso);
    CHECK(o.lasso->cycle == Word{0});
    CHECK(o.lasso->stem.size() <= 1);
  }

  TEST_CASE("uncaught and caught exceptions") {
    auto p = testutil::load_program("soundness/exc_uncaught.fj", kABC);
    auto o = run(p, "Main", "go");
    REQUIRE(o.kind == Outcome::Thrown);
    CHECK(o.trace == Word{2, 0});
    CHECK(o.heap.at(o.value).cls == "Err");

    auto q = testutil::load_program("soundness/exc_nested.fj", kABC);
    auto r = run(q, "Main", "outer");
    REQUIRE(r.kind == Outcome::Terminated);
    CHECK(r.trace == Word{0, 1, 2});
    CHECK(r.heap.at(r.value).label == "e2");
  }

  TEST_CASE("stuck on a failing cast") {
    auto p = testutil::load_program("soundness/cast.fj", kABC);
    auto o = run(p, "Main", "down");
    REQUIRE(o.kind == Outcome::Stuck);
    CHECK(o.reason == StuckReason::CastFailed);
    CHECK(o.trace == Word{0});
    CHECK(run(p, "Main", "up").kind == Outcome::Terminated);
  }

  TEST_CASE("growing recursion runs out of fuel without a lasso") {
    auto p = testutil::load_program("soundness/div_growing.fj", kABC);
    auto o = run(p, "Chain", "grow", 10);
    CHECK(o.kind == Outcome::OutOfFuel);
    CHECK(!o.lasso);
    CHECK(o.trace.size() >= 5);
  }

  TEST_CASE("enumeration over intrinsic choices") {
    auto p = testutil::load_program("soundness/choice.fj", kABC);
    auto intr = load_config(testutil::corpus("soundness/choice.cfg"), p, kABC);
    Interpreter in(p, &intr);
    auto runs = enumerate_traces(in, "Main", "run", 6);
    REQUIRE(runs.size() > 3);
    for (size_t i = 1; i < runs.size(); ++i) CHECK(runs[i - 1].script < runs[i].script);
    bool short_run = false, lasso = false;
    for (const auto& e : runs) {
      if (e.outcome.kind == Outcome::Terminated && e.outcome.trace == Word{2}) short_run = true;
      if (e.outcome.lasso) lasso = true;
      // Replaying the script reproduces the outcome.
      auto again = in.run_entry("Main", "run", 6, e.script);
      CHECK(again.trace == e.outcome.trace);
      CHECK(again.kind == e.outcome.kind);
    }
    CHECK(short_run);
    CHECK(lasso);
  }

  TEST_CASE("region satisfaction") {
    auto p = testutil::load_program("golden/linked_list.fj");
    auto o = run(p, "Test", "linear");
    RegionMeta meta(p);
    CHECK(satisfies(o.value, o.heap, Region::created_at("l1"), meta));
    CHECK(!satisfies(o.value, o.heap, Region::created_at("l2"), meta));
    CHECK(satisfies(o.value, o.heap, Region::unknown(), meta));
    CHECK(!satisfies(o.value, o.heap, Region::null(), meta));
    CHECK(satisfies(kNull, o.heap, Region::null(), meta));
  }

  TEST_CASE("soundness over the corpus") {
    auto t0 = std::chrono::steady_clock::now();
    testutil::SoundnessStats st;
    auto files = testutil::soundness_corpus();
    CHECK(files.size() >= 20);
    for (const auto& g : testutil::soundness_automata(3, 7))
      for (const auto& f : files) {
        INFO(f);
        testutil::check_soundness(f, g, 24, st);
      }
    for (const auto& v : st.violations) FAIL_CHECK(v);
    CHECK(st.terminated > 0);
    CHECK(st.thrown > 0);
    CHECK(st.lassos > 0);
    MESSAGE("runs " << st.runs << ", ms "
                    << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                           .count());
  }

  TEST_CASE("damaged tables are caught") {
    using T = ClassTableB<ProfileDomain>;
    auto g = testutil::soundness_automata(0, 1).front();
    auto drop = [](auto member) {
      return [member](T& t) {
        for (auto& [s, e] : t.m) (e.*member) = {};
      };
    };
    testutil::SoundnessStats a, b, c, f;
    testutil::check_soundness("soundness/straight.fj", g, 24, a, drop(&MethodEntry<ProfileDomain>::t));
    CHECK(!a.violations.empty());
    testutil::check_soundness("soundness/exc_uncaught.fj", g, 24, b, drop(&MethodEntry<ProfileDomain>::h));
    CHECK(!b.violations.empty());
    testutil::check_soundness("soundness/div_self.fj", g, 24, c, drop(&MethodEntry<ProfileDomain>::s));
    CHECK(!c.violations.empty());
    testutil::check_soundness("soundness/fields.fj", g, 24, f, [](T& t) { t.f.clear(); });
    CHECK(!f.violations.empty());
  }
}
