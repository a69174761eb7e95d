#include <filesystem>

#include "common/soundness.hpp"
#include "doctest.h"
#include "guidecheck/lang/typecheck.hpp"

using namespace guidecheck;

namespace {

std::vector<std::string> fj_files(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(testutil::corpus(dir)))
    if (e.path().extension() == ".fj") out.push_back(dir + "/" + e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Line of the first parse or type error, or 0.
int first_error_line(const std::string& rel) {
  try {
    auto p = testutil::load_program(rel);
    auto errs = fj::fj_typecheck(p);
    return errs.empty() ? 0 : errs.front().pos.line;
  } catch (const ParseError& e) {
    return e.pos().line;
  }
}

}  // namespace

TEST_SUITE("lang") {
  TEST_CASE("linked list program") {
    auto p = testutil::load_program("golden/linked_list.fj");
    CHECK(p.class_names() == std::vector<std::string>{"Node", "Test"});
    REQUIRE(p.field("Node", "next"));
    CHECK(p.field("Node", "next")->type == "Node");
    CHECK(p.labels() == std::map<std::string, std::string>{{"l1", "Node"}, {"l2", "Node"}, {"l3", "Node"}});
    CHECK(p.methods_of("Test") == std::vector<std::string>{"cyclic", "linear"});
    CHECK(p.alphabet().names() == std::vector<std::string>{"a"});
    CHECK(fj::fj_typecheck(p).empty());
  }

  TEST_CASE("subclassing and lookup") {
    auto p = testutil::load_program("soundness/dispatch_deep.fj");
    CHECK(p.preceq("C", "B"));
    CHECK(p.preceq("C", "A"));
    CHECK(p.preceq("C", fj::kObject));
    CHECK(p.preceq("A", "A"));
    CHECK(!p.preceq("A", "B"));
    CHECK(p.lub("C", "A") == "A");
    CHECK(p.lub("C", "Main") == fj::kObject);
    CHECK(p.method_lookup("C", "g").declaring == "B");
    CHECK(p.method_lookup("C", "f").declaring == "A");
    CHECK(p.method_lookup("A", "g").declaring == "A");
    CHECK(!p.find_method("Main", "g"));
    CHECK(p.super("C") == "B");
  }

  TEST_CASE("inherited fields come first") {
    auto p = fj::parse_program("class A { Object x; } class B extends A { Object y; }");
    auto fs = p.fields_of("B");
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].name == "x");
    CHECK(fs[1].name == "y");
    CHECK(p.field_owner("B", "x") == "A");
    CHECK(!p.field_owner("A", "y"));
  }

  TEST_CASE("print and reparse the corpus") {
    std::vector<std::string> files = fj_files("golden");
    for (const auto& f : fj_files("soundness")) files.push_back(f);
    for (const auto& f : fj_files("taint")) files.push_back(f);
    CHECK(files.size() >= 25);
    for (const auto& f : files) {
      INFO(f);
      auto p = testutil::load_program(f);
      auto text = fj::print_program(p);
      auto q = fj::parse_program(text, "printed", p.alphabet());
      CHECK(p == q);
      CHECK(fj::print_program(q) == text);
      CHECK(fj::fj_typecheck(p).empty());
    }
  }

  TEST_CASE("free variables and structural equality") {
    auto p = fj::parse_program("class A { A f; Object m(A x) { A y = x.f; return y.f; } }");
    const auto& body = p.method_lookup("A", "m").decl->body;
    CHECK(fj::free_vars(body) == std::set<std::string>{"x"});
    auto q = fj::parse_program("class A {\n A f;\n Object m(A x) {\n A y = x.f;\n return y.f;\n }\n}");
    CHECK(fj::same_expr(body, q.method_lookup("A", "m").decl->body));
  }

  TEST_CASE("negative programs report the offending line") {
    auto files = fj_files("negative");
    CHECK(files.size() >= 10);
    for (const auto& f : files) {
      INFO(f);
      auto want = testutil::metadata(read_file(testutil::corpus(f)), "error-line");
      REQUIRE(want);
      if (f.find("foreign_event") != std::string::npos) {
        auto sigma = Alphabet({"a"});
        CHECK_THROWS_AS(testutil::load_program(f, sigma), ParseError);
        continue;
      }
      CHECK(first_error_line(f) == std::stoi(*want));
    }
  }
}
