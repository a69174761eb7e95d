// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <exception>

#include "fixtures.hpp"

int main() {
  int failed = 0;
  for (const auto& c : acceptance::criteria()) {
    auto t0 = std::chrono::steady_clock::now();
    acceptance::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s >= c.budget_s) {
      o.ok = false;
      o.detail += " over time budget";
    }
    if (!o.ok) ++failed;
    std::printf("criterion %d: %s  %s (%.3f s of %.0f s)%s%s\n", c.id, o.ok ? "PASS" : "FAIL", c.name.c_str(), s,
                c.budget_s, o.detail.empty() ? "" : "  ", o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
