#pragma once

#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::vector<Criterion> criteria();

}  // namespace acceptance
