#pragma once

#include <string>
#include <vector>

namespace hallmhd::cli {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  bool quiet = false;
};

int simulate(const Common& c);
int lp_analyze(const Common& c, const std::string& snapshot);
int verify_lemmas(const Common& c, const std::string& suite, int seeds);
int energy_check(const Common& c, double tolerance);
int diff_check(const Common& c, double tolerance);
int cont_dep(const Common& c, const std::string& eps, const std::string& j);
int report(const std::vector<std::string>& inputs, const std::string& out);

}  // namespace hallmhd::cli
