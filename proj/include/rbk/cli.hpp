#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace rbk::cli {

struct Options {
  std::optional<double> epsilon;        // compare-tolerance override
  std::string output = "text";          // text | csv | svg | json-report
  std::optional<std::string> out_path;  // file (rank) or directory (demo)
  bool all_equivalent = false;          // list whole minimal classes, not representatives
  std::uint64_t seed = 0;               // fuzz suites
};

/// Exit codes: 0 success, 1 syntax error, 2 semantic error, 3 evaluation
/// error, 4 refinement or property violation. Diagnostics go to `err`.
int run_check(const std::string& rulebook_path, const Options& opt, std::ostream& out,
              std::ostream& err);
int run_rank(const std::string& rulebook_path, const std::string& scenario_path,
             const Options& opt, std::ostream& out, std::ostream& err);
int run_compare(const std::string& before_path, const std::string& after_path,
                const std::string& scenario_path, const Options& opt, std::ostream& out,
                std::ostream& err);
int run_demo_cmd(const std::string& name, const Options& opt, std::ostream& out,
                 std::ostream& err);
int run_fuzz(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace rbk::cli
