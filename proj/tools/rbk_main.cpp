#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rbk/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rulebook toolkit: validate rulebooks, rank trajectory candidates, "
               "certify refinements, and run the built-in experiments"};
  app.require_subcommand(1);

  rbk::cli::Options opt;
  std::string rulebook_path;
  std::string scenario_path;
  std::string before_path;
  std::string after_path;
  std::string demo_name;

  CLI::App* check = app.add_subcommand("check", "parse and validate a rulebook file");
  check->add_option("rulebook", rulebook_path, "rulebook file")->required();
  check->add_option("--epsilon", opt.epsilon, "override the comparison tolerance");

  CLI::App* rank = app.add_subcommand("rank", "rank a scenario's candidates under a rulebook");
  rank->add_option("rulebook", rulebook_path, "rulebook file")->required();
  rank->add_option("scenario", scenario_path, "scenario file")->required();
  rank->add_option("--epsilon", opt.epsilon, "override the comparison tolerance");
  rank->add_option("--output", opt.output, "text, csv, svg, or json-report");
  rank->add_option("--out", opt.out_path, "write the report to this file");
  rank->add_flag("--all-equivalent", opt.all_equivalent,
                 "list every member of the minimal classes, not one representative");

  CLI::App* compare =
      app.add_subcommand("compare", "certify that one rulebook strictly refines another");
  compare->add_option("before", before_path, "base rulebook file")->required();
  compare->add_option("after", after_path, "candidate refinement rulebook file")->required();
  compare->add_option("scenario", scenario_path, "scenario providing the sample candidates")
      ->required();
  compare->add_option("--epsilon", opt.epsilon, "override the comparison tolerance");

  CLI::App* demo = app.add_subcommand("demo", "run a built-in experiment on embedded fixtures");
  demo->add_option("name", demo_name, "collision, lanechange, or overtake")->required();
  demo->add_option("--out", opt.out_path, "directory for the CSV/SVG outputs");

  CLI::App* fuzz = app.add_subcommand("fuzz", "run the randomized property suites");
  fuzz->add_option("--seed", opt.seed, "seed for the random generators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (check->parsed()) return rbk::cli::run_check(rulebook_path, opt, std::cout, std::cerr);
  if (rank->parsed()) {
    return rbk::cli::run_rank(rulebook_path, scenario_path, opt, std::cout, std::cerr);
  }
  if (compare->parsed()) {
    return rbk::cli::run_compare(before_path, after_path, scenario_path, opt, std::cout,
                                 std::cerr);
  }
  if (demo->parsed()) return rbk::cli::run_demo_cmd(demo_name, opt, std::cout, std::cerr);
  if (fuzz->parsed()) return rbk::cli::run_fuzz(opt, std::cout, std::cerr);
  return 1;
}
