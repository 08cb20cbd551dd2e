#include "rbk/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rbk/bind.hpp"
#include "rbk/demos.hpp"
#include "rbk/dsl.hpp"
#include "rbk/error.hpp"
#include "rbk/ops.hpp"
#include "rbk/render.hpp"
#include "rbk/scenario.hpp"
#include "rbk/selftest.hpp"

namespace rbk::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SemanticError("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SemanticError("cannot write file '" + path + "'");
  out << content;
}

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "syntax error: " << e.what() << "\n";
    return 1;
  } catch (const EvalError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return 3;
  } catch (const SemanticError& e) {
    err << "semantic error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int run_check(const std::string& rulebook_path, const Options& opt, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    RulebookDoc doc = parse_rulebook(read_file(rulebook_path));
    if (opt.epsilon) doc.epsilon = *opt.epsilon;
    const Rulebook rb = bind_rulebook(doc, DrivingParams{});

    const auto ids = rb.rule_ids();
    std::size_t incomparable = 0;
    for (const auto& a : ids) {
      for (const auto& b : ids) {
        if (a != b && !rb.order().leq(a, b) && !rb.order().leq(b, a)) ++incomparable;
      }
    }
    out << "rulebook: " << doc.name << "\n";
    out << "rules: " << doc.rules.size() << "\n";
    out << "priority edges: " << doc.priorities.size() << "\n";
    out << "groups: " << doc.groups.size() << "\n";
    out << "aggregates: " << doc.aggregates.size() << "\n";
    out << "epsilon: " << fmt(doc.epsilon) << "\n";
    out << "equivalence classes: " << rb.order().equivalence_classes().size() << "\n";
    out << "incomparable pairs: " << incomparable << "\n";
    out << "order: " << (rb.order().is_chain() ? "total" : "partial") << "\n";
    return 0;
  });
}

int run_rank(const std::string& rulebook_path, const std::string& scenario_path,
             const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RulebookDoc doc = parse_rulebook(read_file(rulebook_path));
    if (opt.epsilon) doc.epsilon = *opt.epsilon;
    const ScenarioDoc scenario = parse_scenario(read_file(scenario_path));
    const Rulebook rb = bind_rulebook(doc, scenario.params);
    RankingReport report = rank(rb, scenario.candidate_set());
    if (opt.all_equivalent) report.minimal = report.minimal_all;

    std::string content;
    if (opt.output == "text") {
      content = render_text(report);
    } else if (opt.output == "csv") {
      content = render_csv(report);
    } else if (opt.output == "json-report") {
      content = render_json_report(report);
    } else if (opt.output == "svg") {
      content = render_svg(scenario, report);
    } else {
      throw SemanticError("unknown output format '" + opt.output +
                          "' (expected text, csv, svg, or json-report)");
    }
    if (opt.out_path) {
      write_file(*opt.out_path, content);
      out << "wrote " << *opt.out_path << "\n";
    } else {
      out << content;
    }
    return 0;
  });
}

int run_compare(const std::string& before_path, const std::string& after_path,
                const std::string& scenario_path, const Options& opt, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    RulebookDoc before_doc = parse_rulebook(read_file(before_path));
    RulebookDoc after_doc = parse_rulebook(read_file(after_path));
    if (opt.epsilon) {
      before_doc.epsilon = *opt.epsilon;
      after_doc.epsilon = *opt.epsilon;
    }
    OpRecord op;
    op.detail = before_doc.name + " -> " + after_doc.name;
    op.id_map = transport_map(before_doc, after_doc);

    const ScenarioDoc scenario = parse_scenario(read_file(scenario_path));
    const Rulebook before = bind_rulebook(before_doc, scenario.params);
    const Rulebook after = bind_rulebook(after_doc, scenario.params);
    const CandidateSet cs = scenario.candidate_set();
    cs.validate();
    const RefinementCertificate cert =
        certify_strict_refinement(before, after, cs.realizations, op);

    out << "before: " << before_doc.name << " (" << before.rule_ids().size() << " rules)\n";
    out << "after: " << after_doc.name << " (" << after.rule_ids().size() << " rules)\n";
    out << "sample: " << cs.realizations.size() << " candidates\n";
    for (const auto& [from, to] : op.id_map) {
      if (from != to) out << "mapped: " << from << " -> " << to << "\n";
    }
    out << "strict refinement: " << (cert.strict_preserved ? "preserved" : "VIOLATED") << "\n";
    out << "full refinement: " << (cert.full_preserved ? "preserved" : "not preserved") << "\n";
    if (!cert.strict_preserved) {
      const CertificateViolation& v = *cert.first_violation;
      out << "counterexample: " << v.x << " vs " << v.y << " was " << to_string(v.before)
          << ", now " << to_string(v.after) << "\n";
      return 4;
    }
    return 0;
  });
}

int run_demo_cmd(const std::string& name, const Options& opt, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const DemoResult demo = run_demo(name);
    out << "demo: " << demo.name << "\n";

    std::string line;
    for (const DemoVariant& variant : demo.variants) {
      std::string stem = variant.rulebook_fixture;
      if (stem.size() > 4 && stem.ends_with(".rbk")) stem.resize(stem.size() - 4);
      if (!line.empty()) line += "  |  ";
      line += stem + " selects " + variant.selected;
    }
    out << line << "\n";

    const std::string dir = opt.out_path.value_or(".");
    std::filesystem::create_directories(dir);
    for (const DemoVariant& variant : demo.variants) {
      std::string stem = variant.rulebook_fixture;
      if (stem.size() > 4 && stem.ends_with(".rbk")) stem.resize(stem.size() - 4);
      const std::string base = dir + "/" + demo.name + "_" + stem;
      write_file(base + ".csv", render_csv(variant.report));
      write_file(base + ".svg", render_svg(demo.scenario, variant.report));
      out << "wrote " << base << ".csv\n";
      out << "wrote " << base << ".svg\n";
    }
    return 0;
  });
}

int run_fuzz(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << "seed: " << opt.seed << "\n";
    bool ok = true;
    for (const auto& result : selftest::run_all(opt.seed)) {
      out << result.name << ": " << result.cases << " cases, " << result.failures
          << " failures\n";
      if (!result.passed()) {
        ok = false;
        out << "  first failure: " << result.first_failure << "\n";
      }
    }
    out << (ok ? "all suites passed\n" : "suite failures detected\n");
    return ok ? 0 : 4;
  });
}

}  // namespace rbk::cli
