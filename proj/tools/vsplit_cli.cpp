// vsplit: inspect digraphs, expand stable ones to preorders by splitting
// vertices, verify compression maps, and run the small-graph census.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vsplit/census.hpp"
#include "vsplit/compression.hpp"
#include "vsplit/dg_format.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/expansion.hpp"
#include "vsplit/predicates.hpp"

namespace {

using namespace vsplit;

enum Exit : int { kOk = 0, kUsage = 1, kProperty = 2, kInternal = 3 };

struct CheckArgs {
  std::string file;
  bool json = false;
};

struct ExpandArgs {
  std::string file;
  std::string out;
  std::string trace;
  std::string dot;
};

struct VerifyArgs {
  std::string source;
  std::string target;
  std::string map;
};

struct CensusArgs {
  std::size_t max_vertices = 0;
  std::string obstructions;
  bool validate = false;
  bool count = false;
  bool json = false;
  unsigned jobs = 1;
};

int cmd_check(const CheckArgs& a) {
  const DiGraph g = read_digraph_file(a.file);
  const PropertyReport r = property_report(g);
  if (a.json)
    std::cout << report_to_json(g, r).dump(2) << "\n";
  else
    std::cout << report_to_text(g, r);
  return kOk;
}

int cmd_expand(const ExpandArgs& a) {
  const DiGraph g = read_digraph_file(a.file);
  const ExpansionOutcome out = expand_to_preorder(g);
  const std::string dg = emit_digraph(out.result);
  if (a.out.empty())
    std::cout << dg;
  else
    write_file_atomic(a.out, dg);
  if (!a.trace.empty()) write_file_atomic(a.trace, trace_to_json(out).dump(2) + "\n");
  if (!a.dot.empty()) write_file_atomic(a.dot, emit_digraph(out.result, TextFormat::Dot));
  std::cerr << "expanded in " << out.trace.size() << " iteration(s), +"
            << out.result.size() - g.size() << " vertices\n";
  return kOk;
}

int cmd_verify(const VerifyArgs& a) {
  const DiGraph source = read_digraph_file(a.source);
  const DiGraph target = read_digraph_file(a.target);
  CompressionMap map = [&] {
    try {
      return parse_map(read_text_file(a.map), source, target);
    } catch (const DomainMismatch& e) {
      // A non-total map file is an input error, not a failed property.
      throw Error(e.what());
    }
  }();
  const CompressionVerdict v = verify_compression(map);
  std::cout << describe(v, map) << "\n";
  return is_valid(v) ? kOk : kProperty;
}

int cmd_closure(const std::string& file) {
  const DiGraph g = read_digraph_file(file);
  const DiGraph closed = transitive_closure(g);
  std::cout << "closure: +" << closed.arrow_count() - g.arrow_count() << " arrows, +0 vertices\n";
  try {
    const ExpansionOutcome out = expand_to_preorder(g);
    std::cout << "expansion: +" << out.result.star_arrow_count() - g.star_arrow_count()
              << " arrows, +" << out.result.size() - g.size() << " vertices\n";
  } catch (const PreconditionViolated& e) {
    std::cout << "expansion unavailable: " << e.what() << "\n";
  }
  return kOk;
}

int cmd_census(const CensusArgs& a) {
  if (a.count) {
    std::string line;
    for (std::size_t n = 1; n <= a.max_vertices; ++n)
      line += (n == 1 ? "" : ", ") + std::to_string(count_reflexive(n, EnumerationMode::UpToIsomorphism));
    std::cout << "iso classes: " << line << "\n";
    return kOk;
  }
  if (!a.obstructions.empty()) {
    const auto predicate = parse_predicate(a.obstructions);
    if (!predicate) throw CLI::ValidationError("--obstructions", "unknown predicate '" + a.obstructions + "'");
    const ObstructionSet set = minimal_obstructions(*predicate, a.max_vertices);
    if (a.json) {
      std::cout << obstructions_to_json(set).dump(2) << "\n";
    } else {
      std::cout << "# " << predicate_name(set.predicate) << ", n <= " << set.n_max << ": "
                << set.classes.size() << " minimal obstructions\n";
      for (const DiGraph& g : set.classes) std::cout << "\n" << emit_digraph(g);
    }
    return kOk;
  }
  const ValidationReport report = validate_theorems(a.max_vertices, a.jobs);
  if (a.json)
    std::cout << report_to_json(report).dump(2) << "\n";
  else
    std::cout << report_to_text(report);
  return report.all_passed() ? kOk : kProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Make digraphs transitive by adding vertices instead of arrows"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Report properties, clasps and soloists of a graph");
  check->add_option("file", check_args.file, "Graph in dg format")->required();
  check->add_flag("--json", check_args.json, "Emit JSON");

  ExpandArgs expand_args;
  auto* expand = app.add_subcommand("expand", "Split clasps until the graph is preordered");
  expand->add_option("file", expand_args.file, "Stable graph in dg format")->required();
  expand->add_option("-o,--output", expand_args.out, "Write the result here instead of stdout");
  expand->add_option("--trace", expand_args.trace, "Write the iteration trace (JSON)");
  expand->add_option("--dot", expand_args.dot, "Write the result as DOT");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check a compression map");
  verify->add_option("source", verify_args.source, "Source (expanded) graph")->required();
  verify->add_option("target", verify_args.target, "Target (compressed) graph")->required();
  verify->add_option("map", verify_args.map, "Map file: '<source> <target>' per line")->required();

  std::string closure_file;
  auto* closure = app.add_subcommand("closure", "Compare transitive closure with expansion");
  closure->add_option("file", closure_file, "Graph in dg format")->required();

  CensusArgs census_args;
  auto* census = app.add_subcommand("census", "Enumerate small graphs and check the theorems on them");
  census->add_option("--max-vertices", census_args.max_vertices, "Largest vertex count")
      ->required()
      ->check(CLI::Range(1, 6));
  auto* mode = census->add_option_group("mode");
  mode->add_option("--obstructions", census_args.obstructions,
                   "Minimal obstructions: balanced | stable | unlocked");
  mode->add_flag("--validate", census_args.validate, "Run the theorem sweep");
  mode->add_flag("--count", census_args.count, "Count isomorphism classes");
  mode->require_option(1);
  census->add_flag("--json", census_args.json, "Emit JSON");
  census->add_option("--jobs", census_args.jobs, "Worker threads for --validate")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(check_args);
    if (*expand) return cmd_expand(expand_args);
    if (*verify) return cmd_verify(verify_args);
    if (*closure) return cmd_closure(closure_file);
    return cmd_census(census_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProperty;
  } catch (const InternalInvariantBreached& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
