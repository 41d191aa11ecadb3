// Command line front end: construct maps, verify their progression
// properties, inspect the shift sequences behind them, and run the
// evidence searches for orders that defeat the construction.
//
// Exit codes: 0 success (for verify: no equal carry orders), 1 usage or
// input error, 2 verified map has equal carry orders but no monotone
// progression, 3 monotone progression found, 4 search budget exceeded,
// 5 inconclusive (extension search undecided, or decompose needs a
// longer prefix).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "apfree/constructor.hpp"
#include "apfree/dyadic_basis.hpp"
#include "apfree/errors.hpp"
#include "apfree/io.hpp"
#include "apfree/onlyif.hpp"
#include "apfree/order.hpp"
#include "apfree/verifier.hpp"

namespace {

using namespace apfree;

constexpr const char* kVersion = "0.1.0";

std::string version_text() {
  std::ostringstream os;
  os << "apfree " << kVersion << "\nbuiltin orders:";
  for (const std::string& name : builtin_order_names()) os << " " << name;
  return os.str();
}

// Streams resolving "-" to the standard ones.
std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw PreconditionError("cannot open " + path + " for writing");
  return file;
}

std::istream& open_input(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) throw PreconditionError("cannot open " + path);
  return file;
}

struct ConstructArgs {
  std::string source = "N";
  std::string order = "q-standard";
  std::uint32_t depth = 4;
  std::uint64_t budget = SearchBudget{}.max_enumeration_steps;
  std::uint64_t cap = QSequenceOptions{}.candidate_cap;
  std::string emit = "-";
  std::string audit;
  std::string format = "tsv";
};

int run_construct(const ConstructArgs& a) {
  ConstructionOptions opts;
  opts.search_budget.max_enumeration_steps = a.budget;
  opts.qseq.candidate_cap = a.cap;
  ConstructionState st = construct_prefix(parse_source(a.source),
                                          resolve_order(a.order), a.depth,
                                          opts);
  std::ofstream emit_file;
  write_map(open_output(a.emit, emit_file), st.final_map(),
            parse_emit_format(a.format), a.source, a.depth);
  if (!a.audit.empty()) {
    std::ofstream audit_file;
    write_audit(open_output(a.audit, audit_file), st);
  }
  return 0;
}

struct VerifyArgs {
  std::string input = "-";
  std::string order;
  unsigned threads = 1;
  std::string format = "tsv";
};

int run_verify(const VerifyArgs& a) {
  std::ifstream in_file;
  std::istream& in = open_input(a.input, in_file);
  OrderPtr order = a.order.empty() ? nullptr : resolve_order(a.order);
  const FiniteOrderedMap m = read_map(in, std::move(order));
  const bool json = parse_emit_format(a.format) == EmitFormat::JsonLines;

  auto verdict = [&](const char* name,
                     const std::optional<DomainTriple>& t) {
    if (json) {
      std::ostringstream os;
      os << "{\"verdict\":\"" << name << "\"";
      if (t) {
        os << ",\"a\":\"" << t->a << "\",\"b\":\"" << t->b << "\",\"c\":\""
           << t->c << "\"";
      }
      os << "}";
      std::cout << os.str() << "\n";
    } else {
      std::cout << name;
      if (t) std::cout << "\t" << t->a << "\t" << t->b << "\t" << t->c;
      std::cout << "\n";
    }
  };

  const auto mono = find_monotone_3ap(m);
  if (mono) {
    verdict("monotone-3ap", mono);
    if (const auto obstruction = check_maxmin_obstruction(m)) {
      verdict("maxmin-obstruction", obstruction);
    }
    return 3;
  }
  if (const auto bad = find_binary_violation(m, a.threads)) {
    verdict("binary-violation", bad);
    return 2;
  }
  verdict("binary", std::nullopt);
  return 0;
}

struct SeqArgs {
  std::size_t count = 6;
  std::uint64_t cap = QSequenceOptions{}.candidate_cap;
  std::string format = "tsv";
};

int run_qseq(const SeqArgs& a) {
  QSequenceOptions opts;
  opts.candidate_cap = a.cap;
  const QSequence qs = build_canonical_q_sequence(a.count, opts);
  const bool json = parse_emit_format(a.format) == EmitFormat::JsonLines;
  if (!json) std::cout << "# qseq count=" << a.count << " cap=" << a.cap << "\n";
  for (std::size_t n = 0; n < qs.terms.size(); ++n) {
    if (json) {
      std::cout << "{\"n\":" << n << ",\"source_index\":"
                << qs.source_indices[n] << ",\"term\":\"" << qs.terms[n]
                << "\"}\n";
    } else {
      std::cout << n << "\t" << qs.source_indices[n] << "\t" << qs.terms[n]
                << "\n";
    }
  }
  return 0;
}

int run_rseq(const SeqArgs& a) {
  QSequenceOptions opts;
  opts.candidate_cap = a.cap;
  const QSequence qs = build_canonical_q_sequence((a.count + 1) / 2, opts);
  const RSequence rs = build_r_sequence(qs, a.count);
  const bool json = parse_emit_format(a.format) == EmitFormat::JsonLines;
  if (!json) std::cout << "# rseq count=" << a.count << "\n";
  for (std::size_t n = 0; n < rs.terms.size(); ++n) {
    if (json) {
      std::cout << "{\"n\":" << n << ",\"term\":\"" << rs.terms[n] << "\"}\n";
    } else {
      std::cout << n << "\t" << rs.terms[n] << "\n";
    }
  }
  return 0;
}

struct DecomposeArgs {
  std::string value;
  std::size_t depth = 64;
  std::uint64_t cap = QSequenceOptions{}.candidate_cap;
  std::string format = "tsv";
};

int run_decompose(const DecomposeArgs& a) {
  const Rational target = Rational::parse(a.value);
  QSequenceOptions opts;
  opts.candidate_cap = a.cap;
  const QSequence qs = build_canonical_q_sequence((a.depth + 1) / 2, opts);
  const RSequence rs = build_r_sequence(qs, a.depth);
  const auto indices = decompose(target, rs);
  const bool json = parse_emit_format(a.format) == EmitFormat::JsonLines;
  if (!indices) {
    std::cout << (json ? "{\"status\":\"need-longer-prefix\"}"
                       : "NEED_LONGER_PREFIX")
              << "\n";
    return 5;
  }
  if (json) {
    std::cout << "{\"indices\":[";
    for (std::size_t i = 0; i < indices->size(); ++i) {
      std::cout << (i ? "," : "") << (*indices)[i];
    }
    std::cout << "]}\n";
  } else {
    for (std::size_t i = 0; i < indices->size(); ++i) {
      std::cout << (i ? " " : "") << (*indices)[i];
    }
    std::cout << "\n";
  }
  return 0;
}

struct BlockArgs {
  std::string pattern;
  std::size_t max_depth = 32;
  std::uint64_t nodes = 10'000'000;
  std::string format = "tsv";
};

int run_block_search(const BlockArgs& a) {
  const PartialArrangement base = parse_pattern(a.pattern);
  const ExtensionResult res = extension_search(base, a.max_depth, a.nodes);
  const bool json = parse_emit_format(a.format) == EmitFormat::JsonLines;
  std::string witness;
  if (res.witness) {
    std::ostringstream os;
    for (std::size_t i = 0; i < res.witness->by_position.size(); ++i) {
      os << (i ? "," : "") << res.witness->by_position[i];
    }
    witness = os.str();
  }
  if (json) {
    std::cout << "{\"outcome\":\"" << extension_outcome_name(res.outcome)
              << "\",\"deepest_size\":" << res.deepest_size
              << ",\"nodes_visited\":" << res.nodes_visited;
    if (res.witness) std::cout << ",\"witness\":\"" << witness << "\"";
    std::cout << "}\n";
  } else {
    std::cout << extension_outcome_name(res.outcome) << "\t"
              << res.deepest_size << "\t" << res.nodes_visited;
    if (res.witness) std::cout << "\t" << witness;
    std::cout << "\n";
  }
  return res.outcome == ExtensionOutcome::NodeBudgetExceeded ? 5 : 0;
}

struct NegativeArgs {
  std::string source = "N";
  std::string order;
  std::uint32_t depth = 8;
  std::uint64_t budget = 100'000;
  std::uint64_t probe_depth = 32;
  std::string format = "tsv";
};

void print_witness(const std::optional<IsolationWitness>& w, bool json,
                   std::optional<bool> covered) {
  if (!w) {
    std::cout << (json ? "{\"isolated\":null}" : "isolated\tnone") << "\n";
    return;
  }
  if (json) {
    std::cout << "{\"isolated\":\"" << w->point.value() << "\",\"case\":\""
              << isolation_case_name(w->kind) << "\"";
    if (w->x0) std::cout << ",\"x0\":\"" << w->x0->value() << "\"";
    if (w->x1) std::cout << ",\"x1\":\"" << w->x1->value() << "\"";
    if (covered) std::cout << ",\"covered\":" << (*covered ? "true" : "false");
    std::cout << "}\n";
  } else {
    std::cout << "isolated\t" << w->point.value() << "\t"
              << isolation_case_name(w->kind);
    if (w->x0) std::cout << "\tx0=" << w->x0->value();
    if (w->x1) std::cout << "\tx1=" << w->x1->value();
    if (covered) std::cout << "\tcovered=" << (*covered ? "yes" : "no");
    std::cout << "\n";
  }
}

int run_negative(const NegativeArgs& a) {
  ConstructionOptions opts;
  opts.search_budget.max_enumeration_steps = a.budget;
  const OrderPtr order = resolve_order(a.order);
  const NegativeRunReport rep = negative_isolated_run(
      parse_source(a.source), order, a.depth, opts, a.probe_depth);
  const bool json = parse_emit_format(a.format) == EmitFormat::JsonLines;
  if (json) {
    std::cout << "{\"completed_depth\":" << rep.completed_depth
              << ",\"budget_exceeded\":"
              << (rep.budget_exceeded ? "true" : "false");
    if (rep.failed_step) std::cout << ",\"failed_step\":" << *rep.failed_step;
    std::cout << "}\n";
  } else {
    std::cout << "completed-depth\t" << rep.completed_depth << "\n";
    if (rep.budget_exceeded) {
      std::cout << "budget-exceeded\tstep=";
      if (rep.failed_step) std::cout << *rep.failed_step;
      std::cout << "\t" << rep.blocking_context << "\n";
    }
  }
  print_witness(rep.isolated_witness, json,
                rep.isolated_witness ? std::optional<bool>(rep.witness_covered)
                                     : std::nullopt);
  if (!rep.budget_exceeded && order->properties().has_isolated_points) {
    std::cerr << "warning: order declares isolated points but the run "
                 "completed\n";
    return 1;
  }
  return 0;
}

struct IsolatedArgs {
  std::string order;
  std::uint64_t depth = 64;
  std::uint64_t budget = SearchBudget{}.max_enumeration_steps;
  std::string format = "tsv";
};

int run_search_isolated(const IsolatedArgs& a) {
  SearchBudget budget;
  budget.max_enumeration_steps = a.budget;
  const auto witness =
      search_isolated_point(*resolve_order(a.order), a.depth, budget);
  print_witness(witness, parse_emit_format(a.format) == EmitFormat::JsonLines,
                std::nullopt);
  return 0;
}

void add_format_option(CLI::App* cmd, std::string& slot) {
  cmd->add_option("--format", slot, "Output format: tsv or json-lines")
      ->check(CLI::IsMember({"tsv", "json-lines"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Builds injections whose difference carry orders never collide, "
      "verifies finite maps, and probes orders that defeat the process"};
  app.set_version_flag("--version", version_text());
  app.require_subcommand(1);

  ConstructArgs construct_args;
  CLI::App* construct_cmd =
      app.add_subcommand("construct", "Build a map prefix into an order");
  construct_cmd->add_option("--source", construct_args.source,
                            "Source set: N, Z, or Q")
      ->check(CLI::IsMember({"N", "Z", "Q"}));
  construct_cmd->add_option("--order", construct_args.order,
                            "Target order: builtin name or description file");
  construct_cmd->add_option("--depth", construct_args.depth,
                            "Number of doubling steps");
  construct_cmd
      ->add_option("--budget", construct_args.budget,
                   "Enumeration steps allowed per point search")
      ->envname("APFREE_BUDGET");
  construct_cmd->add_option("--cap", construct_args.cap,
                            "Candidate cap per q-sequence term");
  construct_cmd->add_option("--emit", construct_args.emit,
                            "Map output path, - for stdout");
  construct_cmd->add_option("--audit", construct_args.audit,
                            "Also write a JSON-lines step audit here");
  add_format_option(construct_cmd, construct_args.format);

  VerifyArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check a finite map for progressions");
  verify_cmd->add_option("input", verify_args.input,
                         "Map file, - for stdin");
  verify_cmd->add_option("--order", verify_args.order,
                         "Interpret the last column as values in this order");
  verify_cmd->add_option("--threads", verify_args.threads,
                         "Worker threads for the existence scan")
      ->check(CLI::Range(1u, 256u));
  add_format_option(verify_cmd, verify_args.format);

  SeqArgs qseq_args;
  CLI::App* qseq_cmd =
      app.add_subcommand("qseq", "Print the greedy q-sequence");
  qseq_cmd->add_option("--count", qseq_args.count, "Terms to build");
  qseq_cmd->add_option("--cap", qseq_args.cap, "Candidate cap per term");
  add_format_option(qseq_cmd, qseq_args.format);

  SeqArgs rseq_args;
  rseq_args.count = 12;
  CLI::App* rseq_cmd = app.add_subcommand(
      "rseq", "Print the shift sequence for the rationals source");
  rseq_cmd->add_option("--count", rseq_args.count, "Terms to build");
  rseq_cmd->add_option("--cap", rseq_args.cap, "Candidate cap per q term");
  add_format_option(rseq_cmd, rseq_args.format);

  DecomposeArgs decompose_args;
  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "Write a rational as a sum of distinct shift terms");
  decompose_cmd
      ->add_option("value", decompose_args.value, "Rational to decompose")
      ->required();
  decompose_cmd->add_option("--depth", decompose_args.depth,
                            "Shift sequence length to build");
  decompose_cmd->add_option("--cap", decompose_args.cap,
                            "Candidate cap per q term");
  add_format_option(decompose_cmd, decompose_args.format);

  BlockArgs block_args;
  CLI::App* block_cmd = app.add_subcommand(
      "block-search", "Grow a pattern until it extends or blocks");
  block_cmd->add_option("--pattern", block_args.pattern,
                        "Comma-separated values by image position")
      ->required();
  block_cmd->add_option("--max-depth", block_args.max_depth,
                        "Stop after reaching this size");
  block_cmd->add_option("--nodes", block_args.nodes, "Search node budget");
  add_format_option(block_cmd, block_args.format);

  NegativeArgs negative_args;
  CLI::App* negative_cmd = app.add_subcommand(
      "negative-run", "Run the construction expecting a budget failure");
  negative_cmd->add_option("--source", negative_args.source,
                           "Source set: N, Z, or Q")
      ->check(CLI::IsMember({"N", "Z", "Q"}));
  negative_cmd->add_option("--order", negative_args.order, "Target order")
      ->required();
  negative_cmd->add_option("--depth", negative_args.depth,
                           "Doubling steps to attempt");
  negative_cmd
      ->add_option("--budget", negative_args.budget,
                   "Enumeration steps allowed per point search")
      ->envname("APFREE_BUDGET");
  negative_cmd->add_option("--probe-depth", negative_args.probe_depth,
                           "Sample size for the isolated point search");
  add_format_option(negative_cmd, negative_args.format);

  IsolatedArgs isolated_args;
  CLI::App* isolated_cmd = app.add_subcommand(
      "search-isolated", "Look for an isolated point in an order");
  isolated_cmd->add_option("--order", isolated_args.order, "Order to probe")
      ->required();
  isolated_cmd->add_option("--depth", isolated_args.depth,
                           "Enumerated sample size");
  isolated_cmd
      ->add_option("--budget", isolated_args.budget,
                   "Enumeration steps per refutation probe")
      ->envname("APFREE_BUDGET");
  add_format_option(isolated_cmd, isolated_args.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (construct_cmd->parsed()) return run_construct(construct_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (qseq_cmd->parsed()) return run_qseq(qseq_args);
    if (rseq_cmd->parsed()) return run_rseq(rseq_args);
    if (decompose_cmd->parsed()) return run_decompose(decompose_args);
    if (block_cmd->parsed()) return run_block_search(block_args);
    if (negative_cmd->parsed()) return run_negative(negative_args);
    if (isolated_cmd->parsed()) return run_search_isolated(isolated_args);
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
