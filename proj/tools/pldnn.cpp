// pldnn - gate tables, expression circuits, rule inference and DOT export
// for PLDNN logical neural networks.
//
// Exit codes: 0 success, 1 usage error, 2 domain error (parse, validation or
// inference failure). Results go to stdout, diagnostics to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pldnn/pldnn.hpp"

namespace {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<unsigned> max_rounds_from_env() {
  const char* value = std::getenv("PLDNN_MAX_ROUNDS");
  if (value == nullptr || *value == '\0') return std::nullopt;
  try {
    const long parsed = std::stol(value);
    if (parsed <= 0) throw std::invalid_argument("non-positive");
    return static_cast<unsigned>(parsed);
  } catch (const std::exception&) {
    throw DomainError("PLDNN_MAX_ROUNDS must be a positive integer");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw DomainError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

pldnn::GateKind parse_gate_kind(std::string kind) {
  for (auto& c : kind) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  using pldnn::GateKind;
  for (const auto candidate : {GateKind::And, GateKind::Or, GateKind::Not, GateKind::Nor, GateKind::Xor, GateKind::Nand})
    if (kind == pldnn::to_string(candidate)) return candidate;
  throw DomainError("unknown gate kind: " + kind);
}

std::vector<pldnn::Literal> parse_fact_list(const std::string& spec) {
  std::vector<pldnn::Literal> facts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    std::string item = spec.substr(start, end - start);
    start = end + 1;
    if (item.empty()) {
      if (start > spec.size()) break;
      continue;
    }
    pldnn::Literal lit;
    if (item.front() == '!') {
      lit.positive = false;
      item.erase(item.begin());
    }
    if (item.empty()) throw DomainError("empty atom in fact list");
    lit.atom = std::move(item);
    facts.push_back(std::move(lit));
    if (start > spec.size()) break;
  }
  return facts;
}

std::map<std::string, bool> parse_eval_assignment(const std::string& spec) {
  std::map<std::string, bool> assignment;
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    const std::string item = spec.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("malformed assignment entry: " + item);
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    bool parsed = false;
    if (value == "1" || value == "true" || value == "T") parsed = true;
    else if (value == "0" || value == "false" || value == "F") parsed = false;
    else throw DomainError("assignment value must be boolean: " + item);
    assignment[name] = parsed;
  }
  return assignment;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

void print_trace(const pldnn::KnowledgeNetwork& knet, const pldnn::InferenceTrace& trace) {
  const auto& net = knet.network;
  for (const auto& round : trace.rounds) {
    std::vector<std::string> activated;
    for (const auto id : round.activated) activated.push_back(net.neuron(id).label);
    std::vector<std::string> inhibitors;
    for (const auto id : round.active_inhibitors) inhibitors.push_back(pldnn::describe(net, id));
    std::vector<std::string> masked;
    for (const auto& ref : round.masked) masked.push_back(pldnn::describe(net, ref));
    std::cout << "round " << round.round << ": activated=[" << join(activated) << "] inhibitors=["
              << join(inhibitors) << "] masked=[" << join(masked) << "]";
    if (round.fixed_point) std::cout << " (fixed point)";
    std::cout << "\n";
  }
  std::string derived;
  for (const auto& atom : trace.derived) {
    if (!derived.empty()) derived += " ";
    derived += atom;
  }
  std::cout << "derived: " << derived << "\n";
}

struct GateArgs {
  std::string kind;
  bool table = false;
  bool counts = false;
  bool dot = false;
};

struct ExprArgs {
  std::string text;
  bool table = false;
  bool counts = false;
  bool report = false;
  bool dot = false;
  std::string eval;
  bool eval_set = false;
};

struct RulesArgs {
  std::string file;
  std::string mode = "conj";
  std::string infer_spec;
  bool infer_set = false;
  bool trace = false;
  bool dot = false;
};

int run_gate(const GateArgs& args) {
  const int selected = int(args.table) + int(args.counts) + int(args.dot);
  if (selected != 1) {
    std::cerr << "gate requires exactly one of --table, --counts, --dot\n";
    return 1;
  }
  const auto gate = pldnn::build_gate(parse_gate_kind(args.kind));
  if (args.table) {
    std::cout << pldnn::format_gate_table(gate, max_rounds_from_env());
  } else if (args.counts) {
    std::cout << pldnn::to_string(pldnn::structure_counts(gate.network)) << "\n"
              << "snp_reference_neurons=" << pldnn::snp_reference_neurons(gate.kind) << "\n";
  } else {
    std::cout << pldnn::export_dot(gate.network);
  }
  return 0;
}

int run_expr(const ExprArgs& args) {
  const int selected = int(args.table) + int(args.counts) + int(args.report) + int(args.dot) + int(args.eval_set);
  if (selected != 1) {
    std::cerr << "expr requires exactly one of --table, --eval, --counts, --report, --dot\n";
    return 1;
  }
  const auto expr = pldnn::parse_expression(args.text);
  const auto circuit = pldnn::compile_expression(*expr);
  if (args.table) {
    std::cout << pldnn::format_truth_table(circuit, max_rounds_from_env());
  } else if (args.eval_set) {
    const bool result = pldnn::evaluate_circuit(circuit, parse_eval_assignment(args.eval), max_rounds_from_env());
    std::cout << (result ? "1" : "0") << "\n";
  } else if (args.counts) {
    std::cout << pldnn::to_string(pldnn::structure_counts(circuit.network)) << "\n";
  } else if (args.report) {
    std::cout << pldnn::format_comparison_report(pldnn::comparison_report(circuit));
  } else {
    std::cout << pldnn::export_dot(circuit.network);
  }
  return 0;
}

int run_rules(const RulesArgs& args) {
  const int selected = int(args.infer_set) + int(args.dot);
  if (selected != 1) {
    std::cerr << "rules requires exactly one of --infer, --dot\n";
    return 1;
  }
  if (args.trace && !args.infer_set) {
    std::cerr << "--trace requires --infer\n";
    return 1;
  }
  pldnn::CompileMode mode;
  if (args.mode == "conj") mode = pldnn::CompileMode::Conjunctive;
  else if (args.mode == "comp") mode = pldnn::CompileMode::Competitive;
  else {
    std::cerr << "--mode must be conj or comp\n";
    return 1;
  }
  const auto library = pldnn::parse_rule_library(read_file(args.file));
  const auto knet = pldnn::compile_rule_library(library, mode);
  if (args.dot) {
    std::cout << pldnn::export_dot(knet.network);
    return 0;
  }
  const auto observed = parse_fact_list(args.infer_spec);
  if (args.trace) {
    print_trace(knet, pldnn::trace_inference(knet, observed, max_rounds_from_env()));
  } else {
    for (const auto& atom : pldnn::infer(knet, observed, max_rounds_from_env())) std::cout << atom << "\n";
  }
  return 0;
}

int run_export(const std::string& file) {
  const auto net = pldnn::deserialize_network(read_file(file));
  std::cout << pldnn::export_dot(net);
  return 0;
}

int run_validate(const std::string& file) {
  const std::string text = read_file(file);
  pldnn::Network net;
  try {
    net = pldnn::deserialize_network(text);
  } catch (const pldnn::SerializeError& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return 2;
  }
  const auto violations = net.validate();
  if (violations.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& v : violations) std::cout << "violation: " << v.detail << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PLDNN logical neural network toolkit"};
  app.require_subcommand(1);

  GateArgs gate_args;
  auto* gate = app.add_subcommand("gate", "Build one logic gate network");
  gate->add_option("kind", gate_args.kind, "AND, OR, NOT, NOR, XOR or NAND")->required();
  gate->add_flag("--table", gate_args.table, "Print the gate's truth table");
  gate->add_flag("--counts", gate_args.counts, "Print the component census");
  gate->add_flag("--dot", gate_args.dot, "Print the network as Graphviz DOT");

  ExprArgs expr_args;
  auto* expr = app.add_subcommand("expr", "Compile a propositional expression");
  expr->add_option("text", expr_args.text, "Expression, e.g. \"(x1 & x2) | !(x3 & x4)\"")->required();
  expr->add_flag("--table", expr_args.table, "Print the full truth table");
  expr->add_option("--eval", expr_args.eval, "Evaluate one assignment, e.g. x1=1,x2=0")
      ->each([&expr_args](const std::string&) { expr_args.eval_set = true; });
  expr->add_flag("--counts", expr_args.counts, "Print the component census");
  expr->add_flag("--report", expr_args.report, "Compare against SN P reference budgets");
  expr->add_flag("--dot", expr_args.dot, "Print the circuit as Graphviz DOT");

  RulesArgs rules_args;
  auto* rules = app.add_subcommand("rules", "Compile a rule library and run inference");
  rules->add_option("file", rules_args.file, "Rule file, one IF ... THEN ... per line")->required();
  rules->add_option("--mode", rules_args.mode, "Compilation mode: conj or comp");
  rules->add_option("--infer", rules_args.infer_spec, "Observed facts, e.g. yellow,black_strips or !airborne")
      ->each([&rules_args](const std::string&) { rules_args.infer_set = true; });
  rules->add_flag("--trace", rules_args.trace, "Print round-by-round records");
  rules->add_flag("--dot", rules_args.dot, "Print the knowledge network as Graphviz DOT");

  std::string export_file;
  auto* export_cmd = app.add_subcommand("export", "Render a serialized network as DOT");
  export_cmd->add_option("netfile", export_file, "Network document")->required();
  bool export_dot_flag = false;
  export_cmd->add_flag("--dot", export_dot_flag, "Print Graphviz DOT (the only output format)");

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a serialized network document");
  validate_cmd->add_option("netfile", validate_file, "Network document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (gate->parsed()) return run_gate(gate_args);
    if (expr->parsed()) return run_expr(expr_args);
    if (rules->parsed()) return run_rules(rules_args);
    if (export_cmd->parsed()) {
      if (!export_dot_flag) {
        std::cerr << "export requires --dot\n";
        return 1;
      }
      return run_export(export_file);
    }
    if (validate_cmd->parsed()) return run_validate(validate_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
