#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "expression.hpp"
#include "gates.hpp"

namespace pldnn {

/// A compiled expression: one input neuron per distinct variable, one gate
/// instance per operator node, and a layer schedule assigning every
/// gate-output neuron its topological depth.
struct Circuit {
  Network network;
  std::map<std::string, NeuronId> variables;
  NeuronId output;
  std::vector<std::vector<NeuronId>> layers;
  std::vector<GateKind> gates;  // in instantiation order
};

namespace detail {

constexpr const char* gate_tag(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
    case GateKind::Not: return "not";
    case GateKind::Nor: return "nor";
    case GateKind::Xor: return "xor";
    case GateKind::Nand: return "nand";
  }
  return "gate";
}

struct CircuitBuilder {
  Circuit circuit;
  unsigned gate_seq = 0;

  NeuronId emit_gate(GateKind kind, const std::vector<NeuronId>& operands, int depth, bool root) {
    // Gate labels contain '.' so they can never collide with variable names.
    std::string label = std::string(gate_tag(kind)) + "." + std::to_string(++gate_seq);
    const NeuronId out = instantiate_gate(circuit.network, kind, operands, std::move(label),
                                          root ? NeuronKind::Output : NeuronKind::Internal);
    if (static_cast<int>(circuit.layers.size()) < depth) circuit.layers.resize(depth);
    circuit.layers[depth - 1].push_back(out);
    circuit.gates.push_back(kind);
    return out;
  }

  // Returns the subcircuit's output neuron and its depth (inputs are depth 0).
  std::pair<NeuronId, int> emit(const Expr& expr, bool root) {
    switch (expr.op) {
      case ExprOp::Var:
        return {circuit.variables.at(expr.name), 0};
      case ExprOp::Not: {
        // !(a & b) fuses into NAND and !(a | b) into NOR; everything else
        // compiles as a NOT gate over the operand subcircuit.
        const Expr& operand = *expr.lhs;
        if (operand.op == ExprOp::And || operand.op == ExprOp::Or) {
          const auto [l, dl] = emit(*operand.lhs, false);
          const auto [r, dr] = emit(*operand.rhs, false);
          const int depth = std::max(dl, dr) + 1;
          const GateKind kind = operand.op == ExprOp::And ? GateKind::Nand : GateKind::Nor;
          return {emit_gate(kind, {l, r}, depth, root), depth};
        }
        const auto [o, d] = emit(operand, false);
        return {emit_gate(GateKind::Not, {o}, d + 1, root), d + 1};
      }
      case ExprOp::And:
      case ExprOp::Or:
      case ExprOp::Xor:
      case ExprOp::Nand:
      case ExprOp::Nor: {
        const auto [l, dl] = emit(*expr.lhs, false);
        const auto [r, dr] = emit(*expr.rhs, false);
        const int depth = std::max(dl, dr) + 1;
        GateKind kind = GateKind::And;
        if (expr.op == ExprOp::Or) kind = GateKind::Or;
        else if (expr.op == ExprOp::Xor) kind = GateKind::Xor;
        else if (expr.op == ExprOp::Nand) kind = GateKind::Nand;
        else if (expr.op == ExprOp::Nor) kind = GateKind::Nor;
        return {emit_gate(kind, {l, r}, depth, root), depth};
      }
    }
    throw std::logic_error("unreachable expression node");
  }
};

}  // namespace detail

/// Compiles a parsed expression by gate instantiation. Subtrees are compiled
/// independently (no sharing), so component counts follow the per-operator
/// gate budgets exactly. Compilation is deterministic: the same expression
/// always produces an identical circuit.
inline Circuit compile_expression(const Expr& expr) {
  detail::CircuitBuilder builder;
  for (const auto& name : variables(expr)) {
    const NeuronId id = builder.circuit.network.add_neuron(name, NeuronKind::Input);
    builder.circuit.network.declare_input(id);
    builder.circuit.variables.emplace(name, id);
  }
  const auto [out, depth] = builder.emit(expr, true);
  (void)depth;
  builder.circuit.output = out;
  builder.circuit.network.declare_output(out);
  return std::move(builder.circuit);
}

/// Maps true to positive and false to negative on the inputs, runs the
/// layered schedule, and reports whether the output neuron ends positive.
inline bool evaluate_circuit(const Circuit& circuit, const std::map<std::string, bool>& assignment,
                             std::optional<unsigned> max_rounds = {}) {
  InputAssignment inputs;
  for (const auto& [name, id] : circuit.variables) {
    const auto it = assignment.find(name);
    if (it == assignment.end()) throw std::invalid_argument("missing variable binding: " + name);
    inputs[id] = it->second ? NeuronState::Positive : NeuronState::Negative;
  }
  const ActivationState final = evaluate(circuit.network, inputs, Layered{circuit.layers}, max_rounds);
  return final.state(circuit.output) == NeuronState::Positive;
}

/// Outputs over all 2^n assignments in lexicographic order (false before
/// true, first variable most significant). Guarded to n <= 20 variables.
inline std::vector<bool> circuit_truth_table(const Circuit& circuit, std::optional<unsigned> max_rounds = {}) {
  const std::size_t n = circuit.variables.size();
  if (n > 20) throw std::invalid_argument("too many variables for a truth table sweep");
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& [name, id] : circuit.variables) names.push_back(name);
  std::vector<bool> table;
  table.reserve(std::size_t{1} << n);
  for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
    std::map<std::string, bool> assignment;
    for (std::size_t j = 0; j < n; ++j)
      assignment[names[j]] = (row >> (n - 1 - j)) & 1u;
    table.push_back(evaluate_circuit(circuit, assignment, max_rounds));
  }
  return table;
}

/// Textual truth table: header of variable names plus `out`, one 0/1 row per
/// assignment. Byte-stable for golden tests.
inline std::string format_truth_table(const Circuit& circuit, std::optional<unsigned> max_rounds = {}) {
  std::string out;
  for (const auto& [name, id] : circuit.variables) out += name + " ";
  out += "out\n";
  const auto table = circuit_truth_table(circuit, max_rounds);
  const std::size_t n = circuit.variables.size();
  for (std::size_t row = 0; row < table.size(); ++row) {
    for (std::size_t j = 0; j < n; ++j) out += ((row >> (n - 1 - j)) & 1u) ? "1 " : "0 ";
    out += table[row] ? "1\n" : "0\n";
  }
  return out;
}

// ============================================================================
// Structure comparison against the SN P reference constructions
// ============================================================================

struct ComparisonReport {
  StructureCounts counts;
  std::vector<GateKind> gates;
  unsigned snp_reference_total = 0;
};

inline ComparisonReport comparison_report(const Circuit& circuit) {
  ComparisonReport report;
  report.counts = structure_counts(circuit.network);
  report.gates = circuit.gates;
  for (const auto kind : circuit.gates) report.snp_reference_total += snp_reference_neurons(kind);
  return report;
}

inline std::string format_comparison_report(const ComparisonReport& report) {
  std::string out = to_string(report.counts) + "\n";
  for (const auto kind : report.gates)
    out += std::string("gate ") + to_string(kind) +
           ": snp_reference_neurons=" + std::to_string(snp_reference_neurons(kind)) + "\n";
  out += "snp_reference_total=" + std::to_string(report.snp_reference_total) + "\n";
  out += "pldnn_neurons=" + std::to_string(report.counts.neurons) + "\n";
  return out;
}

}  // namespace pldnn
