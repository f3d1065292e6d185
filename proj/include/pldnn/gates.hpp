#pragma once

#include <string>
#include <vector>

#include "evaluate.hpp"

namespace pldnn {

enum class GateKind { And, Or, Not, Nor, Xor, Nand };

constexpr unsigned gate_arity(GateKind kind) { return kind == GateKind::Not ? 1u : 2u; }

constexpr const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Nand: return "NAND";
  }
  return "?";
}

/// Neuron budget of the corresponding SN P system with astrocyte-like
/// control construction; literature reference values, used in reports only.
constexpr unsigned snp_reference_neurons(GateKind kind) {
  switch (kind) {
    case GateKind::And: return 6;
    case GateKind::Or: return 10;
    case GateKind::Not: return 4;
    case GateKind::Nor: return 4;
    case GateKind::Xor: return 7;
    case GateKind::Nand: return 8;
  }
  return 0;
}

struct GateNetwork {
  Network network;
  std::vector<NeuronId> inputs;  // length 1 for NOT, else 2
  NeuronId output;
  GateKind kind = GateKind::And;
};

/// Wires one gate onto existing operand neurons inside `net` and returns the
/// id of the freshly created output neuron. The constructions:
///   AND  - two PELs joined in one CEL
///   OR   - two ungrouped PELs
///   NOT  - one NEL
///   NOR  - two NELs joined in one CEL
///   XOR  - two PELs, plus a PIL from each input targeting the other
///          input's PEL
///   NAND - two ungrouped NELs
inline NeuronId instantiate_gate(Network& net, GateKind kind, const std::vector<NeuronId>& operands,
                                 std::string output_label, NeuronKind output_kind = NeuronKind::Internal) {
  if (operands.size() != gate_arity(kind))
    throw std::invalid_argument(std::string("gate ") + to_string(kind) + " expects " +
                                std::to_string(gate_arity(kind)) + " operands");
  const NeuronId out = net.add_neuron(std::move(output_label), output_kind);
  switch (kind) {
    case GateKind::And: {
      const auto e1 = net.add_exciting(Polarity::Positive, operands[0], out);
      const auto e2 = net.add_exciting(Polarity::Positive, operands[1], out);
      net.make_cel({e1, e2});
      break;
    }
    case GateKind::Or: {
      net.add_exciting(Polarity::Positive, operands[0], out);
      net.add_exciting(Polarity::Positive, operands[1], out);
      break;
    }
    case GateKind::Not: {
      net.add_exciting(Polarity::Negative, operands[0], out);
      break;
    }
    case GateKind::Nor: {
      const auto e1 = net.add_exciting(Polarity::Negative, operands[0], out);
      const auto e2 = net.add_exciting(Polarity::Negative, operands[1], out);
      net.make_cel({e1, e2});
      break;
    }
    case GateKind::Xor: {
      const auto e1 = net.add_exciting(Polarity::Positive, operands[0], out);
      const auto e2 = net.add_exciting(Polarity::Positive, operands[1], out);
      net.add_inhibitory(Polarity::Positive, operands[0], e2);
      net.add_inhibitory(Polarity::Positive, operands[1], e1);
      break;
    }
    case GateKind::Nand: {
      net.add_exciting(Polarity::Negative, operands[0], out);
      net.add_exciting(Polarity::Negative, operands[1], out);
      break;
    }
  }
  return out;
}

/// Builds the standalone gate network with inputs in1[, in2] and output out.
inline GateNetwork build_gate(GateKind kind) {
  Network net;
  std::vector<NeuronId> inputs;
  for (unsigned i = 0; i < gate_arity(kind); ++i)
    inputs.push_back(net.add_neuron("in" + std::to_string(i + 1), NeuronKind::Input));
  const NeuronId out = instantiate_gate(net, kind, inputs, "out", NeuronKind::Output);
  for (const auto id : inputs) net.declare_input(id);
  net.declare_output(out);
  return GateNetwork{std::move(net), std::move(inputs), out, kind};
}

/// Evaluates the gate under free-run for every input vector over
/// {negative, positive}^arity in lexicographic order (-1 before 1).
/// An output entry is true iff the output neuron ends positively activated.
inline std::vector<bool> gate_truth_table(const GateNetwork& gate, std::optional<unsigned> max_rounds = {}) {
  const unsigned n = static_cast<unsigned>(gate.inputs.size());
  std::vector<bool> table;
  table.reserve(1u << n);
  for (unsigned row = 0; row < (1u << n); ++row) {
    InputAssignment assignment;
    for (unsigned j = 0; j < n; ++j) {
      const bool high = (row >> (n - 1 - j)) & 1u;
      assignment[gate.inputs[j]] = high ? NeuronState::Positive : NeuronState::Negative;
    }
    const ActivationState final = evaluate(gate.network, assignment, FreeRun{}, max_rounds);
    table.push_back(final.state(gate.output) == NeuronState::Positive);
  }
  return table;
}

// ============================================================================
// Structure census
// ============================================================================

struct StructureCounts {
  unsigned neurons = 0;
  unsigned pel = 0;
  unsigned nel = 0;
  unsigned pil = 0;
  unsigned nil = 0;
  unsigned cel = 0;
  unsigned cil = 0;
  bool operator==(const StructureCounts&) const = default;
};

inline StructureCounts structure_counts(const Network& net) {
  StructureCounts counts;
  counts.neurons = static_cast<unsigned>(net.neurons().size());
  for (const auto& el : net.exciting_links())
    ++(el.polarity == Polarity::Positive ? counts.pel : counts.nel);
  for (const auto& il : net.inhibitory_links())
    ++(il.polarity == Polarity::Positive ? counts.pil : counts.nil);
  for (const auto& g : net.groups())
    ++(g.kind == GroupKind::Cel ? counts.cel : counts.cil);
  return counts;
}

inline std::string to_string(const StructureCounts& c) {
  return "neurons=" + std::to_string(c.neurons) + " pel=" + std::to_string(c.pel) +
         " nel=" + std::to_string(c.nel) + " pil=" + std::to_string(c.pil) +
         " nil=" + std::to_string(c.nil) + " cel=" + std::to_string(c.cel) +
         " cil=" + std::to_string(c.cil);
}

/// Textual truth table for the CLI: header of input labels plus `out`, one
/// 0/1 row per input vector. Byte-stable.
inline std::string format_gate_table(const GateNetwork& gate, std::optional<unsigned> max_rounds = {}) {
  std::string out;
  for (const auto id : gate.inputs) out += gate.network.neuron(id).label + " ";
  out += "out\n";
  const auto table = gate_truth_table(gate, max_rounds);
  const unsigned n = static_cast<unsigned>(gate.inputs.size());
  for (unsigned row = 0; row < table.size(); ++row) {
    for (unsigned j = 0; j < n; ++j) {
      out += ((row >> (n - 1 - j)) & 1u) ? "1 " : "0 ";
    }
    out += table[row] ? "1\n" : "0\n";
  }
  return out;
}

}  // namespace pldnn
