#pragma once

// Shared test utilities: brute-force oracles and seeded random generators
// for networks, expressions and rule libraries.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pldnn/circuit.hpp"
#include "pldnn/rules.hpp"

namespace testutil {

// ---------------------------------------------------------------------------
// Brute-force formula oracle (independent of the network machinery)
// ---------------------------------------------------------------------------

inline bool eval_formula(const pldnn::Expr& expr, const std::map<std::string, bool>& env) {
  using pldnn::ExprOp;
  switch (expr.op) {
    case ExprOp::Var: return env.at(expr.name);
    case ExprOp::Not: return !eval_formula(*expr.lhs, env);
    case ExprOp::And: return eval_formula(*expr.lhs, env) && eval_formula(*expr.rhs, env);
    case ExprOp::Or: return eval_formula(*expr.lhs, env) || eval_formula(*expr.rhs, env);
    case ExprOp::Xor: return eval_formula(*expr.lhs, env) != eval_formula(*expr.rhs, env);
    case ExprOp::Nand: return !(eval_formula(*expr.lhs, env) && eval_formula(*expr.rhs, env));
    case ExprOp::Nor: return !(eval_formula(*expr.lhs, env) || eval_formula(*expr.rhs, env));
  }
  return false;
}

inline std::vector<bool> formula_truth_table(const pldnn::Expr& expr) {
  const auto names = pldnn::variables(expr);
  const std::size_t n = names.size();
  std::vector<bool> table;
  table.reserve(std::size_t{1} << n);
  for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
    std::map<std::string, bool> env;
    for (std::size_t j = 0; j < n; ++j) env[names[j]] = (row >> (n - 1 - j)) & 1u;
    table.push_back(eval_formula(expr, env));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Random expressions
// ---------------------------------------------------------------------------

inline pldnn::ExprPtr random_expression(std::mt19937& rng, int max_depth, unsigned max_vars) {
  std::uniform_int_distribution<unsigned> var_pick(0, max_vars - 1);
  const auto make_leaf = [&]() { return pldnn::make_var("v" + std::to_string(var_pick(rng))); };
  if (max_depth == 0) return make_leaf();
  std::uniform_int_distribution<int> node_pick(0, 8);
  const int choice = node_pick(rng);
  if (choice <= 2) return make_leaf();
  if (choice == 3) return pldnn::make_not(random_expression(rng, max_depth - 1, max_vars));
  const pldnn::ExprOp ops[] = {pldnn::ExprOp::And, pldnn::ExprOp::Or, pldnn::ExprOp::Xor,
                               pldnn::ExprOp::Nand, pldnn::ExprOp::Nor};
  const auto op = ops[static_cast<std::size_t>(choice - 4) % 5];
  return pldnn::make_binary(op, random_expression(rng, max_depth - 1, max_vars),
                            random_expression(rng, max_depth - 1, max_vars));
}

// ---------------------------------------------------------------------------
// Random networks
// ---------------------------------------------------------------------------

struct RandomNetwork {
  pldnn::Network net;
  std::vector<pldnn::NeuronId> declared_inputs;
};

inline RandomNetwork random_network(std::mt19937& rng) {
  using namespace pldnn;
  RandomNetwork result;
  std::uniform_int_distribution<int> neuron_count(2, 10);
  const int n = neuron_count(rng);
  std::vector<NeuronId> ids;
  for (int i = 0; i < n; ++i) ids.push_back(result.net.add_neuron("n" + std::to_string(i)));

  std::uniform_int_distribution<int> input_count(1, std::max(1, n / 2));
  const int inputs = input_count(rng);
  for (int i = 0; i < inputs; ++i) {
    result.net.declare_input(ids[static_cast<std::size_t>(i)]);
    result.declared_inputs.push_back(ids[static_cast<std::size_t>(i)]);
  }

  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> el_count(0, 2 * n);
  std::vector<ExcitingId> els;
  for (int i = el_count(rng); i > 0; --i) {
    const int pre = pick(rng);
    const int post = pick(rng);
    if (pre == post) continue;
    els.push_back(result.net.add_exciting(coin(rng) ? Polarity::Positive : Polarity::Negative,
                                          ids[static_cast<std::size_t>(pre)], ids[static_cast<std::size_t>(post)]));
  }

  // Group some same-post links into CELs.
  std::map<std::uint32_t, std::vector<ExcitingId>> by_post;
  for (const auto el : els) by_post[result.net.exciting(el).post.value].push_back(el);
  std::vector<GroupId> cels;
  for (auto& [post, candidates] : by_post) {
    if (candidates.size() < 2 || !coin(rng)) continue;
    const std::size_t take = std::min<std::size_t>(candidates.size(), coin(rng) ? 2 : 3);
    cels.push_back(result.net.make_cel(std::vector<ExcitingId>(candidates.begin(), candidates.begin() + take)));
  }

  // Possible inhibition targets: ungrouped links and CELs.
  std::vector<ExcitationRef> targets;
  for (const auto el : els)
    if (!result.net.exciting(el).group) targets.push_back(el);
  for (const auto cel : cels) targets.push_back(cel);
  if (targets.empty()) return result;

  std::uniform_int_distribution<std::size_t> target_pick(0, targets.size() - 1);
  std::uniform_int_distribution<int> il_count(0, n);
  std::vector<InhibitoryId> ils;
  for (int i = il_count(rng); i > 0; --i) {
    ils.push_back(result.net.add_inhibitory(coin(rng) ? Polarity::Positive : Polarity::Negative,
                                            ids[static_cast<std::size_t>(pick(rng))], targets[target_pick(rng)]));
  }
  if (coin(rng)) {
    const auto shared_target = targets[target_pick(rng)];
    const auto i1 = result.net.add_inhibitory(coin(rng) ? Polarity::Positive : Polarity::Negative,
                                              ids[static_cast<std::size_t>(pick(rng))], shared_target);
    const auto i2 = result.net.add_inhibitory(coin(rng) ? Polarity::Positive : Polarity::Negative,
                                              ids[static_cast<std::size_t>(pick(rng))], shared_target);
    result.net.make_cil({i1, i2});
  }
  return result;
}

inline pldnn::InputAssignment random_assignment(std::mt19937& rng, const std::vector<pldnn::NeuronId>& inputs) {
  std::bernoulli_distribution coin(0.5);
  pldnn::InputAssignment assignment;
  for (const auto id : inputs)
    assignment[id] = coin(rng) ? pldnn::NeuronState::Positive : pldnn::NeuronState::Negative;
  return assignment;
}

/// Rebuilds an equivalent network with component insertion order permuted;
/// labels identify neurons across the two. Used for order-independence
/// checks.
inline pldnn::Network shuffled_rebuild(const pldnn::Network& src, std::mt19937& rng) {
  using namespace pldnn;
  Network out;

  std::vector<std::size_t> neuron_order(src.neurons().size());
  for (std::size_t i = 0; i < neuron_order.size(); ++i) neuron_order[i] = i;
  std::shuffle(neuron_order.begin(), neuron_order.end(), rng);
  std::vector<NeuronId> neuron_map(src.neurons().size());
  for (const auto old_index : neuron_order) {
    const auto& n = src.neurons()[old_index];
    neuron_map[old_index] = out.add_neuron(n.label, n.kind);
  }

  std::vector<std::size_t> el_order(src.exciting_links().size());
  for (std::size_t i = 0; i < el_order.size(); ++i) el_order[i] = i;
  std::shuffle(el_order.begin(), el_order.end(), rng);
  std::vector<ExcitingId> el_map(src.exciting_links().size());
  for (const auto old_index : el_order) {
    const auto& el = src.exciting_links()[old_index];
    el_map[old_index] = out.add_exciting(el.polarity, neuron_map[el.pre.value], neuron_map[el.post.value]);
  }

  std::vector<GroupId> group_map(src.groups().size());
  for (const auto& g : src.groups()) {
    if (g.kind != GroupKind::Cel) continue;
    std::vector<ExcitingId> members;
    for (const auto m : g.el_members) members.push_back(el_map[m.value]);
    std::shuffle(members.begin(), members.end(), rng);
    group_map[g.id.value] = out.make_cel(std::move(members));
  }

  std::vector<std::size_t> il_order(src.inhibitory_links().size());
  for (std::size_t i = 0; i < il_order.size(); ++i) il_order[i] = i;
  std::shuffle(il_order.begin(), il_order.end(), rng);
  std::vector<InhibitoryId> il_map(src.inhibitory_links().size());
  for (const auto old_index : il_order) {
    const auto& il = src.inhibitory_links()[old_index];
    ExcitationRef target;
    if (const auto* el = std::get_if<ExcitingId>(&il.target)) target = el_map[el->value];
    else target = group_map[std::get<GroupId>(il.target).value];
    il_map[old_index] = out.add_inhibitory(il.polarity, neuron_map[il.pre.value], target);
  }

  for (const auto& g : src.groups()) {
    if (g.kind != GroupKind::Cil) continue;
    std::vector<InhibitoryId> members;
    for (const auto m : g.il_members) members.push_back(il_map[m.value]);
    std::shuffle(members.begin(), members.end(), rng);
    out.make_cil(std::move(members));
  }

  std::vector<NeuronId> inputs;
  for (const auto id : src.inputs()) inputs.push_back(neuron_map[id.value]);
  std::shuffle(inputs.begin(), inputs.end(), rng);
  for (const auto id : inputs) out.declare_input(id);
  for (const auto id : src.outputs()) out.declare_output(neuron_map[id.value]);
  return out;
}

// ---------------------------------------------------------------------------
// Random rule libraries
// ---------------------------------------------------------------------------

inline pldnn::RuleLibrary random_library(std::mt19937& rng, unsigned max_atoms = 8, unsigned max_rules = 6) {
  using namespace pldnn;
  std::uniform_int_distribution<unsigned> atom_count(3, max_atoms);
  const unsigned atoms = atom_count(rng);
  std::uniform_int_distribution<unsigned> rule_count(1, max_rules);
  std::uniform_int_distribution<unsigned> atom_pick(0, atoms - 1);
  std::bernoulli_distribution negative(0.25);

  RuleLibrary lib;
  const unsigned rules = rule_count(rng);
  for (unsigned r = 0; r < rules; ++r) {
    std::uniform_int_distribution<unsigned> ant_count(1, 3);
    std::set<unsigned> chosen;
    const unsigned ants = ant_count(rng);
    while (chosen.size() < ants && chosen.size() + 1 < atoms) chosen.insert(atom_pick(rng));
    unsigned consequent = atom_pick(rng);
    while (chosen.contains(consequent)) consequent = (consequent + 1) % atoms;
    Rule rule;
    rule.id = "r" + std::to_string(r + 1);
    for (const auto index : chosen)
      rule.antecedents.push_back(Literal{"a" + std::to_string(index), !negative(rng)});
    rule.consequent = "a" + std::to_string(consequent);
    lib.add_rule(std::move(rule));
  }
  return lib;
}

/// All signed fact sets over the given atoms up to the given size.
inline std::vector<std::vector<pldnn::Literal>> signed_subsets(const std::vector<std::string>& atoms,
                                                               std::size_t max_size) {
  std::vector<std::vector<pldnn::Literal>> out;
  std::vector<pldnn::Literal> current;
  const auto recurse = [&](std::size_t start, const auto& self) -> void {
    out.push_back(current);
    if (current.size() == max_size) return;
    for (std::size_t i = start; i < atoms.size(); ++i) {
      for (const bool positive : {true, false}) {
        current.push_back(pldnn::Literal{atoms[i], positive});
        self(i + 1, self);
        current.pop_back();
      }
    }
  };
  recurse(0, recurse);
  return out;
}

}  // namespace testutil
