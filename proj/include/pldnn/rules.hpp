#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "evaluate.hpp"

namespace pldnn {

// ============================================================================
// Rules
// ============================================================================

/// Signed atom: `atom` or `NOT atom`. Negative literals are only satisfied by
/// explicitly observed-negative atoms; derivation never produces negatives.
struct Literal {
  std::string atom;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

struct Rule {
  std::string id;
  std::vector<Literal> antecedents;
  std::string consequent;
  bool operator==(const Rule&) const = default;
};

class RuleLibrary {
 public:
  /// Enforces the rule invariants: non-empty antecedents with distinct atoms,
  /// consequent not among them, unique rule ids.
  void add_rule(Rule rule) {
    if (rule.antecedents.empty()) throw std::invalid_argument("rule has no antecedents: " + rule.id);
    for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
      if (rule.antecedents[i].atom.empty()) throw std::invalid_argument("empty antecedent atom: " + rule.id);
      if (rule.antecedents[i].atom == rule.consequent)
        throw std::invalid_argument("rule derives one of its own antecedents: " + rule.id);
      for (std::size_t j = 0; j < i; ++j)
        if (rule.antecedents[i].atom == rule.antecedents[j].atom)
          throw std::invalid_argument("duplicate antecedent atom in rule: " + rule.id);
    }
    if (rule.consequent.empty()) throw std::invalid_argument("empty consequent: " + rule.id);
    for (const auto& existing : rules_)
      if (existing.id == rule.id) throw std::invalid_argument("duplicate rule id: " + rule.id);
    for (const auto& lit : rule.antecedents) register_atom(lit.atom);
    register_atom(rule.consequent);
    rules_.push_back(std::move(rule));
  }

  std::span<const Rule> rules() const { return rules_; }
  std::span<const std::string> atoms() const { return atoms_; }

  bool has_atom(std::string_view atom) const {
    for (const auto& a : atoms_)
      if (a == atom) return true;
    return false;
  }

 private:
  void register_atom(const std::string& atom) {
    if (!has_atom(atom)) atoms_.push_back(atom);
  }

  std::vector<Rule> rules_;
  std::vector<std::string> atoms_;  // first-mention order
};

// ============================================================================
// Rule file parsing
// ============================================================================

class RuleParseError : public std::runtime_error {
 public:
  RuleParseError(const std::string& message, unsigned line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  unsigned line() const { return line_; }

 private:
  unsigned line_;
};

namespace detail {

inline bool is_rule_atom(std::string_view word) {
  if (word.empty()) return false;
  if (word == "IF" || word == "AND" || word == "THEN" || word == "NOT") return false;
  if (!(std::isalpha(static_cast<unsigned char>(word[0])) || word[0] == '_')) return false;
  for (const char c : word)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) words.emplace_back(line.substr(start, i - start));
  }
  return words;
}

}  // namespace detail

/// One rule per line: `IF <lit> (AND <lit>)* THEN <atom>` where `<lit>` is
/// `atom` or `NOT atom`. `#` starts a comment; blank lines are skipped. A
/// line may carry an explicit id prefix `name:`; otherwise rules are named
/// r1, r2, ... in file order.
inline RuleLibrary parse_rule_library(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  RuleLibrary lib;
  unsigned rule_no = 0;
  for (unsigned line_no = 1; line_no <= lines.size(); ++line_no) {
    std::string_view line = lines[line_no - 1];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = detail::split_words(line);
    if (words.empty()) continue;

    ++rule_no;
    Rule rule;
    rule.id = "r" + std::to_string(rule_no);
    std::size_t i = 0;
    if (words[0].size() > 1 && words[0].back() == ':') {
      rule.id = words[0].substr(0, words[0].size() - 1);
      ++i;
    }
    const auto fail = [line_no](const std::string& message) -> void { throw RuleParseError(message, line_no); };
    const auto next = [&]() -> const std::string& {
      if (i >= words.size()) fail("unexpected end of rule");
      return words[i++];
    };

    if (next() != "IF") fail("expected IF");
    bool saw_then = false;
    while (!saw_then) {
      Literal lit;
      std::string word = next();
      if (word == "NOT") {
        lit.positive = false;
        word = next();
      }
      if (!detail::is_rule_atom(word)) fail("expected atom, got '" + word + "'");
      lit.atom = std::move(word);
      rule.antecedents.push_back(std::move(lit));
      const std::string& sep = next();
      if (sep == "THEN") saw_then = true;
      else if (sep != "AND") fail("expected AND or THEN, got '" + sep + "'");
    }
    const std::string& consequent = next();
    if (!detail::is_rule_atom(consequent)) fail("expected consequent atom, got '" + consequent + "'");
    rule.consequent = consequent;
    if (i != words.size()) fail("trailing tokens after consequent");

    try {
      lib.add_rule(std::move(rule));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  return lib;
}

// ============================================================================
// Compilation to a knowledge network
// ============================================================================

/// Two wirings with different inhibition patterns:
/// Conjunctive groups each rule's antecedent links into a CEL and adds
/// specificity overrides between subset-related rules; Competitive wires one
/// simple link per antecedent and adds cross-rule inhibition from
/// distinguishing atoms onto shared-atom links.
enum class CompileMode { Conjunctive, Competitive };

struct KnowledgeNetwork {
  Network network;
  std::map<std::string, NeuronId> atoms;
  std::map<std::string, std::vector<ExcitationRef>> rule_excitations;
  CompileMode mode = CompileMode::Conjunctive;
};

namespace detail {

inline std::vector<Literal> sorted_literals(const Rule& rule) {
  std::vector<Literal> lits = rule.antecedents;
  std::sort(lits.begin(), lits.end());
  return lits;
}

inline bool strict_subset(const std::vector<Literal>& small, const std::vector<Literal>& big) {
  if (small.size() >= big.size()) return false;
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::set<std::string> atom_set(const Rule& rule) {
  std::set<std::string> atoms;
  for (const auto& lit : rule.antecedents) atoms.insert(lit.atom);
  return atoms;
}

}  // namespace detail

inline KnowledgeNetwork compile_rule_library(const RuleLibrary& lib, CompileMode mode) {
  KnowledgeNetwork knet;
  knet.mode = mode;
  for (const auto& atom : lib.atoms())
    knet.atoms.emplace(atom, knet.network.add_neuron(atom, NeuronKind::Internal));

  const auto rules = lib.rules();

  if (mode == CompileMode::Conjunctive) {
    // One EL per antecedent, grouped into a CEL for multi-antecedent rules.
    std::vector<ExcitationRef> units(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
      std::vector<ExcitingId> els;
      for (const auto& lit : rules[i].antecedents)
        els.push_back(knet.network.add_exciting(lit.positive ? Polarity::Positive : Polarity::Negative,
                                                knet.atoms.at(lit.atom), knet.atoms.at(rules[i].consequent)));
      units[i] = els.size() >= 2 ? ExcitationRef{knet.network.make_cel(els)} : ExcitationRef{els.front()};
      knet.rule_excitations[rules[i].id] = {units[i]};
    }
    // Specificity override: when ant(general) is a strict subset of
    // ant(specific) and the consequents differ, each distinguishing literal
    // contributes an inhibitor onto the general rule's excitation; the
    // inhibitors of one rule pair jointly form a CIL so the override only
    // applies when the specific rule actually fires.
    std::vector<std::vector<Literal>> sorted(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) sorted[i] = detail::sorted_literals(rules[i]);
    for (std::size_t general = 0; general < rules.size(); ++general) {
      for (std::size_t specific = 0; specific < rules.size(); ++specific) {
        if (general == specific || rules[general].consequent == rules[specific].consequent) continue;
        if (!detail::strict_subset(sorted[general], sorted[specific])) continue;
        std::vector<InhibitoryId> ils;
        for (const auto& lit : sorted[specific]) {
          if (std::binary_search(sorted[general].begin(), sorted[general].end(), lit)) continue;
          ils.push_back(knet.network.add_inhibitory(lit.positive ? Polarity::Positive : Polarity::Negative,
                                                    knet.atoms.at(lit.atom), units[general]));
        }
        if (ils.size() >= 2) knet.network.make_cil(ils);
      }
    }
    return knet;
  }

  // Competitive: one simple ungrouped EL per antecedent.
  for (const auto& rule : rules) {
    std::vector<ExcitationRef> units;
    for (const auto& lit : rule.antecedents)
      units.push_back(knet.network.add_exciting(lit.positive ? Polarity::Positive : Polarity::Negative,
                                                knet.atoms.at(lit.atom), knet.atoms.at(rule.consequent)));
    knet.rule_excitations[rule.id] = std::move(units);
  }
  // Cross-rule inhibition: for overlapping rules with different consequents,
  // every distinguishing atom of the competitor inhibits every link from a
  // shared atom onto this rule's consequent.
  std::vector<std::set<std::string>> atom_sets(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) atom_sets[i] = detail::atom_set(rules[i]);
  std::set<std::tuple<std::uint32_t, bool, std::uint32_t>> added;  // (pre, positive, target el)
  for (std::size_t mine = 0; mine < rules.size(); ++mine) {
    for (std::size_t other = 0; other < rules.size(); ++other) {
      if (mine == other || rules[mine].consequent == rules[other].consequent) continue;
      std::vector<std::string> shared;
      for (const auto& atom : atom_sets[mine])
        if (atom_sets[other].contains(atom)) shared.push_back(atom);
      if (shared.empty()) continue;
      const NeuronId my_consequent = knet.atoms.at(rules[mine].consequent);
      for (const auto& lit : rules[other].antecedents) {
        if (atom_sets[mine].contains(lit.atom)) continue;  // not distinguishing
        const NeuronId source = knet.atoms.at(lit.atom);
        for (const auto& shared_atom : shared) {
          const NeuronId pre = knet.atoms.at(shared_atom);
          for (const auto& el : knet.network.exciting_links()) {
            if (el.pre != pre || el.post != my_consequent) continue;
            const auto key = std::make_tuple(source.value, lit.positive, el.id.value);
            if (!added.insert(key).second) continue;
            knet.network.add_inhibitory(lit.positive ? Polarity::Positive : Polarity::Negative, source,
                                        ExcitationRef{el.id});
          }
        }
      }
    }
  }
  return knet;
}

// ============================================================================
// Inference
// ============================================================================

namespace detail {

inline InputAssignment observed_assignment(const KnowledgeNetwork& knet, const std::vector<Literal>& observed) {
  InputAssignment assignment;
  for (const auto& lit : observed) {
    const auto it = knet.atoms.find(lit.atom);
    if (it == knet.atoms.end()) throw std::invalid_argument("unknown atom: " + lit.atom);
    assignment[it->second] = lit.positive ? NeuronState::Positive : NeuronState::Negative;
  }
  return assignment;
}

inline std::set<std::string> derived_atoms(const KnowledgeNetwork& knet, const ActivationState& act,
                                           const std::vector<Literal>& observed) {
  std::set<std::string> derived;
  for (const auto& [atom, id] : knet.atoms)
    if (act.state(id) == NeuronState::Positive) derived.insert(atom);
  for (const auto& lit : observed)
    if (lit.positive) derived.erase(lit.atom);
  return derived;
}

}  // namespace detail

/// Sets the observed atoms as perceived inputs, runs free-run propagation to
/// the fixed point, and returns the positively activated atoms minus the
/// observed positives.
inline std::set<std::string> infer(const KnowledgeNetwork& knet, const std::vector<Literal>& observed,
                                   std::optional<unsigned> max_rounds = {}) {
  const auto assignment = detail::observed_assignment(knet, observed);
  const ActivationState final = evaluate(knet.network, assignment, FreeRun{}, max_rounds);
  return detail::derived_atoms(knet, final, observed);
}

struct TraceRound {
  unsigned round = 0;
  std::vector<NeuronId> activated;             // newly positive this round
  std::vector<InhibitoryId> active_inhibitors; // inhibitors triggered this round
  std::vector<ExcitationRef> masked;           // excitation units under an active masker
  bool fixed_point = false;
};

struct InferenceTrace {
  std::vector<TraceRound> rounds;
  std::set<std::string> derived;
};

/// Same propagation as infer, reported round by round. The final record is
/// the no-change round that confirms the fixed point.
inline InferenceTrace trace_inference(const KnowledgeNetwork& knet, const std::vector<Literal>& observed,
                                      std::optional<unsigned> max_rounds = {}) {
  const auto assignment = detail::observed_assignment(knet, observed);
  const Network& net = knet.network;
  ActivationState act = initial_activation(net, assignment);
  const unsigned limit = max_rounds.value_or(static_cast<unsigned>(std::max<std::size_t>(net.neurons().size(), 1)));

  InferenceTrace trace;
  for (;;) {
    TraceRound record;
    for (const auto& il : net.inhibitory_links())
      if (act.inhibitory[il.id.value] == LinkState::Active) record.active_inhibitors.push_back(il.id);
    record.masked = masked_excitations(net, act);

    const ActivationState next = step_round(net, act);
    record.round = next.round;
    for (const auto& n : net.neurons())
      if (act.neurons[n.id.value] == NeuronState::Resting && next.neurons[n.id.value] == NeuronState::Positive)
        record.activated.push_back(n.id);
    record.fixed_point = record.activated.empty();
    trace.rounds.push_back(record);
    act = next;
    if (record.fixed_point) break;
    if (act.round >= limit) throw std::runtime_error("round limit exceeded without reaching a fixed point");
  }
  trace.derived = detail::derived_atoms(knet, act, observed);
  return trace;
}

// ============================================================================
// Reference forward-chaining oracle
// ============================================================================
//
// Computed directly on the rules, never through a network, with the same
// synchronous-round discipline: every round evaluates rule firings and
// inhibition against the previous round's atom states.

inline std::set<std::string> oracle_infer(const RuleLibrary& lib, const std::vector<Literal>& observed,
                                          CompileMode mode) {
  std::map<std::string, int> state;  // 0 resting, 1 positive, -1 negative
  for (const auto& atom : lib.atoms()) state[atom] = 0;
  for (const auto& lit : observed) {
    if (!lib.has_atom(lit.atom)) throw std::invalid_argument("unknown atom: " + lit.atom);
    state[lit.atom] = lit.positive ? 1 : -1;
  }
  const auto holds = [&state](const Literal& lit) {
    return state.at(lit.atom) == (lit.positive ? 1 : -1);
  };

  const auto rules = lib.rules();

  if (mode == CompileMode::Conjunctive) {
    // Pre-derive, per rule, the distinguishing literal sets of every
    // strictly-more-specific competitor.
    std::vector<std::vector<Literal>> sorted(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) sorted[i] = detail::sorted_literals(rules[i]);
    std::vector<std::vector<std::vector<Literal>>> suppressors(rules.size());
    for (std::size_t general = 0; general < rules.size(); ++general) {
      for (std::size_t specific = 0; specific < rules.size(); ++specific) {
        if (general == specific || rules[general].consequent == rules[specific].consequent) continue;
        if (!detail::strict_subset(sorted[general], sorted[specific])) continue;
        std::vector<Literal> distinguishing;
        for (const auto& lit : sorted[specific])
          if (!std::binary_search(sorted[general].begin(), sorted[general].end(), lit))
            distinguishing.push_back(lit);
        suppressors[general].push_back(std::move(distinguishing));
      }
    }
    for (;;) {
      std::set<std::string> newly;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        if (state.at(rules[i].consequent) != 0) continue;
        bool fires = true;
        for (const auto& lit : rules[i].antecedents) fires = fires && holds(lit);
        if (!fires) continue;
        bool suppressed = false;
        for (const auto& distinguishing : suppressors[i]) {
          bool all = true;
          for (const auto& lit : distinguishing) all = all && holds(lit);
          suppressed = suppressed || all;
        }
        if (!suppressed) newly.insert(rules[i].consequent);
      }
      if (newly.empty()) break;
      for (const auto& atom : newly) state[atom] = 1;
    }
  } else {
    // Edges (source literal -> consequent), deduplicated, plus the maskers
    // that competitive wiring would aim at every edge from a shared atom.
    std::set<std::tuple<std::string, bool, std::string>> edges;
    for (const auto& rule : rules)
      for (const auto& lit : rule.antecedents) edges.insert({lit.atom, lit.positive, rule.consequent});

    std::vector<std::set<std::string>> atom_sets(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) atom_sets[i] = detail::atom_set(rules[i]);
    std::map<std::pair<std::string, std::string>, std::set<Literal>> maskers;  // (source atom, consequent)
    for (std::size_t mine = 0; mine < rules.size(); ++mine) {
      for (std::size_t other = 0; other < rules.size(); ++other) {
        if (mine == other || rules[mine].consequent == rules[other].consequent) continue;
        std::vector<std::string> shared;
        for (const auto& atom : atom_sets[mine])
          if (atom_sets[other].contains(atom)) shared.push_back(atom);
        if (shared.empty()) continue;
        for (const auto& lit : rules[other].antecedents) {
          if (atom_sets[mine].contains(lit.atom)) continue;
          for (const auto& shared_atom : shared)
            maskers[{shared_atom, rules[mine].consequent}].insert(lit);
        }
      }
    }
    for (;;) {
      std::set<std::string> newly;
      for (const auto& [atom, positive, consequent] : edges) {
        if (state.at(consequent) != 0) continue;
        if (!holds(Literal{atom, positive})) continue;
        bool masked = false;
        if (const auto it = maskers.find({atom, consequent}); it != maskers.end())
          for (const auto& masker : it->second) masked = masked || holds(masker);
        if (!masked) newly.insert(consequent);
      }
      if (newly.empty()) break;
      for (const auto& atom : newly) state[atom] = 1;
    }
  }

  std::set<std::string> derived;
  for (const auto& [atom, value] : state)
    if (value == 1) derived.insert(atom);
  for (const auto& lit : observed)
    if (lit.positive) derived.erase(lit.atom);
  return derived;
}

}  // namespace pldnn
