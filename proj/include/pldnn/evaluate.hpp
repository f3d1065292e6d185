#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "network.hpp"

namespace pldnn {

// ============================================================================
// Link triggers
// ============================================================================

/// The trigger table. Total over all polarity/state combinations:
/// positive links fire on a positive pre-end, negative links on a negative
/// pre-end, and nothing fires on a resting pre-end.
constexpr LinkState link_trigger_state(Polarity polarity, NeuronState pre) {
  const bool fires = (polarity == Polarity::Positive && pre == NeuronState::Positive) ||
                     (polarity == Polarity::Negative && pre == NeuronState::Negative);
  return fires ? LinkState::Active : LinkState::Resting;
}

constexpr LinkState link_trigger_state(const ExcitingLink& link, NeuronState pre) {
  return link_trigger_state(link.polarity, pre);
}

constexpr LinkState link_trigger_state(const InhibitoryLink& link, NeuronState pre) {
  return link_trigger_state(link.polarity, pre);
}

/// Conjunction over member link states; identical for CEL and CIL.
inline LinkState composite_state(std::span<const LinkState> members) {
  if (members.empty()) return LinkState::Resting;
  return std::all_of(members.begin(), members.end(), [](LinkState s) { return s == LinkState::Active; })
             ? LinkState::Active
             : LinkState::Resting;
}

// ============================================================================
// Activation state
// ============================================================================

/// Per-evaluation mutable state. Link and group states are recomputed from
/// neuron states every round and are never carried over stale.
struct ActivationState {
  std::vector<NeuronState> neurons;    // indexed by NeuronId
  std::vector<LinkState> exciting;     // trigger state per exciting link
  std::vector<LinkState> inhibitory;   // trigger state per inhibitory link
  std::vector<LinkState> groups;       // composite state per group
  unsigned round = 0;

  bool operator==(const ActivationState&) const = default;

  NeuronState state(NeuronId id) const { return neurons.at(id.value); }
};

namespace detail {

inline void refresh_link_states(const Network& net, ActivationState& act) {
  act.exciting.resize(net.exciting_links().size());
  for (const auto& el : net.exciting_links())
    act.exciting[el.id.value] = link_trigger_state(el, act.neurons[el.pre.value]);
  act.inhibitory.resize(net.inhibitory_links().size());
  for (const auto& il : net.inhibitory_links())
    act.inhibitory[il.id.value] = link_trigger_state(il, act.neurons[il.pre.value]);
  act.groups.resize(net.groups().size());
  for (const auto& g : net.groups()) {
    std::vector<LinkState> members;
    if (g.kind == GroupKind::Cel) {
      members.reserve(g.el_members.size());
      for (const auto m : g.el_members) members.push_back(act.exciting[m.value]);
    } else {
      members.reserve(g.il_members.size());
      for (const auto m : g.il_members) members.push_back(act.inhibitory[m.value]);
    }
    act.groups[g.id.value] = composite_state(members);
  }
}

struct MaskSet {
  std::vector<bool> exciting;  // simple (ungrouped) exciting links
  std::vector<bool> groups;    // CELs
};

// An active simple (ungrouped) inhibitor or an active CIL masks its target.
// A target that sits inside a CEL masks the whole CEL, since breaking one
// member breaks the conjunction.
inline MaskSet masked_units(const Network& net, const ActivationState& act) {
  MaskSet masks;
  masks.exciting.assign(net.exciting_links().size(), false);
  masks.groups.assign(net.groups().size(), false);
  const auto apply = [&](const ExcitationRef& target) {
    if (const auto* el = std::get_if<ExcitingId>(&target)) {
      const auto& link = net.exciting(*el);
      if (link.group)
        masks.groups[link.group->value] = true;
      else
        masks.exciting[el->value] = true;
    } else {
      masks.groups[std::get<GroupId>(target).value] = true;
    }
  };
  for (const auto& il : net.inhibitory_links())
    if (!il.group && act.inhibitory[il.id.value] == LinkState::Active) apply(il.target);
  for (const auto& g : net.groups())
    if (g.kind == GroupKind::Cil && act.groups[g.id.value] == LinkState::Active)
      apply(net.inhibitory(g.il_members.front()).target);
  return masks;
}

// Assumes act's link/group states are fresh for its neuron states.
inline std::vector<ExcitationRef> effective_units(const Network& net, const ActivationState& act) {
  const MaskSet masks = masked_units(net, act);
  std::vector<ExcitationRef> out;
  for (const auto& el : net.exciting_links())
    if (!el.group && act.exciting[el.id.value] == LinkState::Active && !masks.exciting[el.id.value])
      out.push_back(el.id);
  for (const auto& g : net.groups())
    if (g.kind == GroupKind::Cel && act.groups[g.id.value] == LinkState::Active && !masks.groups[g.id.value])
      out.push_back(g.id);
  return out;
}

inline NeuronId unit_post(const Network& net, const ExcitationRef& ref) {
  if (const auto* el = std::get_if<ExcitingId>(&ref)) return net.exciting(*el).post;
  return net.exciting(net.group(std::get<GroupId>(ref)).el_members.front()).post;
}

// One synchronous round. All link states derive from the previous round's
// neuron states; masking and excitation therefore race within the round.
// `allowed`, when given, restricts which neurons may change (layered mode).
// The returned state carries link states refreshed against its own neuron
// states, so it is never internally stale.
inline ActivationState step_round_impl(const Network& net, const ActivationState& act,
                                       const std::vector<bool>* allowed) {
  ActivationState next = act;
  refresh_link_states(net, next);
  for (const auto& unit : effective_units(net, next)) {
    const NeuronId post = unit_post(net, unit);
    if (net.is_declared_input(post)) continue;  // inputs change only by perception
    if (allowed && !(*allowed)[post.value]) continue;
    if (next.neurons[post.value] == NeuronState::Resting) next.neurons[post.value] = NeuronState::Positive;
  }
  refresh_link_states(net, next);
  next.round = act.round + 1;
  return next;
}

}  // namespace detail

// ============================================================================
// Evaluation
// ============================================================================

/// Every active excitation unit that is not masked: simple exciting links
/// outside any CEL plus whole CELs. A unit is masked iff at least one active
/// simple (ungrouped) inhibitory link or active CIL targets it. Recomputed
/// from the activation's neuron states.
inline std::vector<ExcitationRef> effective_excitations(const Network& net, const ActivationState& act) {
  ActivationState fresh = act;
  detail::refresh_link_states(net, fresh);
  return detail::effective_units(net, fresh);
}

/// Units currently targeted by at least one active masker.
inline std::vector<ExcitationRef> masked_excitations(const Network& net, const ActivationState& act) {
  ActivationState fresh = act;
  detail::refresh_link_states(net, fresh);
  const detail::MaskSet masks = detail::masked_units(net, fresh);
  std::vector<ExcitationRef> out;
  for (const auto& el : net.exciting_links())
    if (!el.group && masks.exciting[el.id.value]) out.push_back(el.id);
  for (const auto& g : net.groups())
    if (g.kind == GroupKind::Cel && masks.groups[g.id.value]) out.push_back(g.id);
  return out;
}

/// One synchronous round: recompute simple link states, composite states and
/// masking from the current neuron states, then positively activate every
/// resting non-input neuron that is the post-end of an effective excitation.
/// Activated neurons never change back; the round counter advances by one.
inline ActivationState step_round(const Network& net, const ActivationState& act) {
  return detail::step_round_impl(net, act, nullptr);
}

struct FreeRun {};

/// Layer-by-layer schedule for compiled circuits. Each entry lists the
/// gate-output neurons that settle in that phase; after a phase runs, its
/// still-resting members are coerced to negative (closed-world) so that
/// negative-trigger links over internal signals can fire in later phases.
struct Layered {
  std::vector<std::vector<NeuronId>> layers;
};

using Schedule = std::variant<FreeRun, Layered>;

using InputAssignment = std::map<NeuronId, NeuronState>;

/// Builds the round-zero activation: assigned neurons take their perceived
/// state, everything else rests. Every declared input must be assigned;
/// non-input neurons may be assigned too (observed facts in rule networks).
inline ActivationState initial_activation(const Network& net, const InputAssignment& inputs) {
  ActivationState act;
  act.neurons.assign(net.neurons().size(), NeuronState::Resting);
  for (const auto& [id, state] : inputs) {
    if (!net.has(id)) throw std::invalid_argument("assignment references nonexistent neuron");
    if (state == NeuronState::Resting)
      throw std::invalid_argument("assigned state must be positive or negative: " + net.neuron(id).label);
    act.neurons[id.value] = state;
  }
  for (const auto in : net.inputs())
    if (!inputs.contains(in))
      throw std::invalid_argument("unassigned input neuron: " + net.neuron(in).label);
  detail::refresh_link_states(net, act);
  return act;
}

/// Runs the network to its fixed point and returns the final activation; its
/// round counter is the number of rounds used. Under free-run the positive
/// set grows monotonically, so the fixed point is reached within |neurons|
/// rounds; max_rounds overrides that bound when set.
inline ActivationState evaluate(const Network& net, const InputAssignment& inputs,
                                const Schedule& schedule = FreeRun{},
                                std::optional<unsigned> max_rounds = {}) {
  ActivationState act = initial_activation(net, inputs);
  if (net.neurons().empty()) return act;
  const unsigned limit = max_rounds.value_or(static_cast<unsigned>(net.neurons().size()));

  if (std::holds_alternative<FreeRun>(schedule)) {
    for (;;) {
      ActivationState next = detail::step_round_impl(net, act, nullptr);
      const bool changed = next.neurons != act.neurons;
      act = std::move(next);
      if (!changed) return act;
      if (act.round >= limit)
        throw std::runtime_error("round limit exceeded without reaching a fixed point");
    }
  }

  const auto& layers = std::get<Layered>(schedule).layers;
  for (const auto& layer : layers) {
    std::vector<bool> allowed(net.neurons().size(), false);
    for (const auto id : layer) {
      if (!net.has(id)) throw std::invalid_argument("layer schedule references nonexistent neuron");
      allowed[id.value] = true;
    }
    act = detail::step_round_impl(net, act, &allowed);
    for (const auto id : layer)
      if (act.neurons[id.value] == NeuronState::Resting) act.neurons[id.value] = NeuronState::Negative;
    if (act.round > limit)
      throw std::runtime_error("round limit exceeded during layered evaluation");
  }
  detail::refresh_link_states(net, act);
  return act;
}

}  // namespace pldnn
