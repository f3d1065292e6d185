#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace pldnn {

// ============================================================================
// States, polarities, kinds
// ============================================================================

/// Tri-valued neuron state: resting (0), positively activated (1), negatively
/// activated (-1). Negative states only arise from perception (assigned
/// inputs / observed facts); propagation alone never produces them.
enum class NeuronState : int { Resting = 0, Positive = 1, Negative = -1 };

/// Links are resting or activated; an activated link acts on its post-end in
/// the current round.
enum class LinkState : int { Resting = 0, Active = 1 };

/// Positive links trigger on a positively activated pre-end neuron, negative
/// links on a negatively activated one. Shared by exciting (PEL/NEL) and
/// inhibitory (PIL/NIL) links.
enum class Polarity { Positive, Negative };

enum class NeuronKind { Input, Internal, Output };

enum class GroupKind { Cel, Cil };

// ============================================================================
// Ids
// ============================================================================
//
// Ids are dense indices into the owning network's component collections and
// are only meaningful for the network that issued them.

struct NeuronId {
  std::uint32_t value = 0;
  auto operator<=>(const NeuronId&) const = default;
};

struct ExcitingId {
  std::uint32_t value = 0;
  auto operator<=>(const ExcitingId&) const = default;
};

struct InhibitoryId {
  std::uint32_t value = 0;
  auto operator<=>(const InhibitoryId&) const = default;
};

struct GroupId {
  std::uint32_t value = 0;
  auto operator<=>(const GroupId&) const = default;
};

/// A maskable excitation unit: either a simple exciting link that is not part
/// of any CEL, or a whole CEL. Inhibitory links target exactly these units,
/// never neurons.
using ExcitationRef = std::variant<ExcitingId, GroupId>;

// ============================================================================
// Components
// ============================================================================

struct Neuron {
  NeuronId id;
  std::string label;
  NeuronKind kind = NeuronKind::Internal;
  bool operator==(const Neuron&) const = default;
};

struct ExcitingLink {
  ExcitingId id;
  Polarity polarity = Polarity::Positive;  // PEL or NEL
  NeuronId pre;
  NeuronId post;
  std::optional<GroupId> group;  // CEL membership
  bool operator==(const ExcitingLink&) const = default;
};

struct InhibitoryLink {
  InhibitoryId id;
  Polarity polarity = Polarity::Positive;  // PIL or NIL
  NeuronId pre;
  ExcitationRef target;
  std::optional<GroupId> group;  // CIL membership
  bool operator==(const InhibitoryLink&) const = default;
};

/// Conjunction of simple links of one kind. A CEL fires only when every
/// member EL fires; a CIL masks its common target only when every member IL
/// fires. Groups have at least two members; a one-member "group" is just a
/// simple link.
struct CompositeGroup {
  GroupId id;
  GroupKind kind = GroupKind::Cel;
  std::vector<ExcitingId> el_members;    // populated when kind == Cel
  std::vector<InhibitoryId> il_members;  // populated when kind == Cil
  bool operator==(const CompositeGroup&) const = default;
};

// ============================================================================
// Validation
// ============================================================================

enum class ViolationKind {
  DuplicateLabel,
  DanglingReference,
  SelfExcitation,
  GroupTooSmall,
  GroupMemberMismatch,
  CelPostMismatch,
  CilTargetMismatch,
  InhibitorTargetsInhibitor,
  BadEndpointSet,
};

struct Violation {
  ViolationKind kind = ViolationKind::DanglingReference;
  std::string detail;
};

// ============================================================================
// Network
// ============================================================================

/// Topology container. The add_* methods preserve every type invariant and
/// throw std::invalid_argument on violations; from_parts skips the checks so
/// untrusted documents can be loaded first and diagnosed with validate().
///
/// A Network is never mutated by evaluation, so one instance may be shared
/// read-only across any number of concurrent evaluations.
class Network {
 public:
  Network() = default;

  /// Adds a neuron with a fresh id. Labels are unique within a network.
  NeuronId add_neuron(std::string label, NeuronKind kind = NeuronKind::Internal) {
    if (label.empty())
      throw std::invalid_argument("neuron label must be non-empty");
    if (label_index_.contains(label))
      throw std::invalid_argument("duplicate neuron label: " + label);
    const NeuronId id{static_cast<std::uint32_t>(neurons_.size())};
    label_index_.emplace(label, id);
    neurons_.push_back(Neuron{id, std::move(label), kind});
    return id;
  }

  /// Adds a simple exciting link. Self-excitation (pre == post) is rejected.
  ExcitingId add_exciting(Polarity polarity, NeuronId pre, NeuronId post) {
    require_neuron(pre, "exciting link pre-end");
    require_neuron(post, "exciting link post-end");
    if (pre == post)
      throw std::invalid_argument("self-excitation is not allowed: " + neuron(pre).label);
    const ExcitingId id{static_cast<std::uint32_t>(exciting_.size())};
    exciting_.push_back(ExcitingLink{id, polarity, pre, post, std::nullopt});
    return id;
  }

  /// Adds a simple inhibitory link. The target must be an existing exciting
  /// link or CEL; inhibitors never target neurons or other inhibitors.
  InhibitoryId add_inhibitory(Polarity polarity, NeuronId pre, ExcitationRef target) {
    require_neuron(pre, "inhibitory link pre-end");
    if (const auto* el = std::get_if<ExcitingId>(&target)) {
      if (el->value >= exciting_.size())
        throw std::invalid_argument("inhibitory link targets nonexistent exciting link");
    } else {
      const auto gid = std::get<GroupId>(target);
      if (gid.value >= groups_.size())
        throw std::invalid_argument("inhibitory link targets nonexistent group");
      if (groups_[gid.value].kind != GroupKind::Cel)
        throw std::invalid_argument("inhibitory link may not target a CIL");
    }
    const InhibitoryId id{static_cast<std::uint32_t>(inhibitory_.size())};
    inhibitory_.push_back(InhibitoryLink{id, polarity, pre, target, std::nullopt});
    return id;
  }

  /// Groups ungrouped exciting links sharing one post neuron into a CEL.
  GroupId make_cel(std::vector<ExcitingId> members) {
    if (members.size() < 2)
      throw std::invalid_argument("a CEL needs at least two members");
    for (const auto m : members) {
      if (m.value >= exciting_.size())
        throw std::invalid_argument("CEL member does not exist");
      if (exciting_[m.value].group)
        throw std::invalid_argument("exciting link already belongs to a CEL");
    }
    for (std::size_t i = 1; i < members.size(); ++i) {
      if (members[i] == members[0] || exciting_[members[i].value].post != exciting_[members[0].value].post)
        throw std::invalid_argument("CEL members must be distinct and share one post neuron");
      for (std::size_t j = 1; j < i; ++j)
        if (members[i] == members[j])
          throw std::invalid_argument("CEL members must be distinct and share one post neuron");
    }
    const GroupId id{static_cast<std::uint32_t>(groups_.size())};
    for (const auto m : members) exciting_[m.value].group = id;
    groups_.push_back(CompositeGroup{id, GroupKind::Cel, std::move(members), {}});
    return id;
  }

  /// Groups ungrouped inhibitory links sharing one target into a CIL.
  GroupId make_cil(std::vector<InhibitoryId> members) {
    if (members.size() < 2)
      throw std::invalid_argument("a CIL needs at least two members");
    for (const auto m : members) {
      if (m.value >= inhibitory_.size())
        throw std::invalid_argument("CIL member does not exist");
      if (inhibitory_[m.value].group)
        throw std::invalid_argument("inhibitory link already belongs to a CIL");
    }
    for (std::size_t i = 1; i < members.size(); ++i) {
      if (members[i] == members[0] || inhibitory_[members[i].value].target != inhibitory_[members[0].value].target)
        throw std::invalid_argument("CIL members must be distinct and share one target");
      for (std::size_t j = 1; j < i; ++j)
        if (members[i] == members[j])
          throw std::invalid_argument("CIL members must be distinct and share one target");
    }
    const GroupId id{static_cast<std::uint32_t>(groups_.size())};
    for (const auto m : members) inhibitory_[m.value].group = id;
    groups_.push_back(CompositeGroup{id, GroupKind::Cil, {}, std::move(members)});
    return id;
  }

  void declare_input(NeuronId id) {
    require_neuron(id, "declared input");
    for (const auto existing : inputs_)
      if (existing == id) return;
    inputs_.push_back(id);
  }

  void declare_output(NeuronId id) {
    require_neuron(id, "declared output");
    for (const auto existing : outputs_)
      if (existing == id) return;
    outputs_.push_back(id);
  }

  // --- lookups ---------------------------------------------------------

  std::span<const Neuron> neurons() const { return neurons_; }
  std::span<const ExcitingLink> exciting_links() const { return exciting_; }
  std::span<const InhibitoryLink> inhibitory_links() const { return inhibitory_; }
  std::span<const CompositeGroup> groups() const { return groups_; }
  const std::vector<NeuronId>& inputs() const { return inputs_; }
  const std::vector<NeuronId>& outputs() const { return outputs_; }

  bool has(NeuronId id) const { return id.value < neurons_.size(); }
  bool has(ExcitingId id) const { return id.value < exciting_.size(); }
  bool has(InhibitoryId id) const { return id.value < inhibitory_.size(); }
  bool has(GroupId id) const { return id.value < groups_.size(); }

  const Neuron& neuron(NeuronId id) const { return neurons_.at(id.value); }
  const ExcitingLink& exciting(ExcitingId id) const { return exciting_.at(id.value); }
  const InhibitoryLink& inhibitory(InhibitoryId id) const { return inhibitory_.at(id.value); }
  const CompositeGroup& group(GroupId id) const { return groups_.at(id.value); }

  std::optional<NeuronId> find_neuron(std::string_view label) const {
    const auto it = label_index_.find(std::string(label));
    return it == label_index_.end() ? std::nullopt : std::optional(it->second);
  }

  bool is_declared_input(NeuronId id) const {
    for (const auto in : inputs_)
      if (in == id) return true;
    return false;
  }

  bool operator==(const Network&) const = default;

  // --- unchecked assembly and full validation --------------------------

  /// Assembles a network without any invariant checking. Ids must match the
  /// element positions. Intended for deserialization and for building
  /// deliberately broken networks in tests; follow with validate().
  static Network from_parts(std::vector<Neuron> neurons, std::vector<ExcitingLink> exciting,
                            std::vector<InhibitoryLink> inhibitory, std::vector<CompositeGroup> groups,
                            std::vector<NeuronId> inputs, std::vector<NeuronId> outputs) {
    Network net;
    net.neurons_ = std::move(neurons);
    net.exciting_ = std::move(exciting);
    net.inhibitory_ = std::move(inhibitory);
    net.groups_ = std::move(groups);
    net.inputs_ = std::move(inputs);
    net.outputs_ = std::move(outputs);
    for (const auto& n : net.neurons_) net.label_index_.emplace(n.label, n.id);
    return net;
  }

  /// Re-checks every type invariant and returns all violations found, not
  /// just the first. A network built exclusively through add_* always
  /// validates clean.
  std::vector<Violation> validate() const {
    std::vector<Violation> out;
    const auto add = [&out](ViolationKind kind, std::string detail) {
      out.push_back(Violation{kind, std::move(detail)});
    };

    std::unordered_map<std::string, unsigned> seen_labels;
    for (const auto& n : neurons_) ++seen_labels[n.label];
    for (const auto& [label, count] : seen_labels)
      if (count > 1) add(ViolationKind::DuplicateLabel, "label used " + std::to_string(count) + " times: " + label);

    for (const auto& el : exciting_) {
      const std::string name = "exciting link e" + std::to_string(el.id.value);
      if (!has(el.pre)) add(ViolationKind::DanglingReference, name + " pre-end neuron missing");
      if (!has(el.post)) add(ViolationKind::DanglingReference, name + " post-end neuron missing");
      if (has(el.pre) && el.pre == el.post) add(ViolationKind::SelfExcitation, name + " excites its own pre-end");
      if (el.group) {
        if (!has(*el.group)) {
          add(ViolationKind::DanglingReference, name + " references missing group");
        } else {
          const auto& g = group(*el.group);
          bool listed = false;
          for (const auto m : g.el_members) listed = listed || m == el.id;
          if (g.kind != GroupKind::Cel || !listed)
            add(ViolationKind::GroupMemberMismatch, name + " not listed by its group");
        }
      }
    }

    for (const auto& il : inhibitory_) {
      const std::string name = "inhibitory link i" + std::to_string(il.id.value);
      if (!has(il.pre)) add(ViolationKind::DanglingReference, name + " pre-end neuron missing");
      if (const auto* el = std::get_if<ExcitingId>(&il.target)) {
        if (!has(*el)) add(ViolationKind::DanglingReference, name + " targets missing exciting link");
      } else {
        const auto gid = std::get<GroupId>(il.target);
        if (!has(gid))
          add(ViolationKind::DanglingReference, name + " targets missing group");
        else if (group(gid).kind != GroupKind::Cel)
          add(ViolationKind::InhibitorTargetsInhibitor, name + " targets a CIL");
      }
      if (il.group) {
        if (!has(*il.group)) {
          add(ViolationKind::DanglingReference, name + " references missing group");
        } else {
          const auto& g = group(*il.group);
          bool listed = false;
          for (const auto m : g.il_members) listed = listed || m == il.id;
          if (g.kind != GroupKind::Cil || !listed)
            add(ViolationKind::GroupMemberMismatch, name + " not listed by its group");
        }
      }
    }

    for (const auto& g : groups_) {
      const std::string name = std::string(g.kind == GroupKind::Cel ? "CEL g" : "CIL g") + std::to_string(g.id.value);
      const std::size_t member_count = g.kind == GroupKind::Cel ? g.el_members.size() : g.il_members.size();
      if ((g.kind == GroupKind::Cel && !g.il_members.empty()) || (g.kind == GroupKind::Cil && !g.el_members.empty()))
        add(ViolationKind::GroupMemberMismatch, name + " lists members of the wrong link kind");
      if (member_count < 2) add(ViolationKind::GroupTooSmall, name + " has fewer than two members");
      if (g.kind == GroupKind::Cel) {
        std::optional<NeuronId> post;
        for (const auto m : g.el_members) {
          if (!has(m)) {
            add(ViolationKind::DanglingReference, name + " lists missing exciting link");
            continue;
          }
          if (exciting(m).group != std::optional(g.id))
            add(ViolationKind::GroupMemberMismatch, name + " member does not point back at the group");
          if (post && exciting(m).post != *post)
            add(ViolationKind::CelPostMismatch, name + " members do not share one post neuron");
          post = exciting(m).post;
        }
      } else {
        std::optional<ExcitationRef> target;
        for (const auto m : g.il_members) {
          if (!has(m)) {
            add(ViolationKind::DanglingReference, name + " lists missing inhibitory link");
            continue;
          }
          if (inhibitory(m).group != std::optional(g.id))
            add(ViolationKind::GroupMemberMismatch, name + " member does not point back at the group");
          if (target && !(inhibitory(m).target == *target))
            add(ViolationKind::CilTargetMismatch, name + " members do not share one target");
          target = inhibitory(m).target;
        }
      }
    }

    const auto check_endpoints = [&](const std::vector<NeuronId>& set, const char* what) {
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (!has(set[i])) add(ViolationKind::BadEndpointSet, std::string(what) + " set references missing neuron");
        for (std::size_t j = 0; j < i; ++j)
          if (set[i] == set[j]) add(ViolationKind::BadEndpointSet, std::string(what) + " set lists a neuron twice");
      }
    };
    check_endpoints(inputs_, "input");
    check_endpoints(outputs_, "output");

    return out;
  }

 private:
  void require_neuron(NeuronId id, const char* role) const {
    if (!has(id)) throw std::invalid_argument(std::string(role) + " references nonexistent neuron");
  }

  std::vector<Neuron> neurons_;
  std::vector<ExcitingLink> exciting_;
  std::vector<InhibitoryLink> inhibitory_;
  std::vector<CompositeGroup> groups_;
  std::vector<NeuronId> inputs_;
  std::vector<NeuronId> outputs_;
  std::unordered_map<std::string, NeuronId> label_index_;
};

// ============================================================================
// Human-readable descriptions (traces, diagnostics, CLI output)
// ============================================================================

inline std::string describe(const Network& net, ExcitingId id) {
  const auto& el = net.exciting(id);
  return net.neuron(el.pre).label + "->" + net.neuron(el.post).label;
}

inline std::string describe(const Network& net, const ExcitationRef& ref) {
  if (const auto* el = std::get_if<ExcitingId>(&ref)) return describe(net, *el);
  const auto& g = net.group(std::get<GroupId>(ref));
  std::string pres;
  for (const auto m : g.el_members) {
    if (!pres.empty()) pres += "+";
    pres += net.neuron(net.exciting(m).pre).label;
  }
  const std::string post = g.el_members.empty() ? std::string("?") : net.neuron(net.exciting(g.el_members.front()).post).label;
  return pres + "->" + post;
}

inline std::string describe(const Network& net, InhibitoryId id) {
  const auto& il = net.inhibitory(id);
  return net.neuron(il.pre).label + " -| " + describe(net, il.target);
}

}  // namespace pldnn
