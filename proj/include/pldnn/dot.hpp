#pragma once

#include <string>
#include <vector>

#include "network.hpp"

namespace pldnn {

// ============================================================================
// Graphviz export
// ============================================================================
//
// Colors follow the knowledge-graph rendering convention: green PEL, blue
// NEL, red PIL, orange NIL. DOT cannot attach an edge to an edge, so every
// excitation unit that is the target of an inhibitor gets a small junction
// point node; the unit's edge runs through the junction and inhibitor edges
// end on it. CEL members carry their group id as the edge label.

namespace detail {

inline const char* el_color(Polarity polarity) { return polarity == Polarity::Positive ? "green" : "blue"; }
inline const char* il_color(Polarity polarity) { return polarity == Polarity::Positive ? "red" : "orange"; }

}  // namespace detail

inline std::string export_dot(const Network& net) {
  // Junctions exist per targeted unit. An inhibitor aimed at a grouped
  // exciting link routes to the enclosing CEL's junction, matching the
  // masking semantics.
  std::vector<bool> el_junction(net.exciting_links().size(), false);
  std::vector<bool> group_junction(net.groups().size(), false);
  const auto junction_of = [&net](const ExcitationRef& target) -> std::string {
    if (const auto* el = std::get_if<ExcitingId>(&target)) {
      const auto& link = net.exciting(*el);
      if (link.group) return "jg" + std::to_string(link.group->value);
      return "je" + std::to_string(el->value);
    }
    return "jg" + std::to_string(std::get<GroupId>(target).value);
  };
  for (const auto& il : net.inhibitory_links()) {
    if (const auto* el = std::get_if<ExcitingId>(&il.target)) {
      const auto& link = net.exciting(*el);
      if (link.group) group_junction[link.group->value] = true;
      else el_junction[el->value] = true;
    } else {
      group_junction[std::get<GroupId>(il.target).value] = true;
    }
  }

  std::string out = "digraph pldnn {\n";
  for (const auto& n : net.neurons())
    out += "  n" + std::to_string(n.id.value) + " [label=\"" + n.label + "\"];\n";

  for (std::size_t i = 0; i < el_junction.size(); ++i)
    if (el_junction[i]) out += "  je" + std::to_string(i) + " [shape=point, width=0.08];\n";
  for (std::size_t i = 0; i < group_junction.size(); ++i)
    if (group_junction[i]) out += "  jg" + std::to_string(i) + " [shape=point, width=0.08];\n";

  for (const auto& el : net.exciting_links()) {
    const std::string pre = "n" + std::to_string(el.pre.value);
    const std::string post = "n" + std::to_string(el.post.value);
    const std::string tag = el.group ? std::string(", label=\"g") + std::to_string(el.group->value) + "\"" : "";
    if (el.group && group_junction[el.group->value]) {
      const std::string junction = "jg" + std::to_string(el.group->value);
      out += "  " + pre + " -> " + junction + " [color=" + detail::el_color(el.polarity) + tag +
             ", arrowhead=none];\n";
    } else if (!el.group && el_junction[el.id.value]) {
      const std::string junction = "je" + std::to_string(el.id.value);
      out += "  " + pre + " -> " + junction + " [color=" + detail::el_color(el.polarity) + tag +
             ", arrowhead=none];\n";
      out += "  " + junction + " -> " + post + " [color=" + detail::el_color(el.polarity) + tag + "];\n";
    } else {
      out += "  " + pre + " -> " + post + " [color=" + detail::el_color(el.polarity) + tag + "];\n";
    }
  }

  // Targeted CELs converge through their junction onto the shared post.
  for (const auto& g : net.groups()) {
    if (g.kind != GroupKind::Cel || !group_junction[g.id.value] || g.el_members.empty()) continue;
    const auto post = net.exciting(g.el_members.front()).post;
    out += "  jg" + std::to_string(g.id.value) + " -> n" + std::to_string(post.value) + " [label=\"g" +
           std::to_string(g.id.value) + "\"];\n";
  }

  for (const auto& il : net.inhibitory_links()) {
    const std::string tag = il.group ? std::string(", label=\"g") + std::to_string(il.group->value) + "\"" : "";
    out += "  n" + std::to_string(il.pre.value) + " -> " + junction_of(il.target) +
           " [color=" + detail::il_color(il.polarity) + tag + "];\n";
  }

  out += "}\n";
  return out;
}

}  // namespace pldnn
