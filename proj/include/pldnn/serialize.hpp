#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "network.hpp"

namespace pldnn {

class SerializeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ============================================================================
// Network document, version 1
// ============================================================================
//
//   pldnn_network v1
//   neurons:
//   n0 label="in1" kind=input
//   exciting_links:
//   e0 polarity=positive pre=n0 post=n2 group=g0
//   inhibitory_links:
//   i0 polarity=positive pre=n0 target=e1
//   groups:
//   g0 kind=cel members=e0,e1
//   inputs: n0 n1
//   outputs: n2
//
// Sections appear in this order even when empty; entities appear in id order
// with fields in the order shown. Serialization is therefore deterministic
// and the round trip is byte-stable.

namespace detail {

inline std::string escape_label(std::string_view label) {
  std::string out;
  out.reserve(label.size() + 2);
  out += '"';
  for (const char c : label) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline const char* kind_name(NeuronKind kind) {
  switch (kind) {
    case NeuronKind::Input: return "input";
    case NeuronKind::Internal: return "internal";
    case NeuronKind::Output: return "output";
  }
  return "internal";
}

inline const char* polarity_name(Polarity polarity) {
  return polarity == Polarity::Positive ? "positive" : "negative";
}

inline std::string ref_name(const ExcitationRef& ref) {
  if (const auto* el = std::get_if<ExcitingId>(&ref)) return "e" + std::to_string(el->value);
  return "g" + std::to_string(std::get<GroupId>(ref).value);
}

}  // namespace detail

inline std::string serialize_network(const Network& net) {
  std::string out = "pldnn_network v1\n";

  out += "neurons:\n";
  for (const auto& n : net.neurons()) {
    out += "n" + std::to_string(n.id.value) + " label=" + detail::escape_label(n.label) +
           " kind=" + detail::kind_name(n.kind) + "\n";
  }

  out += "exciting_links:\n";
  for (const auto& el : net.exciting_links()) {
    out += "e" + std::to_string(el.id.value) + " polarity=" + detail::polarity_name(el.polarity) +
           " pre=n" + std::to_string(el.pre.value) + " post=n" + std::to_string(el.post.value);
    if (el.group) out += " group=g" + std::to_string(el.group->value);
    out += "\n";
  }

  out += "inhibitory_links:\n";
  for (const auto& il : net.inhibitory_links()) {
    out += "i" + std::to_string(il.id.value) + " polarity=" + detail::polarity_name(il.polarity) +
           " pre=n" + std::to_string(il.pre.value) + " target=" + detail::ref_name(il.target);
    if (il.group) out += " group=g" + std::to_string(il.group->value);
    out += "\n";
  }

  out += "groups:\n";
  for (const auto& g : net.groups()) {
    out += "g" + std::to_string(g.id.value) + " kind=" + (g.kind == GroupKind::Cel ? "cel" : "cil") + " members=";
    bool first = true;
    if (g.kind == GroupKind::Cel) {
      for (const auto m : g.el_members) {
        if (!first) out += ",";
        out += "e" + std::to_string(m.value);
        first = false;
      }
    } else {
      for (const auto m : g.il_members) {
        if (!first) out += ",";
        out += "i" + std::to_string(m.value);
        first = false;
      }
    }
    out += "\n";
  }

  out += "inputs:";
  for (const auto id : net.inputs()) out += " n" + std::to_string(id.value);
  out += "\n";
  out += "outputs:";
  for (const auto id : net.outputs()) out += " n" + std::to_string(id.value);
  out += "\n";
  return out;
}

namespace detail {

class DocumentReader {
 public:
  explicit DocumentReader(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }

  std::string_view next_line() {
    ++line_no_;
    const std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      const auto line = text_.substr(pos_);
      pos_ = text_.size();
      return line;
    }
    const auto line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return line;
  }

  std::string_view peek_line() const {
    const std::size_t end = text_.find('\n', pos_);
    return end == std::string_view::npos ? text_.substr(pos_) : text_.substr(pos_, end - pos_);
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SerializeError("line " + std::to_string(line_no_) + ": " + message);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  unsigned line_no_ = 0;
};

inline std::uint32_t parse_id(const DocumentReader& doc, std::string_view token, char prefix) {
  if (token.size() < 2 || token[0] != prefix)
    doc.fail("expected id with prefix '" + std::string(1, prefix) + "', got '" + std::string(token) + "'");
  std::uint32_t value = 0;
  for (const char c : token.substr(1)) {
    if (c < '0' || c > '9') doc.fail("malformed id: " + std::string(token));
    value = value * 10 + static_cast<std::uint32_t>(c - '0');
  }
  return value;
}

// Consumes "key=<value>" from the head of `rest`. Quoted values keep their
// quotes; unescaping is the caller's job.
inline std::string take_field(const DocumentReader& doc, std::string_view& rest, std::string_view key) {
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  const std::string prefix = std::string(key) + "=";
  if (rest.substr(0, prefix.size()) != prefix) doc.fail("expected field '" + std::string(key) + "'");
  rest.remove_prefix(prefix.size());
  if (!rest.empty() && rest.front() == '"') {
    std::size_t i = 1;
    while (i < rest.size() && rest[i] != '"') {
      if (rest[i] == '\\') ++i;
      ++i;
    }
    if (i >= rest.size()) doc.fail("unterminated quoted value");
    std::string value(rest.substr(0, i + 1));
    rest.remove_prefix(i + 1);
    return value;
  }
  const std::size_t end = rest.find(' ');
  std::string value(end == std::string_view::npos ? rest : rest.substr(0, end));
  rest.remove_prefix(value.size());
  return value;
}

inline std::string unescape_label(const DocumentReader& doc, std::string_view quoted) {
  if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"') doc.fail("label must be quoted");
  std::string out;
  for (std::size_t i = 1; i + 1 < quoted.size(); ++i) {
    if (quoted[i] == '\\' && i + 2 < quoted.size()) {
      ++i;
      out += quoted[i] == 'n' ? '\n' : quoted[i];
      continue;
    }
    out += quoted[i];
  }
  return out;
}

inline Polarity parse_polarity(const DocumentReader& doc, std::string_view token) {
  if (token == "positive") return Polarity::Positive;
  if (token == "negative") return Polarity::Negative;
  doc.fail("unknown polarity: " + std::string(token));
}

}  // namespace detail

inline Network deserialize_network(std::string_view text) {
  detail::DocumentReader doc(text);
  if (doc.done()) throw SerializeError("empty document");
  const auto header = doc.next_line();
  if (header != "pldnn_network v1") {
    if (header.substr(0, 13) == "pldnn_network") doc.fail("unsupported document version");
    doc.fail("not a pldnn network document");
  }

  const auto expect_section = [&doc](std::string_view name) {
    if (doc.done()) doc.fail("missing section '" + std::string(name) + "'");
    const auto line = doc.next_line();
    if (line != name) doc.fail("expected section '" + std::string(name) + "'");
  };
  // Entity lines start with their id prefix followed by a digit; section
  // headers never do.
  const auto in_section = [&doc](char prefix) {
    if (doc.done()) return false;
    const auto line = doc.peek_line();
    return line.size() >= 2 && line[0] == prefix && line[1] >= '0' && line[1] <= '9';
  };

  std::vector<Neuron> neurons;
  std::vector<ExcitingLink> exciting;
  std::vector<InhibitoryLink> inhibitory;
  std::vector<CompositeGroup> groups;

  expect_section("neurons:");
  while (in_section('n')) {
    std::string_view rest = doc.next_line();
    const std::size_t sp = rest.find(' ');
    if (sp == std::string_view::npos) doc.fail("malformed neuron line");
    const auto id = detail::parse_id(doc, rest.substr(0, sp), 'n');
    if (id != neurons.size()) doc.fail("neuron ids must be dense and ordered");
    rest.remove_prefix(sp);
    Neuron n;
    n.id = NeuronId{id};
    n.label = detail::unescape_label(doc, detail::take_field(doc, rest, "label"));
    const auto kind = detail::take_field(doc, rest, "kind");
    if (kind == "input") n.kind = NeuronKind::Input;
    else if (kind == "internal") n.kind = NeuronKind::Internal;
    else if (kind == "output") n.kind = NeuronKind::Output;
    else doc.fail("unknown neuron kind: " + kind);
    if (!rest.empty()) doc.fail("trailing content on neuron line");
    neurons.push_back(std::move(n));
  }

  expect_section("exciting_links:");
  while (in_section('e')) {
    std::string_view rest = doc.next_line();
    const std::size_t sp = rest.find(' ');
    if (sp == std::string_view::npos) doc.fail("malformed exciting link line");
    const auto id = detail::parse_id(doc, rest.substr(0, sp), 'e');
    if (id != exciting.size()) doc.fail("exciting link ids must be dense and ordered");
    rest.remove_prefix(sp);
    ExcitingLink el;
    el.id = ExcitingId{id};
    el.polarity = detail::parse_polarity(doc, detail::take_field(doc, rest, "polarity"));
    el.pre = NeuronId{detail::parse_id(doc, detail::take_field(doc, rest, "pre"), 'n')};
    el.post = NeuronId{detail::parse_id(doc, detail::take_field(doc, rest, "post"), 'n')};
    if (!rest.empty()) el.group = GroupId{detail::parse_id(doc, detail::take_field(doc, rest, "group"), 'g')};
    if (!rest.empty()) doc.fail("trailing content on exciting link line");
    exciting.push_back(el);
  }

  expect_section("inhibitory_links:");
  while (in_section('i')) {
    std::string_view rest = doc.next_line();
    const std::size_t sp = rest.find(' ');
    if (sp == std::string_view::npos) doc.fail("malformed inhibitory link line");
    const auto id = detail::parse_id(doc, rest.substr(0, sp), 'i');
    if (id != inhibitory.size()) doc.fail("inhibitory link ids must be dense and ordered");
    rest.remove_prefix(sp);
    InhibitoryLink il;
    il.id = InhibitoryId{id};
    il.polarity = detail::parse_polarity(doc, detail::take_field(doc, rest, "polarity"));
    il.pre = NeuronId{detail::parse_id(doc, detail::take_field(doc, rest, "pre"), 'n')};
    const auto target = detail::take_field(doc, rest, "target");
    if (!target.empty() && target[0] == 'e') il.target = ExcitingId{detail::parse_id(doc, target, 'e')};
    else il.target = GroupId{detail::parse_id(doc, target, 'g')};
    if (!rest.empty()) il.group = GroupId{detail::parse_id(doc, detail::take_field(doc, rest, "group"), 'g')};
    if (!rest.empty()) doc.fail("trailing content on inhibitory link line");
    inhibitory.push_back(il);
  }

  expect_section("groups:");
  while (in_section('g')) {
    std::string_view rest = doc.next_line();
    const std::size_t sp = rest.find(' ');
    if (sp == std::string_view::npos) doc.fail("malformed group line");
    const auto id = detail::parse_id(doc, rest.substr(0, sp), 'g');
    if (id != groups.size()) doc.fail("group ids must be dense and ordered");
    rest.remove_prefix(sp);
    CompositeGroup g;
    g.id = GroupId{id};
    const auto kind = detail::take_field(doc, rest, "kind");
    if (kind == "cel") g.kind = GroupKind::Cel;
    else if (kind == "cil") g.kind = GroupKind::Cil;
    else doc.fail("unknown group kind: " + kind);
    std::string members = detail::take_field(doc, rest, "members");
    std::string_view pending = members;
    while (!pending.empty()) {
      const std::size_t comma = pending.find(',');
      const auto token = comma == std::string_view::npos ? pending : pending.substr(0, comma);
      pending.remove_prefix(comma == std::string_view::npos ? pending.size() : comma + 1);
      if (g.kind == GroupKind::Cel) g.el_members.push_back(ExcitingId{detail::parse_id(doc, token, 'e')});
      else g.il_members.push_back(InhibitoryId{detail::parse_id(doc, token, 'i')});
    }
    if (!rest.empty()) doc.fail("trailing content on group line");
    groups.push_back(std::move(g));
  }

  const auto parse_endpoints = [&doc](std::string_view line, std::string_view name) {
    if (line.substr(0, name.size()) != name) doc.fail("expected section '" + std::string(name) + "'");
    line.remove_prefix(name.size());
    std::vector<NeuronId> ids;
    while (!line.empty()) {
      while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      if (line.empty()) break;
      const std::size_t end = line.find(' ');
      const auto token = end == std::string_view::npos ? line : line.substr(0, end);
      ids.push_back(NeuronId{detail::parse_id(doc, token, 'n')});
      line.remove_prefix(token.size());
    }
    return ids;
  };

  if (doc.done()) doc.fail("missing section 'inputs:'");
  const auto inputs = parse_endpoints(doc.next_line(), "inputs:");
  if (doc.done()) doc.fail("missing section 'outputs:'");
  const auto outputs = parse_endpoints(doc.next_line(), "outputs:");
  while (!doc.done()) {
    const auto line = doc.next_line();
    if (!line.empty()) doc.fail("trailing content after outputs section");
  }

  Network net = Network::from_parts(std::move(neurons), std::move(exciting), std::move(inhibitory),
                                    std::move(groups), inputs, outputs);
  const auto violations = net.validate();
  if (!violations.empty()) {
    std::string message = "invalid network document";
    for (const auto& v : violations) message += "; " + v.detail;
    throw SerializeError(message);
  }
  return net;
}

}  // namespace pldnn
