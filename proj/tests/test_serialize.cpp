#include <doctest.h>

#include "pldnn/gates.hpp"
#include "pldnn/rules.hpp"
#include "pldnn/serialize.hpp"

using namespace pldnn;

TEST_CASE("serialize and deserialize round-trip a gate network") {
  const auto gate = build_gate(GateKind::Nor);
  const std::string text = serialize_network(gate.network);
  const Network restored = deserialize_network(text);
  CHECK(restored == gate.network);
  CHECK(serialize_network(restored) == text);
}

TEST_CASE("serialization is deterministic") {
  const auto gate = build_gate(GateKind::Xor);
  CHECK(serialize_network(gate.network) == serialize_network(gate.network));
  const auto again = build_gate(GateKind::Xor);
  CHECK(serialize_network(gate.network) == serialize_network(again.network));
}

TEST_CASE("knowledge networks with composite inhibitors round-trip") {
  // Two distinguishing literals force a CIL in conjunctive mode.
  const auto lib = parse_rule_library("IF A THEN E\nIF A AND B AND NOT C THEN D");
  const auto knet = compile_rule_library(lib, CompileMode::Conjunctive);
  REQUIRE(structure_counts(knet.network).cil == 1);
  const Network restored = deserialize_network(serialize_network(knet.network));
  CHECK(restored == knet.network);
}

TEST_CASE("labels with quotes, backslashes and spaces survive the round trip") {
  Network net;
  net.add_neuron("plain");
  net.add_neuron("with \"quotes\"");
  net.add_neuron("back\\slash");
  net.add_neuron("two words");
  const Network restored = deserialize_network(serialize_network(net));
  CHECK(restored == net);
}

TEST_CASE("documents with dangling references are rejected") {
  const char* text =
      "pldnn_network v1\n"
      "neurons:\n"
      "n0 label=\"a\" kind=internal\n"
      "n1 label=\"b\" kind=internal\n"
      "exciting_links:\n"
      "e0 polarity=positive pre=n0 post=n1\n"
      "inhibitory_links:\n"
      "i0 polarity=positive pre=n0 target=e9\n"
      "groups:\n"
      "inputs:\n"
      "outputs:\n";
  CHECK_THROWS_AS(deserialize_network(text), SerializeError);
}

TEST_CASE("version and schema violations are rejected") {
  CHECK_THROWS_AS(deserialize_network(""), SerializeError);
  CHECK_THROWS_AS(deserialize_network("pldnn_network v9\nneurons:\n"), SerializeError);
  CHECK_THROWS_AS(deserialize_network("something else\n"), SerializeError);
  CHECK_THROWS_AS(deserialize_network("pldnn_network v1\nneurons:\nn0 kind=input label=\"a\"\n"),
                  SerializeError);  // fields out of canonical order
  CHECK_THROWS_AS(deserialize_network("pldnn_network v1\nneurons:\nn1 label=\"a\" kind=input\n"),
                  SerializeError);  // ids must be dense
  const char* missing_sections =
      "pldnn_network v1\n"
      "neurons:\n"
      "inputs:\n"
      "outputs:\n";
  CHECK_THROWS_AS(deserialize_network(missing_sections), SerializeError);
}

TEST_CASE("an empty network serializes to the bare skeleton") {
  const std::string text = serialize_network(Network{});
  CHECK(text ==
        "pldnn_network v1\n"
        "neurons:\n"
        "exciting_links:\n"
        "inhibitory_links:\n"
        "groups:\n"
        "inputs:\n"
        "outputs:\n");
  CHECK(deserialize_network(text) == Network{});
}
