#include <doctest.h>

#include <set>
#include <thread>

#include "helpers.hpp"
#include "pldnn/serialize.hpp"

using namespace pldnn;

TEST_CASE("free-run propagation is monotone, sound and fixed-point bounded") {
  std::mt19937 rng(20240901);
  for (int trial = 0; trial < 120; ++trial) {
    const auto random = testutil::random_network(rng);
    const auto& net = random.net;
    const auto assignment = testutil::random_assignment(rng, random.declared_inputs);
    const auto n = net.neurons().size();

    ActivationState act = initial_activation(net, assignment);
    for (;;) {
      std::set<std::uint32_t> effective_posts;
      for (const auto& unit : effective_excitations(net, act))
        effective_posts.insert(detail::unit_post(net, unit).value);
      const ActivationState next = step_round(net, act);
      for (std::size_t i = 0; i < n; ++i) {
        // Monotone: positives never retract, negatives never flip.
        if (act.neurons[i] != NeuronState::Resting) CHECK(next.neurons[i] == act.neurons[i]);
        // Masking soundness: only posts of effective excitations activate.
        if (act.neurons[i] == NeuronState::Resting && next.neurons[i] == NeuronState::Positive)
          CHECK(effective_posts.contains(static_cast<std::uint32_t>(i)));
      }
      if (next.neurons == act.neurons) break;
      act = next;
      REQUIRE(act.round <= n);
    }

    const ActivationState final = evaluate(net, assignment);
    CHECK(final.neurons == act.neurons);
    CHECK(final.round <= n);

    // Idempotence at the fixed point.
    const ActivationState again = step_round(net, final);
    CHECK(again.neurons == final.neurons);
    CHECK(again.exciting == final.exciting);
    CHECK(again.groups == final.groups);
  }
}

TEST_CASE("the fixed point is invariant under storage order") {
  std::mt19937 rng(20240902);
  for (int trial = 0; trial < 80; ++trial) {
    const auto random = testutil::random_network(rng);
    const auto& net = random.net;
    const auto assignment = testutil::random_assignment(rng, random.declared_inputs);
    const Network shuffled = testutil::shuffled_rebuild(net, rng);

    InputAssignment mapped;
    for (const auto& [id, state] : assignment) mapped[*shuffled.find_neuron(net.neuron(id).label)] = state;

    const auto final_a = evaluate(net, assignment);
    const auto final_b = evaluate(shuffled, mapped);
    for (const auto& n : net.neurons()) {
      CAPTURE(n.label);
      CHECK(final_a.state(n.id) == final_b.state(*shuffled.find_neuron(n.label)));
    }
  }
}

TEST_CASE("random networks survive the serialization round trip") {
  std::mt19937 rng(20240903);
  for (int trial = 0; trial < 60; ++trial) {
    const auto random = testutil::random_network(rng);
    const std::string text = serialize_network(random.net);
    const Network restored = deserialize_network(text);
    CHECK(restored == random.net);
    CHECK(serialize_network(restored) == text);
  }
}

TEST_CASE("random expression circuits agree with the formula oracle") {
  std::mt19937 rng(20240904);
  for (int trial = 0; trial < 80; ++trial) {
    const auto expr = testutil::random_expression(rng, 5, 6);
    CAPTURE(to_string(*expr));
    const auto circuit = compile_expression(*expr);
    CHECK(circuit_truth_table(circuit) == testutil::formula_truth_table(*expr));
  }
}

TEST_CASE("random rule libraries: network inference equals the oracle") {
  std::mt19937 rng(20240905);
  std::uniform_int_distribution<std::size_t> subset_pick;
  for (int trial = 0; trial < 40; ++trial) {
    const auto lib = testutil::random_library(rng);
    std::vector<std::string> atoms(lib.atoms().begin(), lib.atoms().end());
    const auto fact_sets = testutil::signed_subsets(atoms, 3);
    for (const auto mode : {CompileMode::Conjunctive, CompileMode::Competitive}) {
      const auto knet = compile_rule_library(lib, mode);
      for (int sample = 0; sample < 40; ++sample) {
        const auto& facts = fact_sets[subset_pick(rng) % fact_sets.size()];
        const auto network_result = infer(knet, facts);
        const auto oracle_result = oracle_infer(lib, facts, mode);
        if (network_result != oracle_result) {
          CAPTURE(mode == CompileMode::Conjunctive ? "conjunctive" : "competitive");
          std::string description;
          for (const auto& f : facts) description += (f.positive ? "" : "!") + f.atom + " ";
          CAPTURE(description);
        }
        REQUIRE(network_result == oracle_result);
      }
    }
  }
}

TEST_CASE("one network topology can be evaluated from many threads") {
  const auto circuit = compile_expression(*parse_expression("(a ^ b) | !c"));
  const auto expected = circuit_truth_table(circuit);
  std::vector<std::thread> workers;
  std::vector<std::vector<bool>> results(4);
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&circuit, &results, t] { results[static_cast<std::size_t>(t)] = circuit_truth_table(circuit); });
  for (auto& worker : workers) worker.join();
  for (const auto& result : results) CHECK(result == expected);
}
