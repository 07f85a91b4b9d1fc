//
// Copyright (c) 2026 The aseo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "aseo/bayes.hpp"
#include "aseo/semantics.hpp"
#include "aseo/solver.hpp"
#include "bayes_oracle.hpp"

#include <doctest.h>

#include <set>

using namespace aseo;
using namespace aseo::test;

namespace {

const char* const kSingle = R"({"variables": [{"name": "q", "parents": [], "cpt": [{"given": [], "p_true": 0.7}]}]})";

const char* const kChain = R"({"variables": [
  {"name": "x", "parents": [], "cpt": [{"given": [], "p_true": 0.3}]},
  {"name": "y", "parents": ["x"], "cpt": [{"given": [true], "p_true": 0.9}, {"given": [false], "p_true": 0.2}]},
  {"name": "z", "parents": ["y"], "cpt": [{"given": [true], "p_true": 0.6}, {"given": [false], "p_true": 0.1}]}
]})";

const char* const kCollider = R"({"variables": [
  {"name": "x", "parents": [], "cpt": [{"given": [], "p_true": 0.4}]},
  {"name": "y", "parents": [], "cpt": [{"given": [], "p_true": 0.5}]},
  {"name": "z", "parents": ["x", "y"], "cpt": [
    {"given": [false, false], "p_true": 0.1}, {"given": [true, false], "p_true": 0.7},
    {"given": [false, true], "p_true": 0.6}, {"given": [true, true], "p_true": 0.95}]}
]})";

const char* const kTwoIslands = R"({"variables": [
  {"name": "a", "parents": [], "cpt": [{"given": [], "p_true": 0.4}]},
  {"name": "b", "parents": ["a"], "cpt": [{"given": [true], "p_true": 0.5}, {"given": [false], "p_true": 0.8}]},
  {"name": "c", "parents": [], "cpt": [{"given": [], "p_true": 0.1}]},
  {"name": "d", "parents": ["c"], "cpt": [{"given": [true], "p_true": 0.3}, {"given": [false], "p_true": 0.6}]}
]})";

std::set<std::string> names_of(const BayesNet& net) {
    std::set<std::string> out;
    for (const auto& v : net.variables) out.insert(v.name);
    return out;
}

BayesNet single(double p) {
    return load_network(R"({"variables": [{"name": "q", "cpt": [{"p_true": )" + std::to_string(p) + "}]}]}");
}

// Variable atoms of c closed under the definite rules of the encoding.
AtomSet candidate(const WeightedEncoding& enc, const std::vector<bool>& c) {
    std::vector<bool> in(enc.program.atom_count(), false);
    for (std::size_t v = 0; v < c.size(); ++v) in[c[v] ? enc.atom_map[v].first : enc.atom_map[v].second] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : enc.program.rules) {
            if (!r.head || in[*r.head] || !r.neg_body.empty()) continue;
            if (std::all_of(r.pos_body.begin(), r.pos_body.end(), [&](AtomId a) { return in[a]; }))
                in[*r.head] = changed = true;
        }
    }
    return atoms_of(in);
}

}  // namespace

TEST_CASE("loading networks") {
    auto one = load_network(kSingle);
    REQUIRE(one.size() == 1);
    CHECK(one.variables[0].parents.empty());
    CHECK(one.variables[0].p_true == std::vector<double>{0.7});

    auto chain = load_network(kChain);
    REQUIRE(chain.size() == 3);
    CHECK(chain.variables[1].parents == std::vector<std::size_t>{0});
    CHECK(chain.variables[0].p_true.size() == 1);
    CHECK(chain.variables[1].p_true == std::vector<double>{0.2, 0.9});
    CHECK(chain.variables[2].p_true.size() == 2);
}

TEST_CASE("network validation") {
    auto bad = [](const std::string& text) { CHECK_THROWS_AS(load_network(text), NetworkError); };
    bad(R"({"variables": [{"name": "q", "cpt": [{"p_true": 1.3}]}]})");
    bad(R"({"variables": [{"name": "q", "cpt": [{"p_true": -0.1}]}]})");
    bad(R"({"variables": [{"name": "q", "parents": ["r"], "cpt": [{"given": [true], "p_true": 0.5}]}]})");
    bad(R"({"variables": [{"name": "q", "parents": ["r"], "cpt": [{"given": [true], "p_true": 0.5}]},
                          {"name": "r", "parents": ["q"], "cpt": [{"given": [true], "p_true": 0.5},
                                                                  {"given": [false], "p_true": 0.5}]}]})");
    bad(R"({"variables": [{"name": "q", "parents": ["q"], "cpt": [{"given": [true], "p_true": 0.5},
                                                                  {"given": [false], "p_true": 0.5}]}]})");
    bad(R"({"variables": [{"name": "a", "cpt": [{"p_true": 0.5}]},
                          {"name": "q", "parents": ["a"], "cpt": [{"given": [true], "p_true": 0.5}]}]})");
    bad(R"({"variables": [{"name": "q", "cpt": [{"p_true": 0.5}, {"p_true": 0.4}]}]})");
    bad(R"({"variables": [{"name": "q", "cpt": [{"p_true": 0.5}]}, {"name": "q", "cpt": [{"p_true": 0.5}]}]})");
    bad(R"({"variables": [{"name": "q"}]})");
    bad(R"({"vars": []})");
    bad("{not json");

    // Unknown parent is reported by name.
    try {
        load_network(R"({"variables": [{"name": "q", "parents": ["ghost"], "cpt": []}]})");
        FAIL("expected an error");
    } catch (const NetworkError& e) {
        CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
}

TEST_CASE("networks round-trip through JSON") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto net = random_network({5, 2, seed});
        auto back = load_network(to_json(net).dump());
        REQUIRE(back.size() == net.size());
        for (std::size_t v = 0; v < net.size(); ++v) {
            CHECK(back.variables[v].name == net.variables[v].name);
            CHECK(back.variables[v].parents == net.variables[v].parents);
            CHECK(back.variables[v].p_true == net.variables[v].p_true);
        }
    }
}

TEST_CASE("random networks are deterministic and valid") {
    auto a = to_json(random_network({5, 2, 7})).dump();
    CHECK(a == to_json(random_network({5, 2, 7})).dump());
    CHECK(a != to_json(random_network({5, 2, 8})).dump());
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK_NOTHROW(random_network({5, 3, seed}).validate());
}

TEST_CASE("query validation") {
    auto chain = load_network(kChain);
    CHECK_THROWS_AS(validate_query(chain, {"w", {}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_query(chain, {"x", {{"w", true}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_query(chain, {"x", {{"x", true}}}), std::invalid_argument);
    CHECK_NOTHROW(validate_query(chain, {"x", {{"z", true}}}));
}

TEST_CASE("relevant sub-networks") {
    auto chain = load_network(kChain);
    CHECK(names_of(relevant_subnetwork(chain, {"x", {{"y", true}}})) == std::set<std::string>{"x", "y"});
    CHECK(names_of(relevant_subnetwork(chain, {"z", {{"x", true}}})) == std::set<std::string>{"x", "y", "z"});
    // z is separated from y's parent by y itself.
    auto zy = relevant_subnetwork(chain, {"z", {{"y", false}}});
    CHECK(names_of(zy) == std::set<std::string>{"y", "z"});
    CHECK(zy.variables[*zy.find("y")].parents.empty());
    CHECK(zy.variables[*zy.find("y")].p_true == std::vector<double>{0.0});

    auto islands = load_network(kTwoIslands);
    CHECK(names_of(relevant_subnetwork(islands, {"b", {}})) == std::set<std::string>{"a", "b"});

    auto collider = load_network(kCollider);
    CHECK(names_of(relevant_subnetwork(collider, {"x", {{"z", true}}})) == std::set<std::string>{"x", "y", "z"});
    CHECK(names_of(relevant_subnetwork(collider, {"x", {}})) == std::set<std::string>{"x"});
}

TEST_CASE("sub-networks preserve the exact posterior") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto net = random_network({5, 2 + seed % 2, seed});
        auto spec = random_query(net, seed);
        auto sub = relevant_subnetwork(net, spec);
        CHECK(sub.size() <= net.size());
        auto full = exact_posterior(net, spec);
        auto part = exact_posterior(sub, restrict_to(sub, spec));
        REQUIRE(full);
        REQUIRE(part);
        CHECK(std::abs(*full - *part) < 1e-12);
    }
}

TEST_CASE("single-variable encoding costs") {
    auto enc = encode_map(single(0.7), {});
    auto ranked = brute_force_aseo(enc.program);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].cost == CostVector{std::llround(-std::log(0.7) * 1e6)});
    CHECK(ranked[1].cost == CostVector{std::llround(-std::log(0.3) * 1e6)});
    CHECK(ranked[0].cost == CostVector{356675});
    CHECK(ranked[1].cost == CostVector{1203973});
    CHECK(decode(enc, ranked[0].model) == std::vector<bool>{true});

    auto certain = encode_map(single(1.0), {});
    CHECK(certain.forbidden_rows == 1);
    auto only = brute_force_aseo(certain.program);
    REQUIRE(only.size() == 1);
    CHECK(only[0].cost == CostVector{0});
    CHECK(decode(certain, only[0].model) == std::vector<bool>{true});

    CHECK(brute_force_aseo(encode_map(single(0.7), {{"q", true}}).program).size() == 1);
    CHECK_THROWS_AS(encode_map(single(0.7), {}, 0), std::invalid_argument);
    CHECK_THROWS_AS(encode_map(single(0.7), {{"w", true}}), std::invalid_argument);
    BayesNet tiny;
    tiny.variables.push_back({"q", {}, {1e-300}});
    CHECK_THROWS_AS(encode_map(tiny, {}, std::int64_t{1} << 62), std::overflow_error);
}

TEST_CASE("encoding answer sets are in bijection with assignments") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto net = random_network({3 + seed % 3, 2, seed});
        // Force a degenerate CPT entry now and then so forbidden rows get exercised.
        if (seed % 3 == 0) net.variables.back().p_true[0] = seed % 2 ? 0.0 : 1.0;
        auto spec = random_query(net, seed);
        auto enc = encode_map(net, spec.evidence);

        // Every assignment maps to one candidate: its variable atoms closed
        // under the definite rules. It must be stable exactly when the
        // assignment is possible.
        std::size_t expected = 0;
        for (std::size_t bits = 0; bits < (std::size_t{1} << net.size()); ++bits) {
            auto c = assignment(net.size(), bits);
            auto cand = candidate(enc, c);
            bool possible = consistent(net, c, spec.evidence) && joint(net, c) > 0;
            CHECK(is_answer_set(enc.program, cand) == possible);
            if (!possible) continue;
            ++expected;
            CHECK(eval_cost(enc.program, cand) == CostVector{oracle_cost(net, c, enc.scale)});
        }

        std::set<std::vector<bool>> seen;
        enumerate(enc.program, {}, {}, [&](const AtomSet& m) {
            auto c = decode(enc, m);
            CHECK(seen.insert(c).second);
            CHECK(m == candidate(enc, c));
            return ModelAction::Continue;
        });
        CHECK(seen.size() == expected);
    }
}

TEST_CASE("cost order follows probability order") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto net = random_network({5, 2, seed});
        auto enc = encode_map(net, {});
        auto ranked = naive_enumerate(enc.program, kAll).models;
        CHECK(ranked.size() == (std::size_t{1} << net.size()));
        // Each of the n selected terms is off by at most half a unit.
        const double tolerance = std::exp(static_cast<double>(net.size()) / static_cast<double>(enc.scale));
        for (std::size_t i = 1; i < ranked.size(); ++i) {
            double before = joint(net, decode(enc, ranked[i - 1].model));
            double after = joint(net, decode(enc, ranked[i].model));
            CHECK(before * tolerance >= after);
        }
    }
}

TEST_CASE("masses add up to one without evidence") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto net = random_network({5, 2, seed});
        auto e = approximate_query(net, {net.variables[0].name, {}}, std::size_t{1} << net.size());
        CHECK(e.assignments_true + e.assignments_false == (std::size_t{1} << net.size()));
        CHECK(std::abs(e.mass_true + e.mass_false - 1.0) < 1e-3);
    }
}

TEST_CASE("approximate query") {
    auto one = approximate_query(single(0.7), {"q", {}}, 1);
    CHECK(std::abs(one.posterior - 0.7) < 1e-4);
    CHECK(one.assignments_true == 1);
    CHECK(one.assignments_false == 1);
    CHECK(one.k == 1);
    CHECK(one.scale == kDefaultScale);

    auto chain = load_network(kChain);
    QuerySpec spec{"z", {{"x", true}}};
    auto exact = exact_posterior(chain, spec);
    REQUIRE(exact);
    // 0.9 * 0.6 + 0.1 * 0.1
    CHECK(std::abs(*exact - 0.55) < 1e-12);
    auto full = approximate_query(chain, spec, 8);
    CHECK(std::abs(full.posterior - *exact) < 1e-4);
    CHECK(full.assignments_true == 2);

    auto via = answer_query(chain, spec, 8);
    CHECK(std::abs(via.posterior - *exact) < 1e-4);

    CHECK_THROWS_AS(approximate_query(chain, spec, 0), std::invalid_argument);
}

TEST_CASE("zero-probability evidence has no posterior") {
    auto net = load_network(R"({"variables": [
      {"name": "a", "cpt": [{"p_true": 1.0}]},
      {"name": "q", "parents": ["a"], "cpt": [{"given": [true], "p_true": 0.5}, {"given": [false], "p_true": 0.5}]}
    ]})");
    CHECK_THROWS_AS(approximate_query(net, {"q", {{"a", false}}}, 4), UndefinedPosterior);
    CHECK_THROWS_AS(answer_query(net, {"q", {{"a", false}}}, 4), UndefinedPosterior);
}

TEST_CASE("estimate JSON carries every field") {
    auto j = to_json(approximate_query(single(0.7), {"q", {}}, 2));
    for (const char* key : {"posterior", "k", "scale", "mass_true", "mass_false", "assignments_true",
                            "assignments_false"})
        CHECK(j.contains(key));
    CHECK(j["k"] == 2);
}
