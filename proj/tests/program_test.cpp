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

#include "aseo/generators.hpp"
#include "aseo/parser.hpp"
#include "aseo/semantics.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace aseo;
using namespace aseo::test;

namespace {

Rule rule(std::optional<AtomId> head, std::vector<AtomId> pos, std::vector<AtomId> neg = {}) {
    return Rule{head, std::move(pos), std::move(neg), std::nullopt};
}

Program positive_program(std::size_t n, std::vector<Rule> rules) {
    Program p;
    for (std::size_t i = 0; i < n; ++i) p.atom("p" + std::to_string(i));
    p.rules = std::move(rules);
    return p;
}

// Closed under every rule of the positive program `pos`.
bool closed(const Program& pos, const std::vector<bool>& interp) {
    for (const auto& r : pos.rules) {
        bool body = std::all_of(r.pos_body.begin(), r.pos_body.end(), [&](AtomId a) { return interp[a]; });
        if (body && !interp[*r.head]) return false;
    }
    return true;
}

// Independent check: A violates no constraint and is a subset-minimal set
// closed under P^A, testing every subset of A.
bool minimal_closed(const Program& p, const AtomSet& candidate) {
    auto interp = interpretation(p.atom_count(), candidate);
    for (const auto& r : p.rules) {
        if (!r.is_constraint()) continue;
        bool fires = std::all_of(r.pos_body.begin(), r.pos_body.end(), [&](AtomId a) { return interp[a]; }) &&
                     std::none_of(r.neg_body.begin(), r.neg_body.end(), [&](AtomId a) { return interp[a]; });
        if (fires) return false;
    }
    auto red = reduct(p, candidate);
    if (!closed(red, interp)) return false;
    const auto k = candidate.size();
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << k); ++mask) {
        std::vector<bool> sub(p.atom_count(), false);
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) sub[candidate[i]] = true;
        if (closed(red, sub)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("reduct keeps unblocked rules and strips negation") {
    auto p = parse("a :- not b.");
    auto empty = reduct(p, {});
    REQUIRE(empty.rules.size() == 1);
    CHECK(empty.rules[0].head == p.atoms.find("a"));
    CHECK(empty.rules[0].pos_body.empty());
    CHECK(empty.rules[0].neg_body.empty());

    CHECK(reduct(p, atoms(p, {"b"})).rules.empty());

    auto q = parse(kChoice);
    auto red = reduct(q, atoms(q, {"a"}));
    REQUIRE(red.rules.size() == 1);
    CHECK(red.rules[0].head == q.atoms.find("a"));
}

TEST_CASE("reduct drops constraints and evaluates sum bodies against the candidate") {
    auto p = parse("a :- #sum{2:b; 1:c} >= 2. :- a, b. b :- not c. c :- not b.");
    auto with_b = reduct(p, atoms(p, {"b"}));
    CHECK(with_b.rules.size() == 2);  // a :- . and b :- .
    auto with_c = reduct(p, atoms(p, {"c"}));
    CHECK(with_c.rules.size() == 1);  // sum is 1 < 2
}

TEST_CASE("least model by fixpoint") {
    CHECK(least_model(positive_program(1, {rule(0, {0})})).empty());
    CHECK(least_model(positive_program(2, {rule(0, {}), rule(1, {0})})) == AtomSet{0, 1});
    CHECK(least_model(positive_program(3, {rule(0, {1}), rule(1, {2})})).empty());
    CHECK_THROWS_AS(least_model(positive_program(2, {rule(0, {}, {1})})), std::invalid_argument);
}

TEST_CASE("least model is closed, idempotent and monotone in the rule set") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 6;
        std::vector<Rule> rules;
        auto count = rng() % 8;
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<AtomId> body;
            for (auto j = rng() % 3; j > 0; --j) body.push_back(static_cast<AtomId>(rng() % n));
            rules.push_back(rule(static_cast<AtomId>(rng() % n), body));
        }
        auto p = positive_program(n, rules);
        auto lm = least_model(p);
        CHECK(closed(p, interpretation(n, lm)));
        // Adding the model as facts changes nothing.
        auto with_facts = p;
        for (auto a : lm) with_facts.rules.push_back(rule(a, {}));
        CHECK(least_model(with_facts) == lm);
        // Extra rule can only grow the model.
        auto bigger = p;
        bigger.rules.push_back(rule(static_cast<AtomId>(rng() % n), {}));
        auto lm2 = least_model(bigger);
        CHECK(std::includes(lm2.begin(), lm2.end(), lm.begin(), lm.end()));
    }
}

TEST_CASE("answer set check") {
    auto q = parse(kChoice);
    CHECK(is_answer_set(q, atoms(q, {"a"})));
    CHECK(is_answer_set(q, atoms(q, {"b"})));
    CHECK_FALSE(is_answer_set(q, atoms(q, {"a", "b"})));
    CHECK_FALSE(is_answer_set(q, {}));

    auto c = parse(":- a. a :- not b. b :- not a.");
    CHECK_FALSE(is_answer_set(c, atoms(c, {"a"})));
    CHECK(is_answer_set(c, atoms(c, {"b"})));

    auto loop = parse("a :- b. b :- a.");
    CHECK(is_answer_set(loop, {}));
    CHECK_FALSE(is_answer_set(loop, atoms(loop, {"a", "b"})));
}

TEST_CASE("answer set check agrees with subset-minimality check on random programs") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto p = parse(generate_random({8, 10, 0, seed}));
        REQUIRE(p.atom_count() <= 12);
        const auto n = p.atom_count();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            AtomSet cand;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) cand.push_back(static_cast<AtomId>(i));
            REQUIRE(is_answer_set(p, cand) == minimal_closed(p, cand));
        }
    }
}

TEST_CASE("objective evaluation") {
    auto q = parse("a :- not b. b :- not a. #minimize{2@1:a; 1@1:b}.");
    CHECK(eval_objective(q.objectives[0], atoms(q, {"a"}), q.atom_count()) == 2);

    auto ex2 = parse(kFiveSelectors);
    CHECK(eval_objective(ex2.objectives[0], atoms(ex2, {"l1", "l2", "l4"}), ex2.atom_count()) == 8);

    ObjectiveFunction empty;
    CHECK(eval_objective(empty, atoms(q, {"a", "b"}), q.atom_count()) == 0);

    // Zero-weight terms never change the value.
    auto f = ex2.objectives[0];
    auto model = atoms(ex2, {"l1", "l3", "l5"});
    auto before = eval_objective(f, model, ex2.atom_count());
    f.terms.push_back({0, Literal::pos(*ex2.atoms.find("l1"))});
    f.terms.push_back({0, Literal::neg(*ex2.atoms.find("l2"))});
    CHECK(eval_objective(f, model, ex2.atom_count()) == before);
}

TEST_CASE("cost vectors of the three-level fixture") {
    auto p = parse(kThreeLevels);
    CHECK(eval_cost(p, atoms(p, {"x1"})) == CostVector{1, 4, 1});
    CHECK(eval_cost(p, atoms(p, {"x2"})) == CostVector{1, 4, 7});
    CHECK(eval_cost(p, atoms(p, {"x3"})) == CostVector{1, 7, 4});
    CHECK(eval_cost(parse(kChoice), AtomSet{0}).empty());
}

TEST_CASE("cost overflow is an error") {
    auto p = parse("a. b. #minimize{9223372036854775807@1:a; 1@1:b}.");
    CHECK_THROWS_AS(eval_cost(p, atoms(p, {"a", "b"})), std::overflow_error);
}

TEST_CASE("lexicographic comparison") {
    CHECK(compare_lex({1, 4, 1}, {1, 4, 7}) < 0);
    CHECK(compare_lex({1, 4, 7}, {1, 7, 4}) < 0);
    CHECK(compare_lex({3, 0}, {3, 0}) == 0);
    CHECK(compare_lex({2, 0}, {1, 9}) > 0);
    CHECK_THROWS_AS((void)compare_lex({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("lexicographic comparison is a total order extending componentwise order") {
    std::mt19937_64 rng(11);
    auto gen = [&] { return CostVector{Weight(rng() % 3), Weight(rng() % 3), Weight(rng() % 3)}; };
    for (int i = 0; i < 2000; ++i) {
        auto a = gen(), b = gen(), c = gen();
        auto ab = compare_lex(a, b), ba = compare_lex(b, a);
        CHECK((ab < 0) == (ba > 0));
        CHECK((ab == 0) == (a == b));
        if (ab <= 0 && compare_lex(b, c) <= 0) CHECK(compare_lex(a, c) <= 0);
        bool componentwise = a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2];
        if (componentwise) CHECK(ab <= 0);
    }
}

TEST_CASE("normalizing objectives") {
    Program p;
    auto a = p.atom("a");
    ObjectiveFunction f;
    f.terms = {{-3, Literal::pos(a)}};
    auto g = normalize(f);
    REQUIRE(g.terms.size() == 1);
    CHECK(g.terms[0].weight == 3);
    CHECK(g.terms[0].lit == Literal::neg(a));
    CHECK(g.offset == -3);

    ObjectiveFunction m;
    m.maximize = true;
    m.terms = {{2, Literal::pos(a)}};
    auto h = normalize(m);
    CHECK_FALSE(h.maximize);
    CHECK(h.terms[0].weight == 2);
    CHECK(h.terms[0].lit == Literal::neg(a));
    CHECK(h.offset == -2);

    ObjectiveFunction plain;
    plain.terms = {{4, Literal::pos(a)}, {1, Literal::neg(a)}};
    auto same = normalize(plain);
    CHECK(same == plain);
    CHECK(same.offset == 0);
}

TEST_CASE("normalization preserves the order between answer sets") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::mt19937_64 rng(seed);
        auto raw = parse(generate_random({7, 9, 0, seed}));
        const auto n = raw.atom_count();
        if (n == 0) continue;
        for (int level = 0; level < 2; ++level) {
            ObjectiveFunction f;
            f.level = level + 1;
            f.maximize = rng() % 2;
            for (int t = 0; t < 4; ++t)
                f.terms.push_back({Weight(rng() % 9) - 4, Literal(AtomId(rng() % n), rng() % 2 == 0)});
            raw.objectives.push_back(f);
        }
        auto norm = normalize_objectives(raw);
        CHECK_NOTHROW(norm.validate());
        // Source-sense cost: minimize levels as written, maximize negated.
        auto source_cost = [&](const AtomSet& m) {
            std::vector<Weight> v;
            auto interp = interpretation(n, m);
            for (const auto& f : raw.objectives) {
                Weight s = 0;
                for (const auto& t : f.terms)
                    if (satisfied(t.lit, interp)) s += t.weight;
                v.push_back(f.maximize ? -s : s);
            }
            return CostVector(v);
        };
        auto models = brute_force_aseo(raw);
        for (const auto& x : models)
            for (const auto& y : models) {
                auto want = compare_lex(source_cost(x.model), source_cost(y.model));
                auto got = compare_lex(eval_cost(norm, x.model), eval_cost(norm, y.model));
                CHECK(want == got);
            }
    }
}

TEST_CASE("brute force oracle") {
    auto p1 = parse(generate_pn(1));
    CHECK(brute_force_aseo(p1).size() == 2);
    auto p2 = parse(generate_pn(2));
    auto ranked = brute_force_aseo(p2);
    REQUIRE(ranked.size() == 8);
    std::vector<Weight> level1;
    for (const auto& m : ranked) level1.push_back(m.cost[0]);
    CHECK(level1 == std::vector<Weight>{0, 0, 1, 1, 2, 2, 3, 3});
    CHECK(brute_force_aseo(parse("a :- not a.")).empty());

    auto empty = brute_force_aseo(parse(""));
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].model.empty());

    auto big = parse(generate_pn(3));
    CHECK_THROWS_AS(brute_force_aseo(big, 10), OracleLimitError);
}

TEST_CASE("oracle output is sorted by cost then atom order") {
    auto p = parse(kFiveSelectors);
    auto ranked = brute_force_aseo(p);
    REQUIRE(ranked.size() == 5);
    CHECK(non_decreasing(ranked));
    CHECK(names(p, ranked[0].model) == std::vector<std::string>{"l1", "l2", "l3", "s1"});
    CHECK(names(p, ranked[1].model) == std::vector<std::string>{"l1", "l2", "l4", "s4"});
    for (std::size_t i = 0; i < ranked.size(); ++i) CHECK(ranked[i].index == i);
}
