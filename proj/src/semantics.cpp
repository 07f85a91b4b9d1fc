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

#include "aseo/semantics.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace aseo {

std::vector<bool> interpretation(std::size_t atom_count, std::span<const AtomId> atoms) {
    std::vector<bool> interp(atom_count, false);
    for (auto a : atoms) interp.at(a) = true;
    return interp;
}

AtomSet atoms_of(const std::vector<bool>& interp) {
    AtomSet out;
    for (std::size_t i = 0; i < interp.size(); ++i)
        if (interp[i]) out.push_back(static_cast<AtomId>(i));
    return out;
}

bool satisfied(Literal l, const std::vector<bool>& interp) { return interp[l.atom()] == l.positive(); }

Weight evaluate_sum(std::span<const WeightedLiteral> terms, const std::vector<bool>& interp) {
    Weight sum = 0;
    for (const auto& t : terms)
        if (satisfied(t.lit, interp)) sum = checked_add(sum, t.weight);
    return sum;
}

bool satisfied(const SumCondition& c, const std::vector<bool>& interp) {
    return holds(evaluate_sum(c.terms, interp), c.relation, c.bound);
}

Program reduct(const Program& program, std::span<const AtomId> candidate) {
    auto interp = interpretation(program.atom_count(), candidate);
    Program out;
    out.atoms = program.atoms;
    for (const auto& r : program.rules) {
        if (r.is_constraint()) continue;
        bool blocked = std::any_of(r.neg_body.begin(), r.neg_body.end(), [&](AtomId a) { return interp[a]; });
        if (blocked) continue;
        if (r.sum_body && !satisfied(*r.sum_body, interp)) continue;
        out.rules.push_back(Rule{r.head, r.pos_body, {}, {}});
    }
    return out;
}

AtomSet least_model(const Program& positive) {
    std::vector<bool> model(positive.atom_count(), false);
    for (const auto& r : positive.rules) {
        if (r.is_constraint() || !r.neg_body.empty() || r.sum_body)
            throw std::invalid_argument("least_model expects a positive program");
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : positive.rules) {
            if (model[*r.head]) continue;
            if (std::all_of(r.pos_body.begin(), r.pos_body.end(), [&](AtomId a) { return model[a]; })) {
                model[*r.head] = true;
                changed = true;
            }
        }
    }
    return atoms_of(model);
}

namespace {

bool body_holds(const Rule& r, const std::vector<bool>& interp) {
    for (auto a : r.pos_body)
        if (!interp[a]) return false;
    for (auto a : r.neg_body)
        if (interp[a]) return false;
    return !r.sum_body || satisfied(*r.sum_body, interp);
}

}  // namespace

bool is_answer_set(const Program& program, std::span<const AtomId> candidate) {
    auto interp = interpretation(program.atom_count(), candidate);
    // Must be a model of the program first; cheap rejection before the
    // least-model computation.
    for (const auto& r : program.rules) {
        if (!body_holds(r, interp)) continue;
        if (r.is_constraint() || !interp[*r.head]) return false;
    }
    // Least model of the reduct, computed in place.
    std::vector<bool> lm(program.atom_count(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : program.rules) {
            if (r.is_constraint() || lm[*r.head]) continue;
            if (std::any_of(r.neg_body.begin(), r.neg_body.end(), [&](AtomId a) { return interp[a]; })) continue;
            if (r.sum_body && !satisfied(*r.sum_body, interp)) continue;
            if (std::all_of(r.pos_body.begin(), r.pos_body.end(), [&](AtomId a) { return lm[a]; })) {
                lm[*r.head] = true;
                changed = true;
            }
        }
    }
    return lm == interp;
}

Weight eval_objective(const ObjectiveFunction& objective, const std::vector<bool>& interp) {
    return evaluate_sum(objective.terms, interp);
}

Weight eval_objective(const ObjectiveFunction& objective, std::span<const AtomId> model, std::size_t atom_count) {
    return eval_objective(objective, interpretation(atom_count, model));
}

CostVector eval_cost(const Program& program, const std::vector<bool>& interp) {
    std::vector<Weight> values;
    values.reserve(program.levels());
    for (const auto& f : program.objectives) values.push_back(eval_objective(f, interp));
    return CostVector(std::move(values));
}

CostVector eval_cost(const Program& program, std::span<const AtomId> model) {
    return eval_cost(program, interpretation(program.atom_count(), model));
}

ObjectiveFunction normalize(ObjectiveFunction f) {
    if (f.maximize) {
        for (auto& t : f.terms) {
            if (t.weight == std::numeric_limits<Weight>::min())
                throw std::overflow_error("weight cannot be negated");
            t.weight = -t.weight;
        }
        f.offset = -f.offset;
        f.maximize = false;
    }
    for (auto& t : f.terms) {
        if (t.weight >= 0) continue;
        // w*l == (-w)*(not l) + w
        f.offset = checked_add(f.offset, t.weight);
        t.weight = -t.weight;
        t.lit = t.lit.complement();
    }
    return f;
}

SumCondition normalize(SumCondition c) {
    for (auto& t : c.terms) {
        if (t.weight >= 0) continue;
        c.bound = checked_add(c.bound, -t.weight);
        t.weight = -t.weight;
        t.lit = t.lit.complement();
    }
    return c;
}

Program normalize_objectives(Program program) {
    for (auto& f : program.objectives) f = normalize(std::move(f));
    for (auto& r : program.rules)
        if (r.sum_body) r.sum_body = normalize(std::move(*r.sum_body));
    return program;
}

std::size_t oracle_limit() {
    if (const char* env = std::getenv("ASEO_ORACLE_LIMIT")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
        }
    }
    return kDefaultOracleLimit;
}

std::vector<RankedModel> brute_force_aseo(const Program& program, std::size_t limit) {
    auto n = program.atom_count();
    if (n > limit || n >= 63)
        throw OracleLimitError("signature of " + std::to_string(n) + " atoms exceeds oracle limit " +
                               std::to_string(limit));
    std::vector<RankedModel> out;
    AtomSet candidate;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        candidate.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) candidate.push_back(static_cast<AtomId>(i));
        if (is_answer_set(program, candidate)) out.push_back({candidate, eval_cost(program, candidate), 0});
    }
    std::sort(out.begin(), out.end(), [](const RankedModel& a, const RankedModel& b) {
        if (auto c = compare_lex(a.cost, b.cost); c != 0) return c < 0;
        return a.model < b.model;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = i;
    return out;
}

}  // namespace aseo
