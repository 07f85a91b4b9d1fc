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

#include "aseo/enumeration.hpp"

#include "aseo/semantics.hpp"

#include <algorithm>

namespace aseo {

Rule build_constraint_gt(const ObjectiveFunction& objective, Weight bound) {
    return Rule{std::nullopt, {}, {}, SumCondition{objective.terms, Relation::LE, bound}};
}

Rule build_constraint_eq(const ObjectiveFunction& objective, Weight value) {
    return Rule{std::nullopt, {}, {}, SumCondition{objective.terms, Relation::NE, value}};
}

EnumerationResult naive_enumerate(const Program& program, Limit k, const SearchConfig& config) {
    EnumerationResult out;
    std::vector<RankedModel> all;
    out.search = enumerate(program, config, {}, [&](const AtomSet& m) {
        all.push_back({m, eval_cost(program, m), all.size()});
        return ModelAction::Continue;
    });
    if (out.search.interrupted) {
        out.interrupted = true;
        return out;
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const RankedModel& a, const RankedModel& b) { return compare_lex(a.cost, b.cost) < 0; });
    if (k && all.size() > *k) all.resize(*k);
    for (std::size_t i = 0; i < all.size(); ++i) all[i].index = i;
    out.models = std::move(all);
    return out;
}

namespace {

std::vector<Rule> materialize(const Program& program, const std::vector<LevelConstraint>& cs) {
    std::vector<Rule> rules;
    for (const auto& c : cs) {
        const auto& f = program.objectives[static_cast<std::size_t>(c.level) - 1];
        rules.push_back(c.survivors == Relation::GT ? build_constraint_gt(f, c.value)
                                                    : build_constraint_eq(f, c.value));
    }
    return rules;
}

// Equalities on levels 1..level-1 and a strict demand on `level`.
std::vector<LevelConstraint> tighten(const CostVector& c, std::size_t level) {
    std::vector<LevelConstraint> cs;
    for (std::size_t i = 1; i < level; ++i) cs.push_back({static_cast<int>(i), Relation::EQ, c[i - 1]});
    cs.push_back({static_cast<int>(level), Relation::GT, c[level - 1]});
    return cs;
}

}  // namespace

WeightSummary weight_enumerate(const Program& program, Limit k, const ModelSink& sink, const SearchConfig& config) {
    WeightSummary summary;
    if (k && *k == 0) return summary;

    auto emit = [&](const AtomSet& m, const CostVector& cost) {
        RankedModel rm{m, cost, summary.emitted++};
        bool stop = sink && sink(rm) == ModelAction::Stop;
        return stop || (k && summary.emitted >= *k) ? ModelAction::Stop : ModelAction::Continue;
    };

    const std::size_t p = program.levels();
    if (p == 0) {
        // Constant objective: plain enumeration.
        auto s = enumerate(program, config, {}, [&](const AtomSet& m) { return emit(m, CostVector{}); });
        ++summary.solver_calls;
        summary.unsat = summary.emitted == 0 && s.exhausted;
        summary.interrupted = s.interrupted;
        return summary;
    }

    std::size_t level = p;
    std::vector<LevelConstraint> working;
    CostVector current;
    try {
        while (level >= 1) {
            WeightStep step;
            step.constraints = working;
            auto extra = materialize(program, working);
            auto opt = optimize(program, extra, config);
            if (!opt) {
                summary.trace.push_back(std::move(step));
                if (summary.emitted == 0) {
                    summary.unsat = true;
                    return summary;
                }
                if (level == 1) break;
                --level;
                working = tighten(current, level);
                continue;
            }
            summary.solver_calls += opt->solver_calls;
            current = opt->cost;
            step.optimum = current;

            std::vector<LevelConstraint> fixed;
            for (std::size_t i = 1; i <= p; ++i) fixed.push_back({static_cast<int>(i), Relation::EQ, current[i - 1]});
            auto fixed_rules = materialize(program, fixed);
            auto before = summary.emitted;
            bool stopped = false;
            auto s = enumerate(program, fixed_rules, config, {}, [&](const AtomSet& m) {
                auto action = emit(m, current);
                stopped = action == ModelAction::Stop;
                return action;
            });
            ++summary.solver_calls;
            step.emitted = summary.emitted - before;
            summary.trace.push_back(std::move(step));
            if (s.interrupted) {
                summary.interrupted = true;
                return summary;
            }
            if (stopped) return summary;

            level = p;
            working = tighten(current, level);
        }
    } catch (const SearchInterrupted&) {
        summary.interrupted = true;
    }
    return summary;
}

TopKWindow::TopKWindow(std::size_t k) : k_(k) {
    if (k == 0) throw std::invalid_argument("window size must be positive");
}

bool TopKWindow::insert(RankedModel m) {
    auto pos = std::upper_bound(entries_.begin(), entries_.end(), m, [](const RankedModel& a, const RankedModel& b) {
        return compare_lex(a.cost, b.cost) < 0;
    });
    bool kept = static_cast<std::size_t>(pos - entries_.begin()) < k_;
    entries_.insert(pos, std::move(m));
    if (entries_.size() > k_) entries_.pop_back();
    if (full()) threshold_ = entries_.back().cost;
    return kept;
}

SmartEnumerator::SmartEnumerator(const Program& program, std::size_t k) : program_(program), window_(k) {}

CostVector SmartEnumerator::partial_cost(const Trail& trail) const {
    std::vector<Weight> values;
    for (const auto& f : program_.objectives) {
        Weight sum = 0;
        for (const auto& t : f.terms)
            if (trail.is_true(t.lit)) sum = checked_add(sum, t.weight);
        values.push_back(sum);
    }
    return CostVector(std::move(values));
}

std::optional<Nogood> SmartEnumerator::on_partial(const Trail& trail) {
    if (trail.complete() || !window_.threshold()) return std::nullopt;
    const auto& t = *window_.threshold();
    auto cost = partial_cost(trail);
    std::size_t deciding = 0;
    while (deciding < cost.size() && cost[deciding] == t[deciding]) ++deciding;
    if (deciding == cost.size() || cost[deciding] < t[deciding]) return std::nullopt;
    // Literals that carry the cost at levels 1..deciding; every extension
    // keeps them and so stays above the threshold.
    Nogood ng;
    for (std::size_t lv = 0; lv <= deciding; ++lv)
        for (const auto& term : program_.objectives[lv].terms)
            if (term.weight > 0 && trail.is_true(term.lit)) ng.literals.push_back(term.lit);
    std::sort(ng.literals.begin(), ng.literals.end());
    ng.literals.erase(std::unique(ng.literals.begin(), ng.literals.end()), ng.literals.end());
    ++pruned_;
    return ng;
}

ModelAction SmartEnumerator::on_model(const AtomSet& model) {
    if (std::binary_search(seeded_.begin(), seeded_.end(), model)) return ModelAction::Continue;
    window_.insert({model, eval_cost(program_, model), discovered_++});
    return ModelAction::Continue;
}

void SmartEnumerator::seed(AtomSet model) {
    window_.insert({model, eval_cost(program_, model), discovered_++});
    seeded_.insert(std::upper_bound(seeded_.begin(), seeded_.end(), model), model);
}

std::vector<RankedModel> SmartEnumerator::result() const {
    auto out = window_.entries();
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = i;
    return out;
}

EnumerationResult smart_enumerate(const Program& program, std::size_t k, const SearchConfig& config) {
    if (k == 0) throw std::invalid_argument("smart enumeration needs a finite k >= 1");
    SmartEnumerator smart(program, k);
    EnumerationResult out;
    out.search = enumerate(
        program, config, [&](const Trail& t) { return smart.on_partial(t); },
        [&](const AtomSet& m) { return smart.on_model(m); });
    out.interrupted = out.search.interrupted;
    if (!out.interrupted) out.models = smart.result();
    return out;
}

}  // namespace aseo
