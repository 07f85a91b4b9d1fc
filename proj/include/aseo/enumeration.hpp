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

#pragma once

#include "aseo/program.hpp"
#include "aseo/solver.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace aseo {

/// Number of answer sets to produce; std::nullopt means all of them.
using Limit = std::optional<std::size_t>;
inline constexpr Limit kAll = std::nullopt;

/// `:- #sum{w:l ...} <= bound.` Survivors satisfy f(A) > bound.
Rule build_constraint_gt(const ObjectiveFunction& objective, Weight bound);
/// `:- #sum{w:l ...} != value.` Survivors satisfy f(A) = value.
Rule build_constraint_eq(const ObjectiveFunction& objective, Weight value);

struct EnumerationResult {
    std::vector<RankedModel> models;
    SearchSummary search;
    bool interrupted = false;
};

/// Enumerates every answer set, then sorts by cost (stable in discovery
/// order) and keeps the first k. Output indices are output positions.
EnumerationResult naive_enumerate(const Program& program, Limit k, const SearchConfig& config = {});

/// Survivor condition added to the working program for one level.
struct LevelConstraint {
    int level = 1;
    Relation survivors = Relation::EQ;  // EQ: f = value, GT: f > value
    Weight value = 0;
    friend bool operator==(const LevelConstraint&, const LevelConstraint&) = default;
};

/// One optimization round of weight enumeration: the constraints it ran
/// under and the optimum found, if any.
struct WeightStep {
    std::vector<LevelConstraint> constraints;
    std::optional<CostVector> optimum;
    std::size_t emitted = 0;
};

struct WeightSummary {
    std::size_t emitted = 0;
    std::size_t solver_calls = 0;
    bool unsat = false;  // no answer set at all
    bool interrupted = false;
    std::vector<WeightStep> trace;
};

using ModelSink = std::function<ModelAction(const RankedModel&)>;

/// Streams answer sets to `sink` in non-decreasing lexicographic cost order.
/// Each round rebuilds the working program from `program` plus at most p
/// level constraints: optimize, pin every level to the optimum and enumerate
/// that cost class, then demand a strictly larger value at the last level.
/// When a round is unsatisfiable the strict demand moves one level up.
WeightSummary weight_enumerate(const Program& program, Limit k, const ModelSink& sink,
                               const SearchConfig& config = {});

/// Best-k buffer ordered by (cost, discovery).
class TopKWindow {
public:
    explicit TopKWindow(std::size_t k);

    std::size_t capacity() const { return k_; }
    bool full() const { return entries_.size() == k_; }
    const std::vector<RankedModel>& entries() const { return entries_; }
    /// Cost of the k-th entry once full; std::nullopt stands for +infinity.
    const std::optional<CostVector>& threshold() const { return threshold_; }

    /// Insertion sort; ties go behind existing entries. Drops entry k+1.
    /// Returns false if the new entry was the one dropped.
    bool insert(RankedModel m);

private:
    std::size_t k_;
    std::vector<RankedModel> entries_;
    std::optional<CostVector> threshold_;
};

/// Window-based top-k search over a single enumeration run. Partial
/// assignments whose partial cost exceeds the window threshold are cut off by
/// a nogood over the literals carrying that cost.
class SmartEnumerator {
public:
    SmartEnumerator(const Program& program, std::size_t k);

    /// Per-level sum of weights of objective literals true on the trail.
    CostVector partial_cost(const Trail& trail) const;

    std::optional<Nogood> on_partial(const Trail& trail);
    ModelAction on_model(const AtomSet& model);

    /// Places a known answer set in the window as if it had been discovered.
    /// The search will not count it a second time.
    void seed(AtomSet model);

    const TopKWindow& window() const { return window_; }
    std::size_t discovered() const { return discovered_; }
    std::size_t pruned() const { return pruned_; }

    std::vector<RankedModel> result() const;

private:
    const Program& program_;
    TopKWindow window_;
    std::size_t discovered_ = 0;
    std::size_t pruned_ = 0;
    std::vector<AtomSet> seeded_;
};

/// Throws std::invalid_argument for k == 0.
EnumerationResult smart_enumerate(const Program& program, std::size_t k, const SearchConfig& config = {});

}  // namespace aseo
