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

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace aseo {

enum class Reason : std::uint8_t {
    Decision,
    Flipped,     // complement of an exhausted decision
    Propagated,
};

struct TrailEntry {
    Literal lit;
    std::uint32_t level = 0;
    Reason reason = Reason::Propagated;
};

/// Partial assignment in assignment order. At most one polarity per atom;
/// entries are removed only by backtracking whole decision levels.
class Trail {
public:
    explicit Trail(std::size_t atom_count) : values_(atom_count, kUnassigned) {}

    std::span<const TrailEntry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::size_t atom_count() const { return values_.size(); }
    bool complete() const { return entries_.size() == values_.size(); }
    std::uint32_t level() const { return static_cast<std::uint32_t>(level_starts_.size()); }

    bool assigned(AtomId a) const { return values_[a] != kUnassigned; }
    bool is_true(Literal l) const { return values_[l.atom()] == (l.positive() ? kTrue : kFalse); }
    bool is_false(Literal l) const { return values_[l.atom()] == (l.positive() ? kFalse : kTrue); }

    std::vector<Literal> literals() const;
    /// Atoms assigned true; only meaningful once complete().
    AtomSet true_atoms() const;

    void push(Literal l, Reason reason);
    void new_level() { level_starts_.push_back(entries_.size()); }
    /// Undoes the current level and returns its decision literal.
    Literal pop_level();

private:
    static constexpr std::int8_t kUnassigned = -1;
    static constexpr std::int8_t kFalse = 0;
    static constexpr std::int8_t kTrue = 1;

    std::vector<std::int8_t> values_;
    std::vector<TrailEntry> entries_;
    std::vector<std::size_t> level_starts_;
};

/// Literals that no answer set may contain together.
struct Nogood {
    std::vector<Literal> literals;
};

struct SearchConfig {
    enum class Branching { IndexOrder, Shuffled };

    Branching branching = Branching::IndexOrder;
    std::uint64_t seed = 0;
    /// Atoms branched on before all others, in the given order.
    std::vector<AtomId> priority;
    bool positive_first = true;
    /// Re-check every model against is_answer_set. Defaults to on for
    /// signatures within the oracle limit.
    std::optional<bool> oracle_verify;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class ModelAction { Continue, Stop };

using PartialHook = std::function<std::optional<Nogood>(const Trail&)>;
using ModelHook = std::function<ModelAction(const AtomSet&)>;

struct SearchSummary {
    std::size_t models = 0;
    std::size_t decisions = 0;
    std::size_t conflicts = 0;
    std::size_t nogoods = 0;
    bool exhausted = false;    // search space fully explored
    bool interrupted = false;  // deadline reached
};

/// Thrown by solve_one/optimize when the configured deadline passes.
class SearchInterrupted : public std::runtime_error {
public:
    SearchInterrupted() : std::runtime_error("search interrupted by deadline") {}
};

/// Calls on_model once per answer set of `program` extended by the `extra`
/// rules. on_partial sees the trail after every propagation fixpoint,
/// including complete ones; a returned nogood is kept for the rest of the
/// search.
SearchSummary enumerate(const Program& program, std::span<const Rule> extra, const SearchConfig& config,
                        const PartialHook& on_partial, const ModelHook& on_model);

inline SearchSummary enumerate(const Program& program, const SearchConfig& config, const PartialHook& on_partial,
                               const ModelHook& on_model) {
    return enumerate(program, {}, config, on_partial, on_model);
}

std::optional<AtomSet> solve_one(const Program& program, std::span<const Rule> extra = {},
                                 const SearchConfig& config = {});

struct Optimum {
    AtomSet model;
    CostVector cost;
    std::size_t solver_calls = 0;
};

/// Lexicographically optimal answer set by model improvement: each level is
/// tightened with `:- #sum{f_i} >= c_i.` while the levels above it are pinned
/// with equality constraints, until the tightened program is unsatisfiable.
std::optional<Optimum> optimize(const Program& program, std::span<const Rule> extra = {},
                                const SearchConfig& config = {});

}  // namespace aseo
