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

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aseo {

using AtomId = std::uint32_t;
using Weight = std::int64_t;

/// Sorted, duplicate-free sequence of atom ids. Used for answer sets and
/// candidate interpretations; the sort order doubles as the canonical
/// tie-break order between sets.
using AtomSet = std::vector<AtomId>;

class Literal {
public:
    constexpr Literal() = default;
    constexpr Literal(AtomId atom, bool positive) : atom_(atom), positive_(positive) {}

    static constexpr Literal pos(AtomId a) { return {a, true}; }
    static constexpr Literal neg(AtomId a) { return {a, false}; }

    constexpr AtomId atom() const { return atom_; }
    constexpr bool positive() const { return positive_; }
    constexpr Literal complement() const { return {atom_, !positive_}; }

    /// Dense index usable for per-literal tables: 2*atom + (negative ? 1 : 0).
    constexpr std::size_t index() const { return 2 * std::size_t{atom_} + (positive_ ? 0 : 1); }

    friend constexpr bool operator==(Literal, Literal) = default;
    friend constexpr auto operator<=>(Literal a, Literal b) {
        if (auto c = a.atom_ <=> b.atom_; c != 0) return c;
        return b.positive_ <=> a.positive_;
    }

private:
    AtomId atom_ = 0;
    bool positive_ = true;
};

struct WeightedLiteral {
    Weight weight = 0;
    Literal lit;
    friend bool operator==(const WeightedLiteral&, const WeightedLiteral&) = default;
};

enum class Relation { LE, LT, GE, GT, EQ, NE };

std::string_view to_string(Relation r);
Relation negate(Relation r);
bool holds(Weight lhs, Relation r, Weight rhs);

/// Body element `#sum{w1:l1; ...} rel bound`.
struct SumCondition {
    std::vector<WeightedLiteral> terms;
    Relation relation = Relation::LE;
    Weight bound = 0;
    friend bool operator==(const SumCondition&, const SumCondition&) = default;
};

/// Ground normal rule `head :- pos, not neg, sum.`; a missing head makes it a
/// constraint.
struct Rule {
    std::optional<AtomId> head;
    std::vector<AtomId> pos_body;
    std::vector<AtomId> neg_body;
    std::optional<SumCondition> sum_body;

    bool is_constraint() const { return !head.has_value(); }
    friend bool operator==(const Rule&, const Rule&) = default;
};

/// One priority level of a lexicographic objective. Level 1 is the most
/// significant. `offset` records the constant dropped while normalizing
/// weights; the value in the source sense is `sum + offset`.
struct ObjectiveFunction {
    int level = 1;
    std::vector<WeightedLiteral> terms;
    Weight offset = 0;
    bool maximize = false;
    friend bool operator==(const ObjectiveFunction&, const ObjectiveFunction&) = default;
};

/// Interned atom names. Ids are dense and assigned in first-seen order.
class Signature {
public:
    AtomId intern(std::string_view name);
    std::optional<AtomId> find(std::string_view name) const;
    const std::string& name(AtomId id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, AtomId> index_;
};

class Program {
public:
    Signature atoms;
    std::vector<Rule> rules;
    /// Sorted by level, levels contiguous from 1.
    std::vector<ObjectiveFunction> objectives;

    AtomId atom(std::string_view name) { return atoms.intern(name); }
    std::size_t atom_count() const { return atoms.size(); }
    std::size_t levels() const { return objectives.size(); }

    Program& add_rule(Rule r);
    Program& add_fact(AtomId head) { return add_rule(Rule{head, {}, {}, {}}); }
    /// Appends an objective at level `levels() + 1`.
    Program& add_objective(std::vector<WeightedLiteral> terms);

    /// Throws std::invalid_argument if an atom id is out of range, a level
    /// sequence is not 1..p, or a weight is negative.
    void validate() const;
};

/// One non-negative integer per priority level, compared lexicographically.
class CostVector {
public:
    CostVector() = default;
    explicit CostVector(std::vector<Weight> values) : values_(std::move(values)) {}
    CostVector(std::initializer_list<Weight> values) : values_(values) {}

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    Weight operator[](std::size_t i) const { return values_[i]; }
    Weight& operator[](std::size_t i) { return values_[i]; }
    const std::vector<Weight>& values() const { return values_; }

    friend bool operator==(const CostVector&, const CostVector&) = default;
    /// Throws std::invalid_argument on length mismatch.
    friend std::strong_ordering operator<=>(const CostVector& a, const CostVector& b);

private:
    std::vector<Weight> values_;
};

std::strong_ordering compare_lex(const CostVector& a, const CostVector& b);
std::string to_string(const CostVector& c);

/// An answer set with its cost and position in the emission order.
struct RankedModel {
    AtomSet model;
    CostVector cost;
    std::size_t index = 0;
};

/// Adds with overflow detection; throws std::overflow_error.
Weight checked_add(Weight a, Weight b);

std::string to_string(const Program& p, Literal l);

}  // namespace aseo
