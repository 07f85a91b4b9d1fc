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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace aseo {

/// Membership table over the signature, built from an AtomSet.
std::vector<bool> interpretation(std::size_t atom_count, std::span<const AtomId> atoms);
AtomSet atoms_of(const std::vector<bool>& interp);

bool satisfied(Literal l, const std::vector<bool>& interp);
Weight evaluate_sum(std::span<const WeightedLiteral> terms, const std::vector<bool>& interp);
bool satisfied(const SumCondition& c, const std::vector<bool>& interp);

/// Gelfond-Lifschitz reduct: drops constraints and rules blocked by the
/// candidate, strips negative bodies. A rule with a sum condition survives
/// iff the condition holds under the candidate; the condition itself is
/// removed from the reduct rule.
Program reduct(const Program& program, std::span<const AtomId> candidate);

/// Least model of a positive program by fixpoint iteration from the empty
/// set. Throws std::invalid_argument if the program has negative bodies,
/// sum conditions or constraints.
AtomSet least_model(const Program& positive);

bool is_answer_set(const Program& program, std::span<const AtomId> candidate);

Weight eval_objective(const ObjectiveFunction& objective, std::span<const AtomId> model,
                      std::size_t atom_count);
Weight eval_objective(const ObjectiveFunction& objective, const std::vector<bool>& interp);
CostVector eval_cost(const Program& program, std::span<const AtomId> model);
CostVector eval_cost(const Program& program, const std::vector<bool>& interp);

/// Rewrites negative weights and maximize levels so that every objective is a
/// minimization over non-negative weights. Sum conditions with negative
/// weights are rewritten the same way, with the bound shifted.
Program normalize_objectives(Program program);
ObjectiveFunction normalize(ObjectiveFunction objective);
SumCondition normalize(SumCondition condition);

class OracleLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleLimit = 22;

/// Limit from ASEO_ORACLE_LIMIT if set, kDefaultOracleLimit otherwise.
std::size_t oracle_limit();

/// Reference enumeration: checks every subset of the signature with
/// is_answer_set and sorts by (cost, canonical atom order). Throws
/// OracleLimitError above `limit` atoms.
std::vector<RankedModel> brute_force_aseo(const Program& program, std::size_t limit = oracle_limit());

}  // namespace aseo
