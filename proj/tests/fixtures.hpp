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

#include "aseo/parser.hpp"
#include "aseo/semantics.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace aseo::test {

// Three answer sets {x1}, {x2}, {x3} with costs <1,4,1>, <1,4,7>, <1,7,4>.
inline const char* const kThreeLevels = R"(
x1 :- not x2, not x3.
x2 :- not x1, not x3.
x3 :- not x1, not x2.
#minimize{1@1:x1; 1@1:x2; 1@1:x3}.
#minimize{4@2:x1; 4@2:x2; 7@2:x3}.
#minimize{1@3:x1; 7@3:x2; 4@3:x3}.
)";

// Answer sets project onto A1..A5 over l1..l5; selector s_j picks A_j.
// Weights (l1,5) (l2,1) (l3,2) (l4,2) (l5,6).
inline const char* const kFiveSelectors = R"(
s1 :- not s2, not s3, not s4, not s5.
s2 :- not s1, not s3, not s4, not s5.
s3 :- not s1, not s2, not s4, not s5.
s4 :- not s1, not s2, not s3, not s5.
s5 :- not s1, not s2, not s3, not s4.
l1 :- s1.  l2 :- s1.  l3 :- s1.
l1 :- s2.  l3 :- s2.  l5 :- s2.
l2 :- s3.  l3 :- s3.  l5 :- s3.
l1 :- s4.  l2 :- s4.  l4 :- s4.
l1 :- s5.  l4 :- s5.  l5 :- s5.
#minimize{5@1:l1; 1@1:l2; 2@1:l3; 2@1:l4; 6@1:l5}.
)";

inline const char* const kChoice = "a :- not b. b :- not a.";

inline Program parse(const std::string& text) { return parse_program(text); }

inline AtomSet atoms(const Program& p, std::initializer_list<const char*> names) {
    AtomSet out;
    for (auto n : names) out.push_back(*p.atoms.find(n));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> names(const Program& p, const AtomSet& s) {
    std::vector<std::string> out;
    for (auto a : s) out.push_back(p.atoms.name(a));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<CostVector> costs(const std::vector<RankedModel>& ms) {
    std::vector<CostVector> out;
    for (const auto& m : ms) out.push_back(m.cost);
    return out;
}

inline std::vector<CostVector> sorted_costs(std::vector<CostVector> cs) {
    std::sort(cs.begin(), cs.end(), [](const CostVector& a, const CostVector& b) { return compare_lex(a, b) < 0; });
    return cs;
}

inline std::vector<AtomSet> model_sets(const std::vector<RankedModel>& ms) {
    std::vector<AtomSet> out;
    for (const auto& m : ms) out.push_back(m.model);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool non_decreasing(const std::vector<RankedModel>& ms) {
    for (std::size_t i = 1; i < ms.size(); ++i)
        if (compare_lex(ms[i - 1].cost, ms[i].cost) > 0) return false;
    return true;
}

}  // namespace aseo::test
