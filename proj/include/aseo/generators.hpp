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

#include <cstdint>
#include <string>

namespace aseo {

/// Worst-case family with 2^(2n-1) answer sets over 2^n objective values:
/// a_i/b_i are free bits, lt_i compares the numbers they encode from bit i
/// upwards, and two constraints keep half of the b-assignments per a-value.
/// Objective: #minimize{2^(i-1)@1 : a_i}. Throws std::invalid_argument for
/// n < 1 and std::overflow_error when 2^(n-1) does not fit a weight.
std::string generate_pn(int n);

struct RandomProgramSpec {
    std::size_t atoms = 10;
    std::size_t rules = 12;
    std::size_t levels = 1;
    std::uint64_t seed = 0;
};

/// Deterministic random normal program with non-negative objective terms on
/// each requested level. Identical specs produce identical text.
std::string generate_random(const RandomProgramSpec& spec);

}  // namespace aseo
