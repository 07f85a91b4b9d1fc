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

#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace aseo {

std::string generate_pn(int n) {
    if (n < 1) throw std::invalid_argument("P_n needs n >= 1");
    if (n - 1 >= std::numeric_limits<std::int64_t>::digits)
        throw std::overflow_error("2^(n-1) overflows the weight type");
    std::ostringstream os;
    os << "% P_" << n << ": " << "2^" << (2 * n - 1) << " answer sets\n";
    for (int i = 1; i <= n; ++i) {
        os << "a_" << i << " :- not na_" << i << ".\n";
        os << "na_" << i << " :- not a_" << i << ".\n";
        os << "b_" << i << " :- not nb_" << i << ".\n";
        os << "nb_" << i << " :- not b_" << i << ".\n";
    }
    for (int i = 1; i <= n; ++i) {
        os << "lt_" << i << " :- na_" << i << ", b_" << i << ".\n";
        if (i < n) {
            os << "lt_" << i << " :- a_" << i << ", b_" << i << ", lt_" << i + 1 << ".\n";
            os << "lt_" << i << " :- na_" << i << ", nb_" << i << ", lt_" << i + 1 << ".\n";
        }
    }
    os << ":- b_1, lt_2.\n";
    os << ":- nb_1, not lt_2.\n";
    os << "#minimize{";
    for (int i = 1; i <= n; ++i) os << (i > 1 ? "; " : "") << (std::int64_t{1} << (i - 1)) << "@1:a_" << i;
    os << "}.\n";
    return os.str();
}

std::string generate_random(const RandomProgramSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    auto below = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    auto atom = [&] { return "x" + std::to_string(below(spec.atoms)); };

    std::ostringstream os;
    if (spec.atoms == 0) return os.str();
    auto index = [&] { return below(spec.atoms); };
    auto name = [](std::size_t i) { return "x" + std::to_string(i); };
    for (std::size_t r = 0; r < spec.rules; ++r) {
        auto kind = below(20);
        if (kind < 10 && spec.atoms > 1) {
            // Even negative loop: a free choice between two atoms.
            auto i = index();
            auto j = index();
            while (j == i) j = index();
            os << name(i) << " :- not " << name(j) << ".\n" << name(j) << " :- not " << name(i) << ".\n";
        } else if (kind < 17) {
            auto h = index();
            os << name(h) << " :- ";
            auto pos = below(3);
            const char* sep = "";
            for (std::size_t i = 0; i < pos; ++i, sep = ", ") os << sep << atom();
            if (pos == 0 || below(2)) {
                auto g = index();
                if (g == h) g = (g + 1) % spec.atoms;
                if (g != h) os << sep << "not " << name(g);
                else os << sep << name(g);
            }
            os << ".\n";
        } else {
            auto i = index();
            auto j = index();
            os << ":- " << (below(2) ? "" : "not ") << name(i) << ", " << (below(2) ? "" : "not ") << name(j)
               << ".\n";
        }
    }
    for (std::size_t level = 1; level <= spec.levels; ++level) {
        auto terms = 2 + below(3);
        os << "#minimize{";
        for (std::size_t i = 0; i < terms; ++i)
            os << (i ? "; " : "") << below(6) << "@" << level << ":" << (below(3) == 0 ? "not " : "") << atom();
        os << "}.\n";
    }
    return os.str();
}

}  // namespace aseo
