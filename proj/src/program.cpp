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

#include "aseo/program.hpp"

#include <limits>
#include <sstream>

namespace aseo {

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::LE: return "<=";
        case Relation::LT: return "<";
        case Relation::GE: return ">=";
        case Relation::GT: return ">";
        case Relation::EQ: return "=";
        case Relation::NE: return "!=";
    }
    return "?";
}

Relation negate(Relation r) {
    switch (r) {
        case Relation::LE: return Relation::GT;
        case Relation::LT: return Relation::GE;
        case Relation::GE: return Relation::LT;
        case Relation::GT: return Relation::LE;
        case Relation::EQ: return Relation::NE;
        case Relation::NE: return Relation::EQ;
    }
    return r;
}

bool holds(Weight lhs, Relation r, Weight rhs) {
    switch (r) {
        case Relation::LE: return lhs <= rhs;
        case Relation::LT: return lhs < rhs;
        case Relation::GE: return lhs >= rhs;
        case Relation::GT: return lhs > rhs;
        case Relation::EQ: return lhs == rhs;
        case Relation::NE: return lhs != rhs;
    }
    return false;
}

AtomId Signature::intern(std::string_view name) {
    std::string key(name);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    auto id = static_cast<AtomId>(names_.size());
    names_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<AtomId> Signature::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
}

Program& Program::add_rule(Rule r) {
    rules.push_back(std::move(r));
    return *this;
}

Program& Program::add_objective(std::vector<WeightedLiteral> terms) {
    ObjectiveFunction f;
    f.level = static_cast<int>(objectives.size()) + 1;
    f.terms = std::move(terms);
    objectives.push_back(std::move(f));
    return *this;
}

void Program::validate() const {
    auto n = atom_count();
    auto check_atom = [n](AtomId a) {
        if (a >= n) throw std::invalid_argument("atom id " + std::to_string(a) + " outside signature");
    };
    auto check_terms = [&](const std::vector<WeightedLiteral>& terms) {
        for (const auto& t : terms) {
            check_atom(t.lit.atom());
            if (t.weight < 0) throw std::invalid_argument("negative weight after normalization");
        }
    };
    for (const auto& r : rules) {
        if (r.head) check_atom(*r.head);
        for (auto a : r.pos_body) check_atom(a);
        for (auto a : r.neg_body) check_atom(a);
        if (r.sum_body) check_terms(r.sum_body->terms);
    }
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        if (objectives[i].level != static_cast<int>(i) + 1)
            throw std::invalid_argument("objective levels must be contiguous from 1");
        check_terms(objectives[i].terms);
    }
}

std::strong_ordering compare_lex(const CostVector& a, const CostVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cost vectors of different length: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const CostVector& a, const CostVector& b) { return compare_lex(a, b); }

std::string to_string(const CostVector& c) {
    std::ostringstream os;
    os << '<';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << '>';
    return os.str();
}

Weight checked_add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("weight sum overflows 64-bit cost");
    return r;
}

std::string to_string(const Program& p, Literal l) {
    return (l.positive() ? "" : "not ") + p.atoms.name(l.atom());
}

}  // namespace aseo
