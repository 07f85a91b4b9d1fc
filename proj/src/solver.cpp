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

#include "aseo/solver.hpp"

#include "aseo/semantics.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace aseo {

std::vector<Literal> Trail::literals() const {
    std::vector<Literal> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.lit);
    return out;
}

AtomSet Trail::true_atoms() const {
    AtomSet out;
    for (std::size_t a = 0; a < values_.size(); ++a)
        if (values_[a] == kTrue) out.push_back(static_cast<AtomId>(a));
    return out;
}

void Trail::push(Literal l, Reason reason) {
    values_[l.atom()] = l.positive() ? kTrue : kFalse;
    entries_.push_back({l, level(), reason});
}

Literal Trail::pop_level() {
    auto start = level_starts_.back();
    level_starts_.pop_back();
    Literal decision = entries_[start].lit;
    for (auto i = start; i < entries_.size(); ++i) values_[entries_[i].lit.atom()] = kUnassigned;
    entries_.resize(start);
    return decision;
}

namespace {

enum class Truth { False, True, Open };

class Engine {
public:
    Engine(const Program& program, std::span<const Rule> extra, const SearchConfig& config)
        : program_(program), config_(config), trail_(program.atom_count()) {
        for (const auto& r : program.rules) rules_.push_back(&r);
        for (const auto& r : extra) rules_.push_back(&r);
        const auto n = program.atom_count();
        rule_occ_.resize(n);
        heads_.resize(n);
        nogood_occ_.resize(n);
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            const Rule& r = *rules_[i];
            std::vector<AtomId> atoms;
            if (r.head) {
                heads_[*r.head].push_back(i);
                atoms.push_back(*r.head);
            }
            atoms.insert(atoms.end(), r.pos_body.begin(), r.pos_body.end());
            atoms.insert(atoms.end(), r.neg_body.begin(), r.neg_body.end());
            if (r.sum_body)
                for (const auto& t : r.sum_body->terms) atoms.push_back(t.lit.atom());
            std::sort(atoms.begin(), atoms.end());
            atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
            for (auto a : atoms) rule_occ_[a].push_back(i);
        }
        build_order();
        verify_ = config.oracle_verify.value_or(n <= oracle_limit());
        if (verify_ && !extra.empty()) {
            combined_ = program;
            combined_.rules.insert(combined_.rules.end(), extra.begin(), extra.end());
        }
    }

    SearchSummary run(const PartialHook& on_partial, const ModelHook& on_model) {
        SearchSummary sum;
        bool conflict = !initial_propagate();
        std::size_t steps = 0;
        for (;;) {
            if (config_.deadline && (++steps & 0xff) == 0 && std::chrono::steady_clock::now() >= *config_.deadline) {
                sum.interrupted = true;
                break;
            }
            if (conflict) {
                ++sum.conflicts;
                if (!backtrack()) {
                    sum.exhausted = true;
                    break;
                }
                conflict = !propagate();
                continue;
            }
            if (on_partial) {
                if (auto ng = on_partial(trail_)) {
                    auto status = add_nogood(std::move(ng->literals));
                    ++sum.nogoods;
                    if (status == NogoodStatus::Conflict) {
                        conflict = true;
                        continue;
                    }
                    if (status == NogoodStatus::Propagated) {
                        conflict = !propagate();
                        continue;
                    }
                }
            }
            if (!trail_.complete()) {
                decide();
                ++sum.decisions;
                conflict = !propagate();
                continue;
            }
            if (stable()) {
                auto model = trail_.true_atoms();
                if (verify_ && !is_answer_set(combined_.rules.empty() ? program_ : combined_, model))
                    throw std::logic_error("solver produced a set that is not an answer set");
                ++sum.models;
                if (on_model && on_model(model) == ModelAction::Stop) break;
            }
            if (!backtrack()) {
                sum.exhausted = true;
                break;
            }
            conflict = !propagate();
        }
        return sum;
    }

private:
    enum class NogoodStatus { Conflict, Propagated, Idle };

    struct Body {
        Truth truth = Truth::True;
        int open = 0;
        // Single open element, when open == 1: a literal or the sum.
        std::optional<Literal> open_lit;
        bool open_sum = false;
    };

    Truth truth(Literal l) const {
        if (!trail_.assigned(l.atom())) return Truth::Open;
        return trail_.is_true(l) ? Truth::True : Truth::False;
    }

    std::pair<Weight, Weight> bounds(const SumCondition& c) const {
        Weight lo = 0, hi = 0;
        for (const auto& t : c.terms) {
            auto v = truth(t.lit);
            if (v == Truth::True) lo = checked_add(lo, t.weight);
            if (v != Truth::False) hi = checked_add(hi, t.weight);
        }
        return {lo, hi};
    }

    Truth truth(const SumCondition& c) const {
        auto [lo, hi] = bounds(c);
        const Weight b = c.bound;
        bool t = false, f = false;
        switch (c.relation) {
            case Relation::LE: t = hi <= b; f = lo > b; break;
            case Relation::LT: t = hi < b; f = lo >= b; break;
            case Relation::GE: t = lo >= b; f = hi < b; break;
            case Relation::GT: t = lo > b; f = hi <= b; break;
            case Relation::EQ: t = lo == hi && lo == b; f = b < lo || b > hi; break;
            case Relation::NE: t = b < lo || b > hi; f = lo == hi && lo == b; break;
        }
        return t ? Truth::True : f ? Truth::False : Truth::Open;
    }

    Body body(const Rule& r) const {
        Body out;
        auto add = [&](Truth v, auto&& mark_open) {
            if (v == Truth::False) out.truth = Truth::False;
            if (v == Truth::Open) {
                ++out.open;
                mark_open();
            }
        };
        for (auto a : r.pos_body) {
            add(truth(Literal::pos(a)), [&] { out.open_lit = Literal::pos(a); });
            if (out.truth == Truth::False) return out;
        }
        for (auto a : r.neg_body) {
            add(truth(Literal::neg(a)), [&] { out.open_lit = Literal::neg(a); });
            if (out.truth == Truth::False) return out;
        }
        if (r.sum_body) {
            add(truth(*r.sum_body), [&] { out.open_sum = true; });
            if (out.truth == Truth::False) return out;
        }
        if (out.open > 0) out.truth = Truth::Open;
        if (out.open != 1) {
            out.open_lit.reset();
            out.open_sum = false;
        } else if (out.open_sum) {
            out.open_lit.reset();
        }
        return out;
    }

    bool assign(Literal l) {
        if (trail_.is_true(l)) return true;
        if (trail_.is_false(l)) return false;
        trail_.push(l, Reason::Propagated);
        return true;
    }

    // Forces `c.bound rel sum` to hold.
    bool enforce(const SumCondition& c, Relation rel) {
        auto [lo, hi] = bounds(c);
        const Weight b = c.bound;
        std::optional<Weight> lower, upper;
        switch (rel) {
            case Relation::LE: upper = b; break;
            case Relation::LT: upper = b - 1; break;
            case Relation::GE: lower = b; break;
            case Relation::GT: lower = b + 1; break;
            case Relation::EQ: lower = upper = b; break;
            case Relation::NE: return !(lo == hi && lo == b);
        }
        if ((upper && lo > *upper) || (lower && hi < *lower)) return false;
        for (const auto& t : c.terms) {
            if (truth(t.lit) != Truth::Open || t.weight == 0) continue;
            if (upper && lo + t.weight > *upper) {
                if (!assign(t.lit.complement())) return false;
            } else if (lower && hi - t.weight < *lower) {
                if (!assign(t.lit)) return false;
            }
        }
        return true;
    }

    bool check_rule(std::size_t idx) {
        const Rule& r = *rules_[idx];
        auto b = body(r);
        if (b.truth == Truth::False) return true;
        bool head_false = r.is_constraint() || trail_.is_false(Literal::pos(*r.head));
        if (b.truth == Truth::True) return r.is_constraint() ? false : assign(Literal::pos(*r.head));
        if (head_false && b.open == 1) {
            if (b.open_lit) return assign(b.open_lit->complement());
            return enforce(*r.sum_body, negate(r.sum_body->relation));
        }
        return true;
    }

    bool check_support(AtomId a) {
        if (trail_.is_false(Literal::pos(a))) return true;
        std::size_t live = 0, last = 0;
        for (auto idx : heads_[a]) {
            if (body(*rules_[idx]).truth != Truth::False) {
                ++live;
                last = idx;
                if (live > 1) break;
            }
        }
        if (live == 0) return assign(Literal::neg(a));
        if (live == 1 && trail_.is_true(Literal::pos(a))) {
            const Rule& r = *rules_[last];
            for (auto p : r.pos_body)
                if (!assign(Literal::pos(p))) return false;
            for (auto n : r.neg_body)
                if (!assign(Literal::neg(n))) return false;
            if (r.sum_body && !enforce(*r.sum_body, r.sum_body->relation)) return false;
        }
        return true;
    }

    bool check_nogood(std::size_t idx) {
        const auto& ng = nogoods_[idx];
        std::optional<Literal> open;
        std::size_t n_open = 0;
        for (auto l : ng) {
            auto v = truth(l);
            if (v == Truth::False) return true;
            if (v == Truth::Open) {
                ++n_open;
                open = l;
            }
        }
        if (n_open == 0) return false;
        if (n_open == 1) return assign(open->complement());
        return true;
    }

    NogoodStatus add_nogood(std::vector<Literal> lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        auto idx = nogoods_.size();
        for (auto l : lits) nogood_occ_[l.atom()].push_back(idx);
        nogoods_.push_back(std::move(lits));
        auto before = trail_.size();
        if (!check_nogood(idx)) return NogoodStatus::Conflict;
        return trail_.size() > before ? NogoodStatus::Propagated : NogoodStatus::Idle;
    }

    bool initial_propagate() {
        for (std::size_t i = 0; i < rules_.size(); ++i)
            if (!check_rule(i)) return false;
        for (std::size_t a = 0; a < program_.atom_count(); ++a)
            if (!check_support(static_cast<AtomId>(a))) return false;
        return propagate();
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            AtomId a = trail_.entries()[qhead_++].lit.atom();
            for (auto idx : rule_occ_[a]) {
                if (!check_rule(idx)) return false;
                const Rule& r = *rules_[idx];
                if (r.head && *r.head != a && !check_support(*r.head)) return false;
            }
            if (!check_support(a)) return false;
            for (auto idx : nogood_occ_[a])
                if (!check_nogood(idx)) return false;
        }
        return true;
    }

    void build_order() {
        const auto n = program_.atom_count();
        std::vector<AtomId> rest(n);
        std::iota(rest.begin(), rest.end(), AtomId{0});
        if (config_.branching == SearchConfig::Branching::Shuffled) {
            std::mt19937_64 rng(config_.seed);
            for (std::size_t i = n; i > 1; --i) std::swap(rest[i - 1], rest[rng() % i]);
        }
        std::vector<bool> seen(n, false);
        for (auto a : config_.priority) {
            if (a < n && !seen[a]) {
                order_.push_back(a);
                seen[a] = true;
            }
        }
        for (auto a : rest)
            if (!seen[a]) order_.push_back(a);
    }

    void decide() {
        for (auto a : order_) {
            if (trail_.assigned(a)) continue;
            trail_.new_level();
            trail_.push(Literal(a, config_.positive_first), Reason::Decision);
            return;
        }
    }

    // Chronological backtracking: flip the most recent decision.
    bool backtrack() {
        if (trail_.level() == 0) return false;
        Literal decision = trail_.pop_level();
        qhead_ = std::min(qhead_, trail_.size());
        trail_.push(decision.complement(), Reason::Flipped);
        return true;
    }

    // Complete assignment equals the least model of its reduct.
    bool stable() const {
        const auto n = program_.atom_count();
        std::vector<bool> lm(n, false);
        std::vector<std::size_t> missing(rules_.size(), 0);
        std::vector<AtomId> queue;
        std::vector<std::vector<std::size_t>> watch(n);
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            const Rule& r = *rules_[i];
            if (r.is_constraint()) continue;
            bool blocked = std::any_of(r.neg_body.begin(), r.neg_body.end(),
                                       [&](AtomId c) { return trail_.is_true(Literal::pos(c)); });
            if (blocked || (r.sum_body && truth(*r.sum_body) != Truth::True)) continue;
            missing[i] = r.pos_body.size();
            for (auto p : r.pos_body) watch[p].push_back(i);
            if (missing[i] == 0 && !lm[*r.head]) {
                lm[*r.head] = true;
                queue.push_back(*r.head);
            }
        }
        while (!queue.empty()) {
            AtomId a = queue.back();
            queue.pop_back();
            for (auto i : watch[a]) {
                if (--missing[i] == 0) {
                    AtomId h = *rules_[i]->head;
                    if (!lm[h]) {
                        lm[h] = true;
                        queue.push_back(h);
                    }
                }
            }
        }
        for (std::size_t a = 0; a < n; ++a)
            if (lm[a] != trail_.is_true(Literal::pos(static_cast<AtomId>(a)))) return false;
        return true;
    }

    const Program& program_;
    const SearchConfig& config_;
    Trail trail_;
    std::vector<const Rule*> rules_;
    std::vector<std::vector<std::size_t>> rule_occ_;
    std::vector<std::vector<std::size_t>> heads_;
    std::vector<std::vector<Literal>> nogoods_;
    std::vector<std::vector<std::size_t>> nogood_occ_;
    std::vector<AtomId> order_;
    std::size_t qhead_ = 0;
    bool verify_ = false;
    Program combined_;
};

}  // namespace

SearchSummary enumerate(const Program& program, std::span<const Rule> extra, const SearchConfig& config,
                        const PartialHook& on_partial, const ModelHook& on_model) {
    Engine engine(program, extra, config);
    return engine.run(on_partial, on_model);
}

std::optional<AtomSet> solve_one(const Program& program, std::span<const Rule> extra, const SearchConfig& config) {
    std::optional<AtomSet> found;
    auto summary = enumerate(program, extra, config, {}, [&](const AtomSet& m) {
        found = m;
        return ModelAction::Stop;
    });
    if (!found && summary.interrupted) throw SearchInterrupted();
    return found;
}

std::optional<Optimum> optimize(const Program& program, std::span<const Rule> extra, const SearchConfig& config) {
    std::vector<Rule> rules(extra.begin(), extra.end());
    Optimum best;
    auto first = solve_one(program, rules, config);
    ++best.solver_calls;
    if (!first) return std::nullopt;
    best.model = std::move(*first);
    best.cost = eval_cost(program, best.model);
    for (std::size_t level = 0; level < program.levels(); ++level) {
        const auto& terms = program.objectives[level].terms;
        for (;;) {
            if (best.cost[level] == 0) break;
            rules.push_back(Rule{std::nullopt, {}, {}, SumCondition{terms, Relation::GE, best.cost[level]}});
            auto better = solve_one(program, rules, config);
            ++best.solver_calls;
            rules.pop_back();
            if (!better) break;
            best.model = std::move(*better);
            best.cost = eval_cost(program, best.model);
        }
        rules.push_back(Rule{std::nullopt, {}, {}, SumCondition{terms, Relation::NE, best.cost[level]}});
    }
    return best;
}

}  // namespace aseo
