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

#include "aseo/bayes.hpp"

#include "aseo/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <set>

namespace aseo {

namespace {

constexpr std::size_t kMaxParents = 20;

std::string var_atom(std::size_t i, bool value) { return (value ? "t(" : "f(") + std::to_string(i) + ")"; }

}  // namespace

std::optional<std::size_t> BayesNet::find(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return i;
    return std::nullopt;
}

std::vector<std::size_t> BayesNet::topological_order() const {
    // Kahn's algorithm, smallest index first.
    std::vector<std::size_t> indegree(size());
    std::vector<std::vector<std::size_t>> children(size());
    for (std::size_t v = 0; v < size(); ++v)
        for (auto p : variables[v].parents) {
            if (p >= size()) throw NetworkError("parent index out of range");
            children[p].push_back(v);
            ++indegree[v];
        }
    std::set<std::size_t> ready;
    for (std::size_t v = 0; v < size(); ++v)
        if (indegree[v] == 0) ready.insert(v);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        auto v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (auto c : children[v])
            if (--indegree[c] == 0) ready.insert(c);
    }
    if (order.size() != size()) throw NetworkError("cycle detected in parent graph");
    return order;
}

void BayesNet::validate() const {
    std::set<std::string_view> seen;
    for (const auto& v : variables) {
        if (v.name.empty()) throw NetworkError("variable with empty name");
        if (!seen.insert(v.name).second) throw NetworkError("duplicate variable '" + v.name + "'");
        if (v.parents.size() > kMaxParents) throw NetworkError("too many parents for '" + v.name + "'");
        if (std::set(v.parents.begin(), v.parents.end()).size() != v.parents.size())
            throw NetworkError("repeated parent of '" + v.name + "'");
        if (v.p_true.size() != (std::size_t{1} << v.parents.size()))
            throw NetworkError("CPT of '" + v.name + "' does not cover every parent assignment");
        for (double p : v.p_true)
            if (!(p >= 0.0 && p <= 1.0)) throw NetworkError("probability outside [0,1] in CPT of '" + v.name + "'");
    }
    topological_order();
}

BayesNet load_network(std::string_view source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
        throw NetworkError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("variables") || !doc["variables"].is_array())
        throw NetworkError("expected an object with a 'variables' array");

    BayesNet net;
    const auto& vars = doc["variables"];
    for (const auto& v : vars) {
        if (!v.is_object() || !v.contains("name") || !v["name"].is_string())
            throw NetworkError("variable without a name");
        net.variables.push_back({v["name"].get<std::string>(), {}, {}});
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& v = vars[i];
        auto& out = net.variables[i];
        if (v.contains("parents")) {
            if (!v["parents"].is_array()) throw NetworkError("'parents' of '" + out.name + "' is not an array");
            for (const auto& p : v["parents"]) {
                if (!p.is_string()) throw NetworkError("parent name of '" + out.name + "' is not a string");
                auto idx = net.find(p.get<std::string>());
                if (!idx) throw NetworkError("unknown parent '" + p.get<std::string>() + "' of '" + out.name + "'");
                out.parents.push_back(*idx);
            }
        }
        if (out.parents.size() > kMaxParents) throw NetworkError("too many parents for '" + out.name + "'");
        std::size_t rows = std::size_t{1} << out.parents.size();
        out.p_true.assign(rows, std::numeric_limits<double>::quiet_NaN());
        std::vector<bool> filled(rows, false);
        if (!v.contains("cpt") || !v["cpt"].is_array()) throw NetworkError("missing CPT for '" + out.name + "'");
        for (const auto& row : v["cpt"]) {
            if (!row.is_object() || !row.contains("p_true") || !row["p_true"].is_number())
                throw NetworkError("CPT row of '" + out.name + "' lacks a numeric p_true");
            auto given = row.value("given", nlohmann::json::array());
            if (!given.is_array() || given.size() != out.parents.size())
                throw NetworkError("CPT row of '" + out.name + "' does not match the parent count");
            std::size_t index = 0;
            for (std::size_t j = 0; j < given.size(); ++j) {
                if (!given[j].is_boolean()) throw NetworkError("CPT row of '" + out.name + "' has a non-boolean entry");
                if (given[j].get<bool>()) index |= std::size_t{1} << j;
            }
            if (filled[index]) throw NetworkError("duplicate CPT row for '" + out.name + "'");
            filled[index] = true;
            out.p_true[index] = row["p_true"].get<double>();
        }
        for (std::size_t r = 0; r < rows; ++r)
            if (!filled[r]) throw NetworkError("CPT row missing for '" + out.name + "'");
    }
    net.validate();
    return net;
}

nlohmann::json to_json(const BayesNet& net) {
    auto vars = nlohmann::json::array();
    for (const auto& v : net.variables) {
        nlohmann::json parents = nlohmann::json::array();
        for (auto p : v.parents) parents.push_back(net.variables[p].name);
        auto cpt = nlohmann::json::array();
        for (std::size_t r = 0; r < v.p_true.size(); ++r) {
            auto given = nlohmann::json::array();
            for (std::size_t j = 0; j < v.parents.size(); ++j) given.push_back(((r >> j) & 1) != 0);
            cpt.push_back({{"given", given}, {"p_true", v.p_true[r]}});
        }
        vars.push_back({{"name", v.name}, {"parents", parents}, {"cpt", cpt}});
    }
    return {{"variables", vars}};
}

void validate_query(const BayesNet& net, const QuerySpec& spec) {
    if (!net.find(spec.query)) throw std::invalid_argument("unknown query variable '" + spec.query + "'");
    for (const auto& [name, value] : spec.evidence) {
        if (!net.find(name)) throw std::invalid_argument("unknown evidence variable '" + name + "'");
        if (name == spec.query) throw std::invalid_argument("query variable '" + name + "' is under evidence");
    }
}

BayesNet relevant_subnetwork(const BayesNet& net, const QuerySpec& spec) {
    validate_query(net, spec);
    const std::size_t n = net.size();
    std::vector<bool> evidence(n, false);
    for (const auto& [name, value] : spec.evidence) evidence[*net.find(name)] = true;

    std::vector<bool> ancestral(n, false);
    std::vector<std::size_t> stack{*net.find(spec.query)};
    for (std::size_t v = 0; v < n; ++v)
        if (evidence[v]) stack.push_back(v);
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (ancestral[v]) continue;
        ancestral[v] = true;
        for (auto p : net.variables[v].parents) stack.push_back(p);
    }

    std::vector<std::set<std::size_t>> moral(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (!ancestral[v]) continue;
        const auto& ps = net.variables[v].parents;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            moral[v].insert(ps[i]);
            moral[ps[i]].insert(v);
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                moral[ps[i]].insert(ps[j]);
                moral[ps[j]].insert(ps[i]);
            }
        }
    }

    std::vector<bool> keep(n, false);
    stack = {*net.find(spec.query)};
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (keep[v]) continue;
        keep[v] = true;
        if (evidence[v]) continue;  // evidence blocks the walk but is kept
        for (auto u : moral[v]) stack.push_back(u);
    }

    BayesNet out;
    std::vector<std::size_t> remap(n, n);
    for (std::size_t v = 0; v < n; ++v)
        if (keep[v]) remap[v] = out.variables.size(), out.variables.push_back({});
    for (std::size_t v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        const auto& src = net.variables[v];
        auto& dst = out.variables[remap[v]];
        dst.name = src.name;
        bool parents_kept = std::all_of(src.parents.begin(), src.parents.end(), [&](auto p) { return keep[p]; });
        if (parents_kept) {
            for (auto p : src.parents) dst.parents.push_back(remap[p]);
            dst.p_true = src.p_true;
        } else {
            // Only evidence can lose parents; its factor is then constant in
            // the query and a clamped root stands in for it.
            dst.p_true = {spec.evidence.at(src.name) ? 1.0 : 0.0};
        }
    }
    return out;
}

QuerySpec restrict_to(const BayesNet& net, const QuerySpec& spec) {
    QuerySpec out{spec.query, {}};
    for (const auto& [name, value] : spec.evidence)
        if (net.find(name)) out.evidence.emplace(name, value);
    return out;
}

WeightedEncoding encode_map(const BayesNet& net, const std::map<std::string, bool>& evidence, std::int64_t scale) {
    if (scale <= 0) throw std::invalid_argument("scale must be positive");
    net.validate();
    WeightedEncoding enc;
    enc.scale = scale;
    auto& prog = enc.program;
    for (std::size_t i = 0; i < net.size(); ++i) {
        auto t = prog.atom(var_atom(i, true));
        auto f = prog.atom(var_atom(i, false));
        enc.atom_map.emplace_back(t, f);
        prog.add_rule({t, {}, {f}, {}});
        prog.add_rule({f, {}, {t}, {}});
    }
    for (const auto& [name, value] : evidence) {
        auto i = net.find(name);
        if (!i) throw std::invalid_argument("unknown evidence variable '" + name + "'");
        auto [t, f] = enc.atom_map[*i];
        prog.add_rule({std::nullopt, {value ? f : t}, {}, {}});
    }

    std::vector<WeightedLiteral> terms;
    const double limit = static_cast<double>(std::numeric_limits<Weight>::max());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& v = net.variables[i];
        for (std::size_t r = 0; r < v.p_true.size(); ++r) {
            for (bool value : {true, false}) {
                double p = value ? v.p_true[r] : 1.0 - v.p_true[r];
                if (p >= 1.0) continue;
                std::vector<AtomId> body{value ? enc.atom_map[i].first : enc.atom_map[i].second};
                for (std::size_t j = 0; j < v.parents.size(); ++j) {
                    const auto& [t, f] = enc.atom_map[v.parents[j]];
                    body.push_back(((r >> j) & 1) ? t : f);
                }
                if (p <= 0.0) {
                    prog.add_rule({std::nullopt, body, {}, {}});
                    ++enc.forbidden_rows;
                    continue;
                }
                double w = std::round(-std::log(p) * static_cast<double>(scale));
                if (!(w < limit)) throw std::overflow_error("CPT weight of '" + v.name + "' overflows");
                if (w == 0) continue;
                auto ind = prog.atom("r(" + std::to_string(i) + "," + std::to_string(r) + "," +
                                     (value ? "1" : "0") + ")");
                prog.add_rule({ind, body, {}, {}});
                terms.push_back({static_cast<Weight>(w), Literal::pos(ind)});
            }
        }
    }
    prog.add_objective(std::move(terms));
    return enc;
}

std::vector<bool> decode(const WeightedEncoding& enc, const AtomSet& model) {
    std::vector<bool> out;
    for (auto [t, f] : enc.atom_map) out.push_back(std::binary_search(model.begin(), model.end(), t));
    return out;
}

nlohmann::json to_json(const Estimate& e) {
    nlohmann::json j = {{"posterior", e.posterior},
                        {"k", e.k},
                        {"scale", e.scale},
                        {"mass_true", e.mass_true},
                        {"mass_false", e.mass_false},
                        {"assignments_true", e.assignments_true},
                        {"assignments_false", e.assignments_false},
                        {"masses", "unnormalized joint"}};
    if (e.interrupted) j["interrupted"] = true;
    return j;
}

namespace {

struct Branch {
    double mass = 0;
    std::size_t count = 0;
    bool interrupted = false;
};

Branch run_branch(const WeightedEncoding& enc, std::size_t k, const SearchConfig& config) {
    Branch b;
    const double scale = static_cast<double>(enc.scale);
    auto s = weight_enumerate(
        enc.program, k,
        [&](const RankedModel& m) {
            b.mass += std::exp(-static_cast<double>(m.cost[0]) / scale);
            ++b.count;
            return ModelAction::Continue;
        },
        config);
    b.interrupted = s.interrupted;
    return b;
}

}  // namespace

Estimate approximate_query(const BayesNet& net, const QuerySpec& spec, std::size_t k, std::int64_t scale,
                           const SearchConfig& config) {
    validate_query(net, spec);
    if (k == 0) throw std::invalid_argument("k must be positive");
    auto with_query = [&](bool value) {
        auto ev = spec.evidence;
        ev[spec.query] = value;
        return encode_map(net, ev, scale);
    };
    const auto enc_true = with_query(true);
    const auto enc_false = with_query(false);
    auto pending = std::async(std::launch::async, [&] { return run_branch(enc_true, k, config); });
    auto no = run_branch(enc_false, k, config);
    auto yes = pending.get();

    Estimate e;
    e.k = k;
    e.scale = scale;
    e.mass_true = yes.mass;
    e.mass_false = no.mass;
    e.assignments_true = yes.count;
    e.assignments_false = no.count;
    e.interrupted = yes.interrupted || no.interrupted;
    if (yes.count + no.count == 0) {
        if (e.interrupted) throw SearchInterrupted();
        throw UndefinedPosterior();
    }
    e.posterior = yes.mass / (yes.mass + no.mass);
    return e;
}

Estimate answer_query(const BayesNet& net, const QuerySpec& spec, std::size_t k, std::int64_t scale,
                      const SearchConfig& config) {
    auto sub = relevant_subnetwork(net, spec);
    return approximate_query(sub, restrict_to(sub, spec), k, scale, config);
}

BayesNet random_network(const RandomNetworkSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> prob(spec.min_p, 1.0 - spec.min_p);
    BayesNet net;
    for (std::size_t i = 0; i < spec.variables; ++i) {
        BayesVariable v{"v" + std::to_string(i), {}, {}};
        std::size_t most = std::min(i, spec.max_parents);
        std::size_t count = static_cast<std::size_t>(rng() % (most + 1));
        std::vector<std::size_t> pool(i);
        for (std::size_t j = 0; j < i; ++j) pool[j] = j;
        std::shuffle(pool.begin(), pool.end(), rng);
        v.parents.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
        std::sort(v.parents.begin(), v.parents.end());
        for (std::size_t r = 0; r < (std::size_t{1} << count); ++r) v.p_true.push_back(prob(rng));
        net.variables.push_back(std::move(v));
    }
    return net;
}

}  // namespace aseo
