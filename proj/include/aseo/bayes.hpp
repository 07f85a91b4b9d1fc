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

#include "aseo/enumeration.hpp"
#include "aseo/program.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace aseo {

/// Boolean random variable with its conditional probability table. Row r
/// holds P(var = true | parents) for the parent assignment whose j-th parent
/// is true iff bit j of r is set.
struct BayesVariable {
    std::string name;
    std::vector<std::size_t> parents;
    std::vector<double> p_true;
};

class BayesNet {
public:
    std::vector<BayesVariable> variables;

    std::size_t size() const { return variables.size(); }
    std::optional<std::size_t> find(std::string_view name) const;
    /// Variables ordered so that parents precede children. Throws
    /// NetworkError on a cycle.
    std::vector<std::size_t> topological_order() const;
    /// Throws NetworkError unless the invariants of a network hold.
    void validate() const;
};

class NetworkError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the evidence has probability zero under the encoding.
class UndefinedPosterior : public std::runtime_error {
public:
    UndefinedPosterior() : std::runtime_error("posterior undefined: evidence has probability zero") {}
};

/// Parses and validates the JSON network format.
BayesNet load_network(std::string_view source);
nlohmann::json to_json(const BayesNet& net);

struct QuerySpec {
    std::string query;
    std::map<std::string, bool> evidence;
};

/// Throws std::invalid_argument on unknown names or a query under evidence.
void validate_query(const BayesNet& net, const QuerySpec& spec);

/// Sub-network that is not d-separated from the query given the evidence:
/// the query's component of the moralized ancestral graph with evidence
/// removed, plus the evidence variables adjacent to it. An evidence variable
/// whose parents were dropped becomes a root clamped to its observed value.
BayesNet relevant_subnetwork(const BayesNet& net, const QuerySpec& spec);

/// Evidence entries for variables present in `net`.
QuerySpec restrict_to(const BayesNet& net, const QuerySpec& spec);

struct WeightedEncoding {
    Program program;
    std::int64_t scale = 1;
    /// Per variable: atoms meaning "true" and "false".
    std::vector<std::pair<AtomId, AtomId>> atom_map;
    /// CPT entries with probability zero, encoded as constraints.
    std::size_t forbidden_rows = 0;
};

inline constexpr std::int64_t kDefaultScale = 1'000'000;

/// One answer set per evidence-consistent assignment of non-zero
/// probability, with cost sum(round(-ln p * scale)) over the selected CPT
/// entries. Throws std::invalid_argument for scale <= 0 and
/// std::overflow_error when a weight does not fit.
WeightedEncoding encode_map(const BayesNet& net, const std::map<std::string, bool>& evidence,
                            std::int64_t scale = kDefaultScale);

/// Variable assignment of an answer set of the encoding.
std::vector<bool> decode(const WeightedEncoding& enc, const AtomSet& model);

struct Estimate {
    double posterior = 0;
    std::size_t k = 0;
    std::int64_t scale = kDefaultScale;
    double mass_true = 0;
    double mass_false = 0;
    std::size_t assignments_true = 0;
    std::size_t assignments_false = 0;
    bool interrupted = false;
};

nlohmann::json to_json(const Estimate& e);

/// Ratio of the unnormalized masses exp(-cost/scale) of the k best
/// assignments with the query true and with it false. Both branches run
/// concurrently. Throws UndefinedPosterior if neither branch has an answer
/// set.
Estimate approximate_query(const BayesNet& net, const QuerySpec& spec, std::size_t k,
                           std::int64_t scale = kDefaultScale, const SearchConfig& config = {});

/// relevant_subnetwork followed by approximate_query on the restricted query.
Estimate answer_query(const BayesNet& net, const QuerySpec& spec, std::size_t k, std::int64_t scale = kDefaultScale,
                      const SearchConfig& config = {});

struct RandomNetworkSpec {
    std::size_t variables = 5;
    std::size_t max_parents = 2;
    std::uint64_t seed = 0;
    /// CPT entries are drawn from [min_p, 1 - min_p].
    double min_p = 0.05;
};

BayesNet random_network(const RandomNetworkSpec& spec);

}  // namespace aseo
