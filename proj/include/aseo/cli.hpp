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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aseo::cli {

/// Exit codes of the tool.
enum Exit : int {
    kOk = 0,
    kInputError = 1,  // unreadable or malformed input
    kNoModels = 2,    // unsatisfiable, or a posterior with zero evidence mass
    kTimeout = 3,     // deadline reached; partial output is flagged
    kUsage = 64,
};

enum class Mode { Naive, Weight, Smart };

std::optional<Mode> parse_mode(std::string_view s);
std::string_view to_string(Mode m);

/// Entry point of the `aseo` tool. Never calls exit().
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Instance {
    std::string problem;
    std::string name;
    std::string text;
};

/// One instance per n in [lo, hi], each its own problem "P_n".
std::vector<Instance> pn_instances(int lo, int hi);
/// Every *.lp file below `dir`, grouped by parent directory name.
std::vector<Instance> dir_instances(const std::filesystem::path& dir);

struct BenchConfig {
    std::vector<Instance> instances;
    std::vector<Mode> modes{Mode::Weight, Mode::Smart};
    std::vector<std::size_t> ks{10, 100, 1000, 10000};
    double timeout_seconds = 1800;
    std::size_t jobs = 1;
};

struct BenchCell {
    double mean_seconds = 0;  // timeouts count at the timeout value
    std::size_t timeouts = 0;
};

struct BenchRow {
    std::string problem;
    std::size_t instances = 0;
    Mode mode = Mode::Weight;
    std::vector<BenchCell> cells;  // one per k
};

struct BenchReport {
    std::vector<std::size_t> ks;
    std::vector<BenchRow> rows;
};

BenchReport run_bench(const BenchConfig& config);
/// Header `problem,instances,mode,time_k<k>,timeouts_k<k>,...`, one row per
/// (problem, mode).
void write_csv(std::ostream& out, const BenchReport& report);

}  // namespace aseo::cli
