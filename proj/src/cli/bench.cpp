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

#include "aseo/cli.hpp"

#include "aseo/enumeration.hpp"
#include "aseo/generators.hpp"
#include "aseo/parser.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace aseo::cli {

std::vector<Instance> pn_instances(int lo, int hi) {
    std::vector<Instance> out;
    for (int n = lo; n <= hi; ++n) {
        auto name = "P_" + std::to_string(n);
        out.push_back({name, name, generate_pn(n)});
    }
    return out;
}

std::vector<Instance> dir_instances(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".lp") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<Instance> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::ostringstream text;
        text << in.rdbuf();
        out.push_back({f.parent_path().filename().string(), f.filename().string(), text.str()});
    }
    return out;
}

namespace {

struct Job {
    std::size_t instance;
    std::size_t mode;
    std::size_t k;
};

struct Outcome {
    double seconds = 0;
    bool timeout = false;
};

Outcome run_cell(const Program& program, Mode mode, std::size_t k, double timeout) {
    using clock = std::chrono::steady_clock;
    SearchConfig config;
    auto start = clock::now();
    config.deadline = start + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(timeout));
    bool interrupted = false;
    switch (mode) {
        case Mode::Naive: interrupted = naive_enumerate(program, k, config).interrupted; break;
        case Mode::Weight:
            interrupted = weight_enumerate(program, k, {}, config).interrupted;
            break;
        case Mode::Smart: interrupted = smart_enumerate(program, k, config).interrupted; break;
    }
    double seconds = std::chrono::duration<double>(clock::now() - start).count();
    if (interrupted) return {timeout, true};
    return {seconds, false};
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
    BenchReport report;
    report.ks = config.ks;

    std::vector<Program> programs;
    for (const auto& inst : config.instances) programs.push_back(parse_program(inst.text));

    std::vector<Job> jobs;
    for (std::size_t i = 0; i < programs.size(); ++i)
        for (std::size_t m = 0; m < config.modes.size(); ++m)
            for (std::size_t k = 0; k < config.ks.size(); ++k) jobs.push_back({i, m, k});
    std::vector<Outcome> outcomes(jobs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j; (j = next++) < jobs.size();) {
            const auto& job = jobs[j];
            outcomes[j] = run_cell(programs[job.instance], config.modes[job.mode], config.ks[job.k],
                                   config.timeout_seconds);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::max<std::size_t>(1, config.jobs); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Problems in first-seen order.
    std::vector<std::string> problems;
    std::map<std::string, std::size_t> counts;
    for (const auto& inst : config.instances)
        if (counts[inst.problem]++ == 0) problems.push_back(inst.problem);

    for (const auto& problem : problems) {
        for (std::size_t m = 0; m < config.modes.size(); ++m) {
            BenchRow row{problem, counts[problem], config.modes[m], std::vector<BenchCell>(config.ks.size())};
            for (std::size_t j = 0; j < jobs.size(); ++j) {
                if (jobs[j].mode != m || config.instances[jobs[j].instance].problem != problem) continue;
                auto& cell = row.cells[jobs[j].k];
                cell.mean_seconds += outcomes[j].seconds / static_cast<double>(row.instances);
                cell.timeouts += outcomes[j].timeout;
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
    out << "problem,instances,mode";
    for (auto k : report.ks) out << ",time_k" << k << ",timeouts_k" << k;
    out << '\n';
    for (const auto& row : report.rows) {
        out << row.problem << ',' << row.instances << ',' << to_string(row.mode);
        for (const auto& cell : row.cells) out << ',' << cell.mean_seconds << ',' << cell.timeouts;
        out << '\n';
    }
}

}  // namespace aseo::cli
