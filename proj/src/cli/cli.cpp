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

#include "aseo/bayes.hpp"
#include "aseo/enumeration.hpp"
#include "aseo/generators.hpp"
#include "aseo/parser.hpp"
#include "aseo/semantics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace aseo::cli {

std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "naive") return Mode::Naive;
    if (s == "weight") return Mode::Weight;
    if (s == "smart") return Mode::Smart;
    return std::nullopt;
}

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Naive: return "naive";
        case Mode::Weight: return "weight";
        case Mode::Smart: return "smart";
    }
    return "?";
}

namespace {

using clock = std::chrono::steady_clock;

std::optional<std::string> read_input(const std::string& path) {
    std::ostringstream text;
    if (path == "-") {
        text << std::cin.rdbuf();
        return text.str();
    }
    std::ifstream in(path);
    if (!in) return std::nullopt;
    text << in.rdbuf();
    return text.str();
}

double seconds_since(clock::time_point t) { return std::chrono::duration<double>(clock::now() - t).count(); }

std::vector<std::string> sorted_names(const Program& p, const AtomSet& m) {
    std::vector<std::string> out;
    for (auto a : m) out.push_back(p.atoms.name(a));
    std::sort(out.begin(), out.end());
    return out;
}

SearchConfig search_config(double timeout, std::optional<std::uint64_t> seed) {
    SearchConfig c;
    c.deadline = clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(timeout));
    if (seed) {
        c.branching = SearchConfig::Branching::Shuffled;
        c.seed = *seed;
    }
    return c;
}

struct SolveOptions {
    std::string file;
    std::string mode = "weight";
    std::size_t k = 1;
    bool all = false;
    std::string format = "text";
    double timeout = 1800;
    std::optional<std::uint64_t> seed;
};

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
    auto mode = *parse_mode(o.mode);
    if (mode == Mode::Smart && o.all) {
        err << "error: smart mode needs a finite -k\n";
        return kUsage;
    }
    if (!o.all && o.k == 0) {
        err << "error: -k must be positive\n";
        return kUsage;
    }
    auto started = clock::now();
    auto text = read_input(o.file);
    if (!text) {
        err << "error: cannot read " << o.file << '\n';
        return kInputError;
    }
    Program program;
    try {
        program = parse_program(*text);
    } catch (const ParseError& e) {
        err << o.file << ':' << e.what() << '\n';
        return kInputError;
    }
    double parse_seconds = seconds_since(started);

    const bool json = o.format == "json";
    const Limit k = o.all ? kAll : Limit{o.k};
    auto config = search_config(o.timeout, o.seed);

    nlohmann::json records = nlohmann::json::array();
    auto emit = [&](const RankedModel& m) {
        if (json) {
            records.push_back({{"index", m.index}, {"cost", m.cost.values()}, {"atoms", sorted_names(program, m.model)}});
            return;
        }
        out << to_string(m.cost);
        for (const auto& name : sorted_names(program, m.model)) out << ' ' << name;
        out << '\n' << std::flush;
    };

    auto solve_start = clock::now();
    std::size_t emitted = 0;
    bool interrupted = false;
    nlohmann::json solver;
    switch (mode) {
        case Mode::Weight: {
            auto s = weight_enumerate(
                program, k,
                [&](const RankedModel& m) {
                    emit(m);
                    return ModelAction::Continue;
                },
                config);
            emitted = s.emitted;
            interrupted = s.interrupted;
            solver = {{"solver_calls", s.solver_calls}, {"rounds", s.trace.size()}};
            break;
        }
        case Mode::Naive:
        case Mode::Smart: {
            auto r = mode == Mode::Naive ? naive_enumerate(program, k, config) : smart_enumerate(program, o.k, config);
            for (const auto& m : r.models) emit(m);
            emitted = r.models.size();
            interrupted = r.interrupted;
            solver = {{"decisions", r.search.decisions}, {"conflicts", r.search.conflicts},
                      {"nogoods", r.search.nogoods}};
            break;
        }
    }
    double solve_seconds = seconds_since(solve_start);

    if (json) {
        nlohmann::json offsets = nlohmann::json::array();
        for (const auto& f : program.objectives) offsets.push_back(f.offset);
        nlohmann::json report = {{"mode", to_string(mode)},
                                 {"k", o.all ? nlohmann::json("all") : nlohmann::json(o.k)},
                                 {"emitted", emitted},
                                 {"interrupted", interrupted},
                                 {"models", records},
                                 {"offsets", offsets},
                                 {"time", {{"parse", parse_seconds}, {"solve", solve_seconds}}},
                                 {"solver", solver}};
        out << report.dump(2) << '\n';
    } else if (interrupted) {
        out << "% interrupted after " << o.timeout << "s; output is partial\n";
    }
    if (interrupted) {
        err << "timeout: " << emitted << " model(s) emitted before the deadline\n";
        return kTimeout;
    }
    if (emitted == 0) {
        err << "unsatisfiable\n";
        return kNoModels;
    }
    return kOk;
}

struct BayesOptions {
    std::string file;
    std::string query;
    std::vector<std::string> evidence;
    std::size_t k = 10;
    std::int64_t scale = kDefaultScale;
    std::string format = "json";
    double timeout = 1800;
};

int cmd_bayes(const BayesOptions& o, std::ostream& out, std::ostream& err) {
    QuerySpec spec{o.query, {}};
    for (const auto& item : o.evidence) {
        auto eq = item.find('=');
        auto value = eq == std::string::npos ? "" : item.substr(eq + 1);
        if (value != "true" && value != "false") {
            err << "error: evidence must look like name=true or name=false, got '" << item << "'\n";
            return kUsage;
        }
        spec.evidence[item.substr(0, eq)] = value == "true";
    }
    if (o.k == 0 || o.scale <= 0) {
        err << "error: -k and --scale must be positive\n";
        return kUsage;
    }
    auto text = read_input(o.file);
    if (!text) {
        err << "error: cannot read " << o.file << '\n';
        return kInputError;
    }
    try {
        auto net = load_network(*text);
        SearchConfig config;
        config.deadline =
            clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(o.timeout));
        auto e = answer_query(net, spec, o.k, o.scale, config);
        if (o.format == "json") {
            out << to_json(e).dump(2) << '\n';
        } else {
            out << "posterior " << e.posterior << "\nmass_true " << e.mass_true << "\nmass_false " << e.mass_false
                << "\nassignments " << e.assignments_true << ' ' << e.assignments_false << '\n';
        }
        return e.interrupted ? kTimeout : kOk;
    } catch (const NetworkError& e) {
        err << o.file << ": " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const UndefinedPosterior& e) {
        err << "error: " << e.what() << '\n';
        return kNoModels;
    } catch (const SearchInterrupted& e) {
        err << "timeout: " << e.what() << '\n';
        return kTimeout;
    }
}

struct BenchOptions {
    std::string source;
    std::vector<std::string> modes{"weight", "smart"};
    std::vector<std::size_t> ks{10, 100, 1000, 10000};
    double timeout = 1800;
    std::size_t jobs = 1;
    std::string out_path;
};

// "pn:LO-HI" or a directory of .lp files.
std::optional<std::vector<Instance>> bench_instances(const std::string& source) {
    if (source.rfind("pn:", 0) == 0) {
        int lo = 0, hi = 0;
        char dash = 0;
        std::istringstream in(source.substr(3));
        if (!(in >> lo)) return std::nullopt;
        if (in >> dash) {
            if (dash != '-' || !(in >> hi)) return std::nullopt;
        } else {
            hi = lo;
        }
        if (lo < 1 || hi < lo || hi > 62) return std::nullopt;
        return pn_instances(lo, hi);
    }
    if (!std::filesystem::is_directory(source)) return std::nullopt;
    return dir_instances(source);
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
    BenchConfig config;
    config.modes.clear();
    for (const auto& m : o.modes) config.modes.push_back(*parse_mode(m));
    config.ks = o.ks;
    if (std::find(config.ks.begin(), config.ks.end(), 0) != config.ks.end()) {
        err << "error: k values must be positive\n";
        return kUsage;
    }
    config.timeout_seconds = o.timeout;
    config.jobs = o.jobs;
    auto instances = bench_instances(o.source);
    if (!instances) {
        err << "error: expected pn:LO-HI or a directory, got '" << o.source << "'\n";
        return kUsage;
    }
    config.instances = std::move(*instances);
    BenchReport report;
    try {
        report = run_bench(config);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    if (o.out_path.empty()) {
        write_csv(out, report);
    } else {
        std::ofstream file(o.out_path);
        if (!file) {
            err << "error: cannot write " << o.out_path << '\n';
            return kInputError;
        }
        write_csv(file, report);
    }
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Answer set enumeration by optimality", "aseo"};
    app.require_subcommand(1);
    int status = kOk;

    SolveOptions solve;
    auto* s = app.add_subcommand("solve", "Enumerate answer sets in cost order");
    s->add_option("file", solve.file, "Program file, or - for stdin")->required();
    s->add_option("--mode", solve.mode, "naive, weight or smart")
        ->check(CLI::IsMember({"naive", "weight", "smart"}))
        ->capture_default_str();
    auto* k_opt = s->add_option("-k", solve.k, "Number of answer sets")->capture_default_str();
    auto* all_opt = s->add_flag("--all", solve.all, "Enumerate every answer set");
    k_opt->excludes(all_opt);
    s->add_option("--format", solve.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    s->add_option("--timeout", solve.timeout, "Seconds")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--seed", solve.seed, "Shuffle the branching order with this seed");
    s->callback([&] { status = cmd_solve(solve, out, err); });

    auto* gen = app.add_subcommand("gen", "Generate benchmark instances");
    gen->require_subcommand(1);
    int pn_n = 1;
    auto* pn = gen->add_subcommand("pn", "Worst-case family for weight enumeration");
    pn->add_option("--n", pn_n)->required();
    pn->callback([&] {
        try {
            out << generate_pn(pn_n);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            status = kUsage;
        }
    });
    RandomProgramSpec rspec;
    auto* rnd = gen->add_subcommand("random", "Random normal program");
    rnd->add_option("--atoms", rspec.atoms)->capture_default_str();
    rnd->add_option("--rules", rspec.rules)->capture_default_str();
    rnd->add_option("--levels", rspec.levels)->capture_default_str();
    rnd->add_option("--seed", rspec.seed)->capture_default_str();
    rnd->callback([&] { out << generate_random(rspec); });
    RandomNetworkSpec nspec;
    auto* net = gen->add_subcommand("net", "Random Bayesian network as JSON");
    net->add_option("--vars", nspec.variables)->capture_default_str();
    net->add_option("--max-parents", nspec.max_parents)->capture_default_str();
    net->add_option("--seed", nspec.seed)->capture_default_str();
    net->callback([&] { out << to_json(random_network(nspec)).dump(2) << '\n'; });

    BayesOptions bayes;
    auto* b = app.add_subcommand("bayes", "Approximate a posterior from the k most probable assignments");
    b->add_option("file", bayes.file, "Network JSON file")->required();
    b->add_option("--query", bayes.query)->required();
    b->add_option("--evidence", bayes.evidence, "name=true|false")->take_all();
    b->add_option("-k", bayes.k)->capture_default_str();
    b->add_option("--scale", bayes.scale)->capture_default_str();
    b->add_option("--format", bayes.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    b->add_option("--timeout", bayes.timeout)->check(CLI::PositiveNumber)->capture_default_str();
    b->callback([&] { status = cmd_bayes(bayes, out, err); });

    BenchOptions bench;
    auto* be = app.add_subcommand("bench", "Runtime table over modes and k");
    be->add_option("source", bench.source, "pn:LO-HI or a directory of .lp files")->required();
    be->add_option("--modes", bench.modes)->delimiter(',')->check(CLI::IsMember({"naive", "weight", "smart"}));
    be->add_option("--k-sweep", bench.ks)->delimiter(',');
    be->add_option("--timeout", bench.timeout, "Seconds per run")->check(CLI::PositiveNumber)->capture_default_str();
    be->add_option("--jobs", bench.jobs)->check(CLI::PositiveNumber)->capture_default_str();
    be->add_option("--out", bench.out_path, "CSV file; stdout if absent");
    be->callback([&] { status = cmd_bench(bench, out, err); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return status;
}

}  // namespace aseo::cli
