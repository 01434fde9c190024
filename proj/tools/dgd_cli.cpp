// Copyright 2026 The dgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver for the alignment and descent experiments.
//
//   dgd align    --config <file> [--seed S] [--out DIR] [--set key=value ...]
//   dgd descent  --config <file> [--seed S] [--out DIR] [--set key=value ...]
//   dgd trace    --config <file> [--seed S] [--out DIR] [--set key=value ...]
//   dgd selftest [--seed S]
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 numerical failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgd/dgd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct CommonOptions {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::optional<int64_t> threads;
};

void add_common(CLI::App *cmd, CommonOptions &opts) {
    cmd->add_option("--config", opts.config_path, "key = value config file")->required();
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--set", opts.overrides, "override a config entry (key=value), repeatable");
    cmd->add_option("--threads", opts.threads, "worker threads");
}

dgd::harness::KeyValueConfig load_config(const CommonOptions &opts) {
    auto kv = dgd::harness::KeyValueConfig::load(opts.config_path);
    for (const auto &o : opts.overrides) {
        kv.set_assignment(o);
    }
    if (opts.seed) {
        kv.set("seed", std::to_string(*opts.seed));
    }
    if (opts.threads) {
        kv.set("threads", std::to_string(*opts.threads));
    }
    return kv;
}

void report_written(const std::vector<std::filesystem::path> &paths) {
    for (const auto &p : paths) {
        std::cout << "wrote " << p.string() << '\n';
    }
}

int run_align(const CommonOptions &opts) {
    const auto config = dgd::harness::AlignmentConfig::from(load_config(opts));
    const auto table = dgd::harness::run_alignment(config);
    for (const auto &s : table.summary) {
        std::printf("ell=%zu  denoised wins %zu/%zu (%.1f%%)\n", s.ell, s.wins, s.samples, 100.0 * s.win_fraction());
    }
    report_written(dgd::harness::emit_outputs(table, opts.out_dir, config.svg));
    return kExitOk;
}

int run_descent(const CommonOptions &opts) {
    const auto config = dgd::harness::DescentConfig::from(load_config(opts));
    const auto table = dgd::harness::run_descent(config);
    for (const auto &c : table.curves) {
        std::printf("%-9s %-22s f(theta_0)=%+.4f  f(theta_T)=%+.4f\n", c.method.c_str(),
                    c.lambda ? ("lambda=" + dgd::format_double(*c.lambda)).c_str() : "", c.mean.front(), c.mean.back());
    }
    report_written(dgd::harness::emit_outputs(table, opts.out_dir, config.svg));
    return kExitOk;
}

int run_trace(const CommonOptions &opts) {
    const auto config = dgd::harness::TraceConfig::from(load_config(opts));
    const auto result = dgd::harness::run_trace(config);
    std::printf("%s GD, %zu steps, f(theta_T)=%+.6f\n", config.method.c_str(), result.trace.steps(),
                dgd::circuits::evaluate_exact(result.circuit, result.trace.thetas.back()));
    report_written(dgd::harness::emit_outputs(result, opts.out_dir));
    return kExitOk;
}

int run_selftest(uint64_t seed) {
    bool ok = true;
    for (const auto &r : dgd::harness::run_selftest(seed)) {
        std::printf("[%s] %s: worst %.3e (tolerance %.0e)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.tolerance);
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Denoised gradient descent experiments"};
    app.require_subcommand(1);

    CommonOptions align_opts, descent_opts, trace_opts;
    auto *align = app.add_subcommand("align", "cosine-similarity alignment of denoised and noisy gradients");
    add_common(align, align_opts);
    auto *descent = app.add_subcommand("descent", "averaged objective curves for exact, noisy and denoised GD");
    add_common(descent, descent_opts);
    auto *trace = app.add_subcommand("trace", "single optimizer run with circuit and per-step trace output");
    add_common(trace, trace_opts);
    uint64_t selftest_seed = 0;
    auto *selftest = app.add_subcommand("selftest", "exact-recovery and kernel cross-checks");
    selftest->add_option("--seed", selftest_seed, "seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*align) return run_align(align_opts);
        if (*descent) return run_descent(descent_opts);
        if (*trace) return run_trace(trace_opts);
        if (*selftest) return run_selftest(selftest_seed);
    } catch (const dgd::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const dgd::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
