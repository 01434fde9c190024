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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dgd/circuits/objective.hpp"
#include "dgd/errors.hpp"
#include "dgd/harness/alignment.hpp"
#include "dgd/harness/config.hpp"
#include "dgd/harness/descent.hpp"
#include "dgd/harness/output.hpp"
#include "dgd/harness/parallel.hpp"
#include "dgd/harness/single_run.hpp"

using namespace dgd;
using namespace dgd::harness;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count_lines(const std::string &text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

fs::path scratch_dir(const std::string &name) {
    const auto dir = fs::temp_directory_path() / ("dgd_harness_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    return dir;
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(DGD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

AlignmentConfig small_alignment() {
    AlignmentConfig c;
    c.samples = 12;
    c.qubits = 3;
    c.parameters = 3;
    c.shots = 50;
    c.lambda = 0.1;
    c.ells = {1, 2, 3};
    c.seed = 5;
    return c;
}

DescentConfig small_descent() {
    DescentConfig c;
    c.repetitions = 6;
    c.qubits = 3;
    c.parameters = 3;
    c.ell = 2;
    c.alpha = 0.2;
    c.steps = 8;
    c.shots = 30;
    c.lambdas = {0.01, 0.1};
    c.pauli_error_prob = 0.01;
    c.seed = 3;
    return c;
}

}  // namespace

TEST(CosineSimilarity, examples) {
    const std::vector<double> a{0.3, -1.2, 2.0};
    EXPECT_NEAR(cosine_similarity(a, a, 1e-12), 1.0, 1e-15);
    EXPECT_EQ(cosine_similarity(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}, 1e-12), 0.0);
    EXPECT_EQ(cosine_similarity(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 0.0}, 1e-12), 0.0);
    EXPECT_NEAR(cosine_similarity(std::vector<double>{1.0}, std::vector<double>{-2.0}, 1e-12), -1.0, 1e-15);
    EXPECT_THROW(cosine_similarity(a, std::vector<double>{1.0}, 1e-12), std::invalid_argument);
    EXPECT_THROW(cosine_similarity(a, a, 0.0), std::invalid_argument);
}

TEST(KeyValueConfig, parses_comments_lists_and_overrides) {
    auto kv = KeyValueConfig::from_string("# header\nsamples = 10   # trailing\nell = 1, 2,3\n\nlambda=0.5\nseed = 0x10\n");
    EXPECT_EQ(kv.get_int("samples"), 10);
    EXPECT_EQ(kv.get_int_list("ell"), (std::vector<int64_t>{1, 2, 3}));
    EXPECT_EQ(kv.get_double("lambda"), 0.5);
    EXPECT_EQ(kv.get_seed("seed"), 16u);
    EXPECT_EQ(kv.get_double("missing", 2.5), 2.5);
    kv.set_assignment("lambda = 0.25");
    EXPECT_EQ(kv.get_double("lambda"), 0.25);
}

TEST(KeyValueConfig, reports_errors) {
    try {
        KeyValueConfig::from_string("a = 1\nno equals sign\n");
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
    const auto kv = KeyValueConfig::from_string("x = 1.5abc\nn = -3\nflag = maybe\n");
    EXPECT_THROW(kv.get_double("x"), ConfigError);
    EXPECT_THROW(kv.get_int("x"), ConfigError);
    EXPECT_THROW(kv.get_seed("n"), ConfigError);
    EXPECT_THROW(kv.get_bool("flag", false), ConfigError);
    EXPECT_THROW(kv.get_double("absent"), ConfigError);
    EXPECT_THROW(kv.require_known({"x", "n"}), ConfigError);
    EXPECT_THROW(KeyValueConfig::load("/nonexistent/dgd.cfg"), ConfigError);
    EXPECT_THROW(KeyValueConfig().set_assignment("novalue"), ConfigError);
}

TEST(ExperimentConfigs, validation) {
    EXPECT_THROW(AlignmentConfig::from(KeyValueConfig::from_string("samples = 0")), ConfigError);
    EXPECT_THROW(AlignmentConfig::from(KeyValueConfig::from_string("ell = 1, 0")), ConfigError);
    EXPECT_THROW(AlignmentConfig::from(KeyValueConfig::from_string("cosine_floor = 0")), ConfigError);
    EXPECT_THROW(AlignmentConfig::from(KeyValueConfig::from_string("qubits = -2")), ConfigError);
    EXPECT_THROW(AlignmentConfig::from(KeyValueConfig::from_string("typo = 1")), ConfigError);
    EXPECT_THROW(DescentConfig::from(KeyValueConfig::from_string("repetitions = 0")), ConfigError);
    EXPECT_THROW(DescentConfig::from(KeyValueConfig::from_string("steps = 0")), ConfigError);
    EXPECT_THROW(DescentConfig::from(KeyValueConfig::from_string("lambda = 0.1, -1")), ConfigError);
    EXPECT_THROW(TraceConfig::from(KeyValueConfig::from_string("method = adam")), ConfigError);
    EXPECT_THROW(TraceConfig::from(KeyValueConfig::from_string("steps = -1")), ConfigError);
}

TEST(ExperimentConfigs, shipped_files_load) {
    const auto a = AlignmentConfig::from(KeyValueConfig::load(std::string(DGD_CONFIG_DIR) + "/alignment_shot_noise.cfg"));
    EXPECT_EQ(a.samples, 500u);
    EXPECT_EQ(a.qubits, 8u);
    EXPECT_EQ(a.parameters, 8u);
    EXPECT_EQ(a.shots, 200);
    EXPECT_EQ(a.lambda, 0.28);
    EXPECT_EQ(a.ells, (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
    const auto d = DescentConfig::from(KeyValueConfig::load(std::string(DGD_CONFIG_DIR) + "/descent_pauli_noise.cfg"));
    EXPECT_EQ(d.repetitions, 100u);
    EXPECT_EQ(d.steps, 60u);
    EXPECT_EQ(d.shots, 50);
    EXPECT_NEAR(d.lambdas.at(1), 0.01 / std::sqrt(50.0), 1e-15);
}

TEST(ParallelFor, visits_every_index_and_rethrows) {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    EXPECT_EQ(std::count(hits.begin(), hits.end(), 1), 100);
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 7) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST(Alignment, exact_evaluator_aligns_perfectly) {
    // Any interpolant in the kernel space obeys the shift rule exactly, so a
    // noiseless window reproduces the exact gradient for every ell.
    auto config = small_alignment();
    config.lambda = 1e-12;
    const auto table = run_alignment(config, [](const circuits::RandomCircuit &c, std::span<const double> theta, Rng &) {
        return circuits::evaluate_exact(c, theta);
    });
    ASSERT_EQ(table.rows.size(), 36u);
    for (const auto &r : table.rows) {
        EXPECT_NEAR(r.x_denoised, 1.0, 1e-6) << "ell=" << r.ell;
        EXPECT_NEAR(r.x_noisy, 1.0, 1e-12);
    }
}

TEST(Alignment, rows_are_ordered_and_summarized) {
    const auto table = run_alignment(small_alignment());
    ASSERT_EQ(table.summary.size(), 3u);
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        EXPECT_EQ(table.rows[k].ell, 1 + k / 12);
        EXPECT_EQ(table.rows[k].sample_index, k % 12);
        EXPECT_LE(std::abs(table.rows[k].x_denoised), 1.0 + 1e-12);
        EXPECT_LE(std::abs(table.rows[k].x_noisy), 1.0 + 1e-12);
    }
    for (const auto &s : table.summary) {
        std::size_t wins = 0;
        for (const auto &r : table.rows) {
            if (r.ell == s.ell && r.x_denoised > r.x_noisy) ++wins;
        }
        EXPECT_EQ(s.wins, wins);
        EXPECT_EQ(s.samples, 12u);
    }
}

TEST(Alignment, single_step_with_reused_samples_is_parallel_to_noisy) {
    // With one iteration in the window the surrogate gradient is a positive
    // multiple of the shift gradient of the same samples.
    auto config = small_alignment();
    config.ells = {1};
    config.reuse_final_samples = true;
    for (const auto &r : run_alignment(config).rows) {
        EXPECT_NEAR(r.x_denoised, r.x_noisy, 1e-12);
    }
}

TEST(Alignment, single_step_with_fresh_samples_is_a_coin_flip) {
    auto config = small_alignment();
    config.samples = 300;
    config.qubits = 4;
    config.parameters = 4;
    config.ells = {1};
    config.threads = 2;
    const double p = run_alignment(config).summary[0].win_fraction();
    EXPECT_NEAR(p, 0.5, 2.576 * std::sqrt(0.25 / 300));  // 99% binomial interval
}

TEST(Descent, curves_share_the_start_and_exact_descends) {
    auto config = small_descent();
    config.alpha = 0.05;
    const auto table = run_descent(config);
    ASSERT_EQ(table.curves.size(), 4u);
    const double f0 = table.find("exact").mean[0];
    for (const auto &c : table.curves) {
        ASSERT_EQ(c.mean.size(), 9u);
        EXPECT_EQ(c.mean[0], f0) << c.method;
        EXPECT_EQ(c.stddev[0], 0.0);
    }
    const auto &exact = table.find("exact").mean;
    for (std::size_t t = 1; t < exact.size(); ++t) EXPECT_LE(exact[t], exact[t - 1] + 1e-15);
    EXPECT_NO_THROW(table.find("denoised", 0.1));
    EXPECT_THROW(table.find("denoised", 0.5), std::out_of_range);
}

TEST(Descent, summary_statistics) {
    const auto c = summarize("noisy", std::nullopt, {{1.0, 2.0}, {3.0, 2.0}, {5.0, 2.0}});
    EXPECT_EQ(c.mean, (std::vector<double>{3.0, 2.0}));
    EXPECT_EQ(c.stddev, (std::vector<double>{2.0, 0.0}));
}

TEST(Outputs, csv_shapes) {
    std::ostringstream empty;
    write_alignment_csv(empty, AlignmentTable{});
    EXPECT_EQ(empty.str(), "sample_index,ell,x_denoised,x_noisy\n");

    const auto table = run_alignment(small_alignment());
    std::ostringstream full;
    write_alignment_csv(full, table);
    EXPECT_EQ(count_lines(full.str()), table.rows.size() + 1);

    std::ostringstream descent;
    write_descent_csv(descent, run_descent(small_descent()));
    const auto text = descent.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "step,method,lambda,mean_f,std_f");
    EXPECT_EQ(count_lines(text), 1 + 4 * 9u);
    EXPECT_NE(text.find("\n0,exact,,"), std::string::npos);
    EXPECT_NE(text.find("\n8,denoised,0.01"), std::string::npos);
}

TEST(Outputs, identical_bytes_regardless_of_thread_count) {
    auto a = small_alignment();
    auto b = a;
    b.threads = 3;
    const auto da = scratch_dir("align_a"), db = scratch_dir("align_b");
    emit_outputs(run_alignment(a), da, true);
    emit_outputs(run_alignment(b), db, true);
    for (const char *name : {"alignment.csv", "alignment_summary.csv", "alignment_ell2.svg"}) {
        EXPECT_EQ(slurp(da / name), slurp(db / name)) << name;
    }
    auto d1 = small_descent(), d2 = small_descent();
    d2.threads = 4;
    std::ostringstream o1, o2;
    write_descent_csv(o1, run_descent(d1));
    write_descent_csv(o2, run_descent(d2));
    EXPECT_EQ(o1.str(), o2.str());
    fs::remove_all(da);
    fs::remove_all(db);
}

TEST(Outputs, io_failures_name_the_path) {
    const auto dir = scratch_dir("io");
    fs::create_directories(dir);
    const auto blocker = dir / "file";
    std::ofstream(blocker) << "x";
    try {
        emit_outputs(AlignmentTable{}, blocker / "sub", false);
        FAIL();
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find(blocker.string()), std::string::npos) << e.what();
    }
    fs::remove_all(dir);
}

TEST(TraceRun, writes_circuit_and_trace) {
    TraceConfig config;
    config.steps = 4;
    config.ell = 2;
    config.epsilon = 1e-8;
    const auto result = run_trace(config);
    EXPECT_EQ(result.trace.steps(), 4u);
    const auto dir = scratch_dir("trace");
    const auto files = emit_outputs(result, dir);
    ASSERT_EQ(files.size(), 2u);
    EXPECT_EQ(circuits::serialize_circuit(circuits::parse_circuit(slurp(dir / "circuit.json"))),
              circuits::serialize_circuit(result.circuit));
    EXPECT_EQ(count_lines(slurp(dir / "trace.csv")), 5u);
    fs::remove_all(dir);
}

TEST(Cli, selftest_passes) { EXPECT_EQ(run_cli("selftest --seed 3"), 0); }

TEST(Cli, configuration_errors_exit_with_one) {
    EXPECT_EQ(run_cli("align --config /nonexistent/file.cfg"), 1);
    const auto dir = scratch_dir("cli_cfg");
    EXPECT_EQ(run_cli("descent --config " + std::string(DGD_CONFIG_DIR) + "/descent_pauli_noise.cfg --set steps=zero --out " +
                      dir.string()),
              1);
    EXPECT_EQ(run_cli("trace --config " + std::string(DGD_CONFIG_DIR) + "/descent_pauli_noise.cfg --out " + dir.string()), 1);
    EXPECT_NE(run_cli("no-such-command"), 0);
    fs::remove_all(dir);
}

TEST(Cli, trace_is_reproducible) {
    const auto cfg = scratch_dir("cli_trace_cfg");
    fs::create_directories(cfg);
    std::ofstream(cfg / "trace.cfg") << "method = denoised\nqubits = 3\nparameters = 3\nsteps = 5\nell = 2\nshots = 40\n";
    const auto a = scratch_dir("cli_trace_a"), b = scratch_dir("cli_trace_b");
    ASSERT_EQ(run_cli("trace --config " + (cfg / "trace.cfg").string() + " --seed 9 --out " + a.string()), 0);
    ASSERT_EQ(run_cli("trace --config " + (cfg / "trace.cfg").string() + " --seed 9 --out " + b.string()), 0);
    EXPECT_EQ(slurp(a / "trace.csv"), slurp(b / "trace.csv"));
    EXPECT_EQ(slurp(a / "circuit.json"), slurp(b / "circuit.json"));
    EXPECT_FALSE(slurp(a / "trace.csv").empty());
    for (const auto &d : {cfg, a, b}) fs::remove_all(d);
}
