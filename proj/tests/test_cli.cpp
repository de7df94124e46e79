#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "aqs/cli.hpp"
#include "aqs/io.hpp"

namespace aqs {
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "aqs-cli-tests" / name;
    fs::remove_all(dir);
    return dir;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_text_file(e.path());
    return files;
}

TEST(Cli, SimulateWritesStampedArtifacts) {
    const fs::path dir = fresh_dir("simulate");
    const RunResult r = run_cli({"simulate", "--steps", "5", "--seed", "3", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const json traj = read_json_file(dir / "trajectory.json");
    EXPECT_EQ(traj.at("meta").at("seed"), 3);
    EXPECT_EQ(traj.at("meta").at("command"), "simulate");
    const json cfg = read_json_file(dir / "config.json");
    EXPECT_EQ(traj.at("meta").at("config_hash"), cli::config_hash(cfg));
    EXPECT_EQ(cfg.at("steps"), 5);
    const std::string csv = read_text_file(dir / "c_history.csv");
    EXPECT_EQ(csv.rfind("# aqs simulate config_hash=" + cli::config_hash(cfg) + " seed=3\n", 0), 0u);
}

TEST(Cli, ReplayingTheConfigIsByteIdentical) {
    const fs::path first = fresh_dir("replay-a"), second = fresh_dir("replay-b");
    ASSERT_EQ(run_cli({"order-test", "--kind", "clusters", "--permutations", "50", "--out-dir", first.string()}).code,
              cli::kExitOk);
    const RunResult r = run_cli({"order-test", "--config", (first / "config.json").string(), "--out-dir", second.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(snapshot(first), snapshot(second));
}

TEST(Cli, SetOverridesNestedFields) {
    const fs::path dir = fresh_dir("set");
    const RunResult r = run_cli({"simulate", "--steps", "3", "--set", "generator.decay=0.5",
                                 "--set", "initial_params.epsilon=[2,3]", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const json cfg = read_json_file(dir / "config.json");
    EXPECT_EQ(cfg.at("generator").at("decay"), 0.5);
    EXPECT_EQ(cfg.at("initial_params").at("epsilon"), json::array({2, 3}));
}

TEST(Cli, ValidationErrorsNameTheField) {
    const fs::path dir = fresh_dir("invalid");
    RunResult r = run_cli({"simulate", "--decay", "1.5", "--out-dir", dir.string()});
    EXPECT_EQ(r.code, cli::kExitValidation);
    EXPECT_NE(r.err.find("generator.decay"), std::string::npos) << r.err;

    r = run_cli({"simulate", "--set", "generator.deacy=0.5", "--out-dir", dir.string()});
    EXPECT_EQ(r.code, cli::kExitValidation);
    EXPECT_NE(r.err.find("generator.deacy"), std::string::npos) << r.err;

    r = run_cli({"simulate", "--occupation", "0", "5", "--out-dir", dir.string()});
    EXPECT_EQ(r.code, cli::kExitValidation);
    EXPECT_NE(r.err.find("initial_occupation"), std::string::npos) << r.err;

    r = run_cli({"cci", "--out-dir", dir.string()});
    EXPECT_EQ(r.code, cli::kExitValidation);
    EXPECT_NE(r.err.find("input"), std::string::npos) << r.err;

    EXPECT_EQ(run_cli({"no-such-command"}).code, cli::kExitValidation);
    EXPECT_FALSE(fs::exists(dir / "config.json"));
}

TEST(Cli, AnnihilationIsARuntimeFailure) {
    const fs::path dir = fresh_dir("annihilate");
    // eps = 0 and no feedback: H is the zero operator on the first step.
    const RunResult r = run_cli({"simulate", "--decay", "0", "--alpha", "0", "--beta", "0", "--steps", "3",
                                 "--out-dir", dir.string()});
    EXPECT_EQ(r.code, cli::kExitRuntime);
    EXPECT_TRUE(fs::exists(dir / "trajectory.json"));
    EXPECT_TRUE(read_json_file(dir / "trajectory.json").at("trajectory").at("annihilated").get<bool>());
}

TEST(Cli, CvalueOnPauliPortfolio) {
    const fs::path dir = fresh_dir("cvalue");
    const RunResult r = run_cli({"cvalue", "--portfolio", "pauli", "--state", "basis:0", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const json m = read_json_file(dir / "cvalue_matrix.json");
    EXPECT_EQ(m.at("max_pair").at("c"), 2.0);
    EXPECT_TRUE(fs::exists(dir / "robertson.csv"));
}

TEST(Cli, CciReportsTScores) {
    const fs::path dir = fresh_dir("cci");
    fs::create_directories(dir);
    const fs::path table = dir / "table.csv";
    write_text_file(table,
                    "model,item,novelty,surprise,depth,metacog,reframe,autonomy,engage\n"
                    "a,q1,8,8,8,8,8,8,8\n"
                    "b,q1,4,4,4,6,6,6,6\n"
                    "c,q1,2,2,2,2,2,2,2\n");
    const RunResult r = run_cli({"cci", "--input", table.string(), "--out-dir", (dir / "out").string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const json scores = read_json_file(dir / "out" / "cci_scores.json");
    ASSERT_EQ(scores.at("models").size(), 3u);
    EXPECT_EQ(scores.at("models")[1].at("cci"), 4.0);
}

TEST(Cli, InterferenceSynthesized) {
    const fs::path dir = fresh_dir("interference");
    const RunResult r = run_cli({"interference", "--shuffles", "100", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const json rep = read_json_file(dir / "interference.json").at("reports")[0];
    EXPECT_LT(rep.at("r_prime").get<double>(), rep.at("r").get<double>());
}

TEST(Cli, DefaultConfigs) {
    for (const char* kind : {"simulate", "cvalue", "order-test", "interference", "cci", "demo"}) {
        const json cfg = cli::default_config(kind);
        EXPECT_EQ(cfg.at("experiment"), kind);
        EXPECT_EQ(cli::config_hash(cfg).size(), 16u);
    }
    EXPECT_THROW(cli::default_config("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace aqs
