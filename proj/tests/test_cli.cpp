#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "evset/cli.hpp"
#include "evset/io.hpp"

using namespace evset;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / "evset_cli_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("entropy subcommand writes the series") {
    auto dir = fresh_dir("entropy");
    int code = run_cli({"entropy", "--graph", "z", "--x0", "z:0", "--nmax", "4", "--out",
                        dir.string()});
    CHECK(code == 0);
    auto csv = read_text_file((dir / "entropy.csv").string());
    CHECK(csv.rfind("n,entropy_nats,support,entropy_rate\n", 0) == 0);
    CHECK(csv.find("\n2,1.0397207708399179,3,") != std::string::npos);
    CHECK(fs::exists(dir / "run_metadata.json"));
    auto meta = nlohmann::json::parse(read_text_file((dir / "run_metadata.json").string()));
    CHECK(meta.contains("wall_ms"));
    CHECK(meta["config"]["command"] == "entropy");
}

TEST_CASE("green subcommand matches known values") {
    auto dir = fresh_dir("green");
    CHECK(run_cli({"green", "--graph", "z", "--tmax", "2", "--out", dir.string()}) == 0);
    auto csv = read_text_file((dir / "green.csv").string());
    CHECK(csv.find("\n2,0.5,1.5\n") != std::string::npos);
}

TEST_CASE("escape subcommand certifies then checks") {
    auto dir = fresh_dir("escape");
    int code = run_cli({"escape", "--graph", "tree3", "--n", "20", "--radius", "1", "--c", "0.2",
                        "--cert-lo", "5", "--cert-hi", "20", "--out", dir.string()});
    CHECK(code == 0);
    auto lines = read_text_file((dir / "escape.jsonl").string());
    CHECK(lines.find("\"entropy_certificate\"") != std::string::npos);
    CHECK(lines.find("\"escape_bound\"") != std::string::npos);
}

TEST_CASE("failed certification exits with the bound-failure code") {
    auto dir = fresh_dir("escape_fail");
    int code = run_cli({"escape", "--graph", "z", "--n", "20", "--radius", "1", "--c", "0.2",
                        "--cert-lo", "5", "--cert-hi", "20", "--out", dir.string()});
    CHECK(code == 2);
}

TEST_CASE("evolve subcommand emits trajectories and decay") {
    auto dir = fresh_dir("evolve");
    int code = run_cli({"evolve", "--graph", "z", "--c", "0.5", "--mmax", "3", "--trials", "20",
                        "--seed", "9", "--out", dir.string()});
    CHECK(code == 0);
    std::ifstream traj((dir / "trajectories.jsonl").string());
    std::string line;
    int lines = 0;
    while (std::getline(traj, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("m"));
        CHECK(j.contains("T"));
        CHECK(j.contains("L"));
        CHECK(j.contains("U"));
        CHECK(j.contains("set_size"));
        CHECK(j.contains("pi_mass"));
        ++lines;
    }
    CHECK(lines >= 20);
    auto decay = read_text_file((dir / "decay.csv").string());
    CHECK(decay.rfind("m,mean_sqrt_pi,std_error,alive\n", 0) == 0);
}

TEST_CASE("verify unconditional suite passes and is byte-deterministic") {
    auto dir1 = fresh_dir("verify1");
    auto dir2 = fresh_dir("verify2");
    for (const auto& dir : {dir1, dir2}) {
        int code = run_cli({"verify", "--suite", "unconditional", "--seed", "42", "--out",
                            dir.string()});
        CHECK(code == 0);
    }
    auto a = read_text_file((dir1 / "verify.jsonl").string());
    auto b = read_text_file((dir2 / "verify.jsonl").string());
    CHECK(a == b);
    CHECK(a.find("\"pass\":false") == std::string::npos);

    std::ifstream in((dir1 / "verify.jsonl").string());
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK((j["pass"].get<bool>() || j["vacuous"].get<bool>()));
        ++count;
    }
    CHECK(count == 100 + 1000 + 10'000);
}

TEST_CASE("verify reports certification failure via exit code") {
    auto dir = fresh_dir("verify_fail");
    int code = run_cli({"verify", "--suite", "conditional", "--graph", "z", "--c", "0.2",
                        "--cert-lo", "5", "--cert-hi", "40", "--seed", "3", "--trials", "50",
                        "--out", dir.string()});
    CHECK(code == 2);
    auto lines = read_text_file((dir / "verify.jsonl").string());
    CHECK(lines.find("\"entropy_certificate\"") != std::string::npos);
    CHECK(lines.find("\"pass\":false") != std::string::npos);
}

TEST_CASE("counterexample subcommand emits rates and diagnostics") {
    auto dir = fresh_dir("ce");
    int code = run_cli({"counterexample", "--hmax", "3", "--nmax", "3", "--window-hi", "10",
                        "--trials", "50", "--horizon", "20000", "--seed", "4", "--out",
                        dir.string()});
    CHECK(code == 0);
    auto rates = read_text_file((dir / "rates.csv").string());
    CHECK(rates.rfind("start,window_lo,window_hi,rate,tree_depth\n", 0) == 0);
    CHECK(rates.find("pt:1,5,10,") != std::string::npos);
    auto diag = read_text_file((dir / "diagnostics.jsonl").string());
    CHECK(diag.find("return_frequency") != std::string::npos);
    CHECK(diag.find("hitting_time_bound") != std::string::npos);
    CHECK(diag.find("line_resistance") != std::string::npos);
}

TEST_CASE("config file with flag overrides") {
    auto dir = fresh_dir("config");
    auto cfg = dir / "run.cfg";
    write_text_file(cfg.string(), "entropy.graph=z\nentropy.nmax=4\n");
    int code = run_cli({"entropy", "--config", cfg.string(), "--out", dir.string()});
    CHECK(code == 0);
    auto csv = read_text_file((dir / "entropy.csv").string());
    CHECK(csv.find("\n4,") != std::string::npos);
    CHECK(csv.find("\n5,") == std::string::npos);

    // explicit flags beat the config file
    int code2 = run_cli({"entropy", "--config", cfg.string(), "--nmax", "2", "--out",
                         dir.string()});
    CHECK(code2 == 0);
    auto csv2 = read_text_file((dir / "entropy.csv").string());
    CHECK(csv2.find("\n2,") != std::string::npos);
    CHECK(csv2.find("\n3,") == std::string::npos);
}

TEST_CASE("default output directory comes from the environment") {
    auto dir = fresh_dir("envout");
    setenv("EVSET_OUTDIR", dir.string().c_str(), 1);
    int code = run_cli({"entropy", "--graph", "z", "--nmax", "2"});
    unsetenv("EVSET_OUTDIR");
    CHECK(code == 0);
    CHECK(fs::exists(dir / "entropy.csv"));
}

TEST_CASE("pruning is reported in run metadata") {
    auto dir = fresh_dir("prune");
    int code = run_cli({"entropy", "--graph", "z", "--nmax", "25", "--prune-eps", "1e-3",
                        "--out", dir.string()});
    CHECK(code == 0);
    auto meta = nlohmann::json::parse(read_text_file((dir / "run_metadata.json").string()));
    bool saw_prune = false;
    for (const auto& ev : meta["cap_events"])
        saw_prune |= ev.get<std::string>().rfind("pruned_mass=", 0) == 0;
    CHECK(saw_prune);
}

TEST_CASE("errors surface as exit code 1") {
    CHECK(run_cli({"entropy", "--graph", "moebius"}) == 1);
    CHECK(run_cli({"entropy", "--graph", "z", "--x0", "t3:"}) == 1);
    CHECK(run_cli({}) != 0);
}

TEST_SUITE_END();
