#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed command-line driver. The binary path
// comes from the build system.

namespace {

struct run_result {
    int exit_code;
    std::string out_file;
};

std::string temp_path(const std::string& tag) {
    static int counter = 0;
    return "cli_test_" + tag + "_" + std::to_string(counter++) + ".csv";
}

int run(const std::string& args) {
    const std::string cmd = std::string(IVMC_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t count_data_rows(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') ++rows;
    return rows;
}

std::size_t count_substr(const std::string& text, const std::string& what) {
    std::size_t n = 0, pos = 0;
    while ((pos = text.find(what, pos)) != std::string::npos) {
        ++n;
        pos += what.size();
    }
    return n;
}

} // namespace

TEST_CASE("help exits zero for every subcommand") {
    CHECK(run("--help") == 0);
    for (const char* sub : {"sample", "sweep", "compare", "mse", "lmhs", "partition-dump"})
        CHECK(run(std::string(sub) + " --help") == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("sample --no-such-flag") == 2);
    CHECK(run("sample") == 2);                       // no target at all
    CHECK(run("sample --target bogus") == 2);        // unknown builtin
    CHECK(run("sample --formula \"x1 +\" --domain \"[0,1]\"") == 2);
    CHECK(run("sample --formula \"exp(x1)\"") == 2); // formula without domain
    CHECK(run("sample --target g1 --formula x1 --domain \"[0,1]\"") == 2);
    CHECK(run("sample --formula x1 --domain \"[junk]\"") == 2);
    CHECK(run("nonexistent-command") != 0);
}

TEST_CASE("runtime failures exit with code 1") {
    // exp over a huge domain has no finite enclosure upper bound
    CHECK(run("sample --formula \"exp(x1)\" --domain \"[0,1000]\" --n 10") == 1);
    // division by an interval containing zero
    CHECK(run("sample --formula \"1/x1\" --domain \"[-1,1]\" --n 10") == 1);
}

TEST_CASE("sample run emits the requested number of accepted rows") {
    const std::string path = temp_path("sample");
    const int code = run("sample --target g5 --scheme integral --size 1000 --n 10000 "
                         "--seed 42 --out " + path);
    REQUIRE(code == 0);
    const std::string text = slurp(path);
    CHECK(count_substr(text, ",1,1\n") + count_substr(text, ",1,0\n") == 10000);
    CHECK(count_data_rows(text) >= 10000);
    CHECK(text.find("# seed=42") != std::string::npos);
    CHECK(text.find("# scheme=integral") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("formula target works end to end") {
    const std::string path = temp_path("formula");
    const int code = run("sample --formula \"exp(-x1^2)\" --domain \"[-5,5]\" --size 50 "
                         "--n 500 --seed 1 --out " + path);
    REQUIRE(code == 0);
    CHECK(count_data_rows(slurp(path)) >= 500);
    std::remove(path.c_str());
}

TEST_CASE("fixed seeds reproduce byte-identical CSV output") {
    const auto rerun_identical = [](const std::string& tag, const std::string& args) {
        const std::string p1 = temp_path(tag + "_a");
        const std::string p2 = temp_path(tag + "_b");
        REQUIRE(run(args + " --out " + p1) == 0);
        REQUIRE(run(args + " --out " + p2) == 0);
        const std::string a = slurp(p1);
        REQUIRE(!a.empty());
        CHECK(a == slurp(p2));
        std::remove(p1.c_str());
        std::remove(p2.c_str());
    };
    rerun_identical("sample", "sample --target g2 --size 200 --n 1000 --seed 7");
    rerun_identical("sweep", "sweep --target g5 --sizes 1,10,100 --n 2000 --seed 7");
    rerun_identical("compare", "compare --target g5 --sizes 1,50 --n 1000 --seed 7");
    rerun_identical("mse", "mse --target g2 --sizes 100 --n-mrs 20 --reps 40 --seed 7");
    rerun_identical("lmhs",
                    "lmhs --target g1 --chains 3 --cube-side 6 --max-steps 2000 "
                    "--check-every 500 --seed 7");
    rerun_identical("partition-dump", "partition-dump --target g2 --size 64 --seed 7");
}

TEST_CASE("sweep output carries the expected columns") {
    const std::string path = temp_path("sweepcols");
    REQUIRE(run("sweep --target g5 --sizes 1,10,100 --n 2000 --seed 3 --out " + path) == 0);
    const std::string text = slurp(path);
    CHECK(count_data_rows(text) == 3);
    CHECK(text.find("partition_size guaranteed_lower_bound empirical_acceptance") !=
          std::string::npos);
    CHECK(text.find("cpu_seconds") == std::string::npos); // timing is opt-in
    std::remove(path.c_str());

    const std::string timed = temp_path("sweeptimed");
    REQUIRE(run("sweep --target g5 --sizes 1,10 --n 500 --seed 3 --timing --out " + timed) == 0);
    CHECK(slurp(timed).find("cpu_seconds") != std::string::npos);
    std::remove(timed.c_str());
}

TEST_CASE("compare covers all three schemes") {
    const std::string path = temp_path("compare");
    REQUIRE(run("compare --target g5 --sizes 1,100 --n 2000 --seed 5 --out " + path) == 0);
    const std::string text = slurp(path);
    CHECK(count_data_rows(text) == 6);
    CHECK(text.find("volume,") != std::string::npos);
    CHECK(text.find("range,") != std::string::npos);
    CHECK(text.find("integral,") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("partition dump has one row per box") {
    const std::string path = temp_path("pdump");
    REQUIRE(run("partition-dump --target levy --size 150 --seed 1 --out " + path) == 0);
    const std::string text = slurp(path);
    CHECK(count_data_rows(text) == 150);
    std::remove(path.c_str());

    // --refine-budget B is the same partition as --size B+1
    const std::string by_budget = temp_path("budget");
    REQUIRE(run("partition-dump --target levy --refine-budget 149 --seed 1 --out " +
                by_budget) == 0);
    CHECK(count_data_rows(slurp(by_budget)) == 150);
    std::remove(by_budget.c_str());
}

TEST_CASE("config file values apply and flags override them") {
    const std::string cfg = temp_path("cfg").substr(0, 20) + ".ini";
    {
        std::ofstream out(cfg);
        out << "target=g2\nsize=100\nn=500\nseed=9\n";
    }
    const std::string p1 = temp_path("cfgrun");
    REQUIRE(run("sample --config " + cfg + " --out " + p1) == 0);
    const std::string text = slurp(p1);
    CHECK(text.find("# target=g2") != std::string::npos);
    CHECK(text.find("# size=100") != std::string::npos);

    const std::string p2 = temp_path("cfgover");
    REQUIRE(run("sample --config " + cfg + " --size 10 --out " + p2) == 0);
    CHECK(slurp(p2).find("# size=10") != std::string::npos);
    std::remove(cfg.c_str());
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("json target spec file drives a run") {
    const std::string spec = temp_path("spec").substr(0, 22) + ".json";
    {
        std::ofstream out(spec);
        out << R"({"name":"needle","stdev2":0.05,"domain":[[-10,10],[-10,10],[-10,10]]})";
    }
    const std::string path = temp_path("specrun");
    REQUIRE(run("sample --target-spec " + spec + " --size 300 --n 200 --seed 2 --out " +
                path) == 0);
    CHECK(count_data_rows(slurp(path)) >= 200);
    std::remove(spec.c_str());
    std::remove(path.c_str());
}
