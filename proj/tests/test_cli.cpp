#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arbormax/generator.hpp"
#include "arbormax/instance.hpp"
#include "arbormax/reductions.hpp"

using namespace arbormax;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(ARBORMAX_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "arbormax_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

const char* kStarFixture = R"({
  "directed": true,
  "n": 4,
  "edges": [[0,1],[0,2],[0,3]],
  "objective": {"type": "coverage", "universe_size": 5,
                "sets": [[], [1,2], [2,3], [4]]},
  "k": 2,
  "root": 0
})";

const char* kPlantedFixture = R"({
  "directed": true,
  "n": 2,
  "edges": [[0,1]],
  "objective": {"type": "explicit", "values": [0, 0, 0, 1]},
  "k": 1
})";

}  // namespace

TEST_CASE("cli end to end") {
    fs::path dir = scratch_dir();
    fs::path star = dir / "star.json";
    spill(star, kStarFixture);

    SUBCASE("gen is deterministic and checkable") {
        fs::path a = dir / "gen_a.json";
        fs::path b = dir / "gen_b.json";
        auto r1 = run_cli("gen --model erdos --n 6 --k 2 --seed 5 --p 0.4 --root 0 --out " +
                          a.string());
        auto r2 = run_cli("gen --model erdos --n 6 --k 2 --seed 5 --p 0.4 --root 0 --out " +
                          b.string());
        CHECK(r1.exit_code == 0);
        CHECK(r2.exit_code == 0);
        CHECK(slurp(a) == slurp(b));
        auto chk = run_cli("check --instance " + a.string());
        CHECK(chk.exit_code == 0);
        CHECK(chk.output.find("oracle ok") != std::string::npos);
    }

    SUBCASE("check rejects the planted non-submodular fixture with a witness") {
        fs::path planted = dir / "planted.json";
        spill(planted, kPlantedFixture);
        auto r = run_cli("check --instance " + planted.string());
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("submodularity") != std::string::npos);
        CHECK(r.output.find("X={} Y={1} v=0") != std::string::npos);
    }

    SUBCASE("solve dcsm with the exact subroutine on the star fixture") {
        fs::path out = dir / "report.json";
        auto r = run_cli("solve --instance " + star.string() +
                         " --algo dcsm --d 1 --subroutine exact --out " + out.string());
        REQUIRE(r.exit_code == 0);
        std::string report = slurp(out);
        CHECK(report.find("\"algorithm\": \"dcsm\"") != std::string::npos);
        CHECK(report.find("\"within_k\": true") != std::string::npos);
        // value >= 2 and m <= 2 per the greedy-radius trace plus partition
        auto j = nlohmann::json::parse(report);
        CHECK(j["solution"]["value"].get<double>() >= 2.0);
        CHECK(j["solution"]["m"].get<int>() <= 2);
    }

    SUBCASE("solve reports are byte-identical across reruns") {
        fs::path o1 = dir / "r1.json";
        fs::path o2 = dir / "r2.json";
        std::string cmd = "solve --instance " + star.string() +
                          " --algo drcsm --delta 1/2 --root 0 --d 1 --out ";
        CHECK(run_cli(cmd + o1.string()).exit_code == 0);
        CHECK(run_cli(cmd + o2.string()).exit_code == 0);
        CHECK(report_determinism_key(slurp(o1)) == report_determinism_key(slurp(o2)));
        CHECK(slurp(o1).find("\"within_delta\": true") != std::string::npos);
    }

    SUBCASE("exact subcommand") {
        fs::path out = dir / "exact.json";
        auto r = run_cli("exact --instance " + star.string() + " --out " + out.string());
        REQUIRE(r.exit_code == 0);
        CHECK(slurp(out).find("\"value\": 3.0") != std::string::npos);

        auto capped = run_cli("exact --instance " + star.string() + " --height-cap 1");
        CHECK(capped.exit_code == 0);
    }

    SUBCASE("raw algorithm subcommands emit traces") {
        auto r = run_cli("solve --instance " + star.string() +
                         " --algo greedy-radius --radius 1 --subroutine exact");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("\"trace\"") != std::string::npos);
        auto r2 = run_cli("solve --instance " + star.string() + " --algo recapprox-d --d 1");
        CHECK(r2.exit_code == 0);
        CHECK(r2.output.find("\"trace\"") != std::string::npos);
    }

    SUBCASE("epsilon parameterization fills the closed-form bounds") {
        auto r = run_cli("solve --instance " + star.string() +
                         " --algo dcsm --epsilon 0.5 --with-exact");
        REQUIRE(r.exit_code == 0);
        auto j = nlohmann::json::parse(r.output);
        CHECK(j["params"]["d"].get<int>() == 2);
        CHECK(j["params"]["epsilon"].get<double>() == 0.5);
        double ratio = j["exact"]["ratio"].get<double>();
        CHECK(ratio >= j["exact"]["sharp_bound"].get<double>() - 1e-12);
        CHECK(ratio >= j["exact"]["epsilon_bound"].get<double>() - 1e-12);
    }

    SUBCASE("usage and failure exit codes") {
        CHECK(run_cli("solve --algo dcsm").exit_code == 2);  // missing --instance
        CHECK(run_cli("solve --instance " + star.string() + " --algo bogus").exit_code == 2);
        CHECK(run_cli("nonsense").exit_code == 2);
        fs::path broken = dir / "broken.json";
        spill(broken, "{\"directed\": true}");
        CHECK(run_cli("check --instance " + broken.string()).exit_code == 1);
        // csm on a directed instance is a usage mismatch
        CHECK(run_cli("solve --instance " + star.string() + " --algo csm").exit_code == 2);
    }

    SUBCASE("bench emits one row per instance with ratios above the bound") {
        fs::path bench_dir = dir / "bench";
        fs::create_directories(bench_dir);
        SplitMix64 rng{8181};
        for (int i = 0; i < 50; ++i) {
            GenSpec spec;
            spec.model = i % 2 ? "erdos" : "random-out-tree";
            spec.p = 0.4;
            spec.n = 4 + static_cast<int>(rng.below(3));
            spec.k = 1 + static_cast<int>(rng.below(3));
            spec.directed = true;
            spec.universe_size = 2 * spec.n;
            spec.seed = rng.next();
            if (i % 3 == 0) spec.root = static_cast<Vertex>(rng.below(spec.n));
            char name[32];
            std::snprintf(name, sizeof(name), "i%03d.json", i);
            spill(bench_dir / name, emit_instance(gen_random(spec)));
        }
        fs::path csv = dir / "bench.csv";
        auto r = run_cli("bench --dir " + bench_dir.string() + " --out " + csv.string() +
                         " --d 1 --delta 1/2");
        REQUIRE(r.exit_code == 0);
        std::istringstream rows(slurp(csv));
        std::string line;
        std::getline(rows, line);  // header
        CHECK(line.find("ratio") != std::string::npos);
        int count = 0;
        while (std::getline(rows, line)) {
            if (line.empty()) continue;
            ++count;
            // ratio and bound are columns 10 and 11 (1-based)
            std::istringstream cells(line);
            std::string cell;
            std::vector<std::string> row;
            while (std::getline(cells, cell, ',')) row.push_back(cell);
            REQUIRE(row.size() >= 11);
            double ratio = std::stod(row[9]);
            double bound = std::stod(row[10]);
            CHECK(ratio >= bound - 1e-9);
            CHECK(ratio <= 1.0 + 1e-9);
        }
        CHECK(count == 50);
    }
}
