#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "bfly/emit.hpp"
#include "bfly/serialize.hpp"

using namespace bfly;

TEST_CASE("angle vector json round trip") {
    Rng rng(211);
    const AngleVector theta = sample(ButterflyKind::diagonal_simple, 3, rng);
    const AngleVector back = angle_vector_from_json(angle_vector_to_json(theta));
    CHECK(back.kind == theta.kind);
    CHECK(back.n == theta.n);
    CHECK(back.angles == theta.angles);
}

TEST_CASE("permutation json uses 1-based images") {
    const Permutation p({2, 0, 1});
    const nlohmann::json j = permutation_to_json(p);
    CHECK(j.at("images") == nlohmann::json({3, 1, 2}));
    CHECK(permutation_from_json(j) == p);
}

TEST_CASE("pivot log jsonl") {
    const DenseMatrix r = rotation(1.2);
    const GeFactorization f = factorize(r, {Scheme::gepp, std::nullopt});
    const std::string jsonl = pivot_log_to_jsonl(f);
    const auto first = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
    CHECK(first.at("k") == 1);
    CHECK(first.at("row_swap") == 2);
    CHECK(first.at("col_swap") == 1);
}

#ifdef BFLY_CLI_PATH
namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("bfly_cli_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(BFLY_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("cli end to end smoke") {
    TempDir dir;
    const std::string out = dir.path.string();

    // ge on a CSV input emits factors and pivots.
    write_file(out + "/input.csv", to_csv(rotation(1.2)));
    CHECK(run_cli("ge --strategy gepp --input " + out + "/input.csv --emit factors --out " + out) == 0);
    CHECK(std::filesystem::exists(dir.path / "L.csv"));
    CHECK(std::filesystem::exists(dir.path / "U.csv"));
    CHECK(std::filesystem::exists(dir.path / "p.json"));
    CHECK(run_cli("ge --strategy gecp --tol-mult 1e3 --input " + out +
                  "/input.csv --emit pivots --out " + out) == 0);
    CHECK(std::filesystem::exists(dir.path / "pivots.jsonl"));
    CHECK(run_cli("ge --strategy gecp --tol-mult none --input " + out +
                  "/input.csv --emit growth --out " + out) == 0);
    CHECK(std::filesystem::exists(dir.path / "growth.csv"));

    // Butterfly angle input instead of a CSV matrix.
    Rng rng(2025);
    write_file(out + "/theta.json",
               angle_vector_to_json(sample(ButterflyKind::scalar_simple, 3, rng)).dump());
    CHECK(run_cli("ge --strategy gecp --tol-mult 1e3 --theta " + out +
                  "/theta.json --emit factors --out " + out) == 0);
    CHECK(run_cli("sparsity --n 3 --theta " + out + "/theta.json --out " + out) == 0);
    CHECK(run_cli("ge --input " + out + "/input.csv --theta " + out + "/theta.json") != 0);

    CHECK(run_cli("align --n 2 --trials 2 --seed 3 --tol-mult 1e3 --out " + out) == 0);
    CHECK(std::filesystem::exists(dir.path / "align.csv"));

    CHECK(run_cli("growth-hist --n 3 --trials 8 --seed 3 --out " + out) == 0);
    CHECK(run_cli("sparsity --n 4 --seed 3 --out " + out) == 0);
    CHECK(run_cli("table1 --n 3 --trials 2 --seed 3 --out " + out) == 0);
    CHECK(run_cli("lipschitz --n 2 --trials 5 --seed 3 --out " + out) == 0);

    CHECK(run_cli("hadamard sample --kind scalar_simple --n 3 --seed 9 --out " + out) == 0);
    CHECK(std::filesystem::exists(dir.path / "hadamard.txt"));
    CHECK(run_cli("hadamard verify --input " + out + "/hadamard.txt") == 0);
    CHECK(run_cli("hadamard enumerate --kind scalar_simple --n 2 --out " + out) == 0);

    // Config file route: flags come from JSON.
    write_file(out + "/cfg.json", R"({"n": 2, "trials": 2, "seed": 11})");
    CHECK(run_cli("align --json-config " + out + "/cfg.json --out " + out) == 0);

    // emit_formats from the config restricts what gets written.
    TempDir dir3;
    write_file(out + "/csv_only.json", R"({"n": 3, "emit_formats": ["csv"]})");
    CHECK(run_cli("sparsity --json-config " + out + "/csv_only.json --out " +
                  dir3.path.string()) == 0);
    CHECK(std::filesystem::exists(dir3.path / "factors.csv"));
    CHECK_FALSE(std::filesystem::exists(dir3.path / "P.pbm"));

    // Determinism: identical seeds give byte-identical CSVs.
    TempDir dir2;
    CHECK(run_cli("growth-hist --n 3 --trials 8 --seed 3 --out " + dir2.path.string()) == 0);
    CHECK(read_file((dir.path / "growth.csv").string()) ==
          read_file((dir2.path / "growth.csv").string()));
}
#endif
