#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

#ifndef G2STROM_CLI_PATH
#error "G2STROM_CLI_PATH must point at the built command line tool"
#endif

int run_cli(const std::string& args) {
    const std::string cmd = std::string(G2STROM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream os(path);
    os << body;
}

std::string read_without_timestamp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream out;
    std::string line;
    while (std::getline(is, line))
        if (line.find("generated_at") == std::string::npos) out << line << "\n";
    return out.str();
}

const char* kBalanced = R"({
  "base": {"side_lengths": [1,1,1,1], "grid": 8},
  "beta_periods": [[1,-1,0,0,0,0],[0,0,1,-1,0,0],[0,0,0,0,1,-1]],
  "t2": [1,1],
  "instantons": "balanced"
})";

}  // namespace

TEST_CASE("verify on a balanced scenario exits 0") {
    write_file("cli_scen.json", kBalanced);
    CHECK(run_cli("verify --config cli_scen.json --out cli_rep.json") == 0);
    std::ifstream is("cli_rep.json");
    std::string body((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
    CHECK(body.find("\"all_pass\": true") != std::string::npos);
    CHECK(body.find("schema_version") != std::string::npos);
    std::remove("cli_scen.json");
    std::remove("cli_rep.json");
}

TEST_CASE("malformed and invalid configs exit 2") {
    write_file("cli_bad.json", "this is not json");
    CHECK(run_cli("verify --config cli_bad.json --out cli_bad_rep.json") == 2);

    write_file("cli_unknown.json", R"({
      "beta_periods": [[1,-1,0,0,0,0],[0,0,1,-1,0,0],[0,0,0,0,1,-1]],
      "mystery_knob": 7
    })");
    CHECK(run_cli("verify --config cli_unknown.json --out cli_bad_rep.json") == 2);

    CHECK(run_cli("verify --config does_not_exist.json") == 2);
    std::remove("cli_bad.json");
    std::remove("cli_unknown.json");
    std::remove("cli_bad_rep.json");
}

TEST_CASE("an obstructed solve fails with exit 1") {
    write_file("cli_obstructed.json", R"({
      "base": {"grid": 8},
      "beta_periods": [[1,-1,0,0,0,0],[0,0,1,-1,0,0],[0,0,0,0,1,-1]],
      "t2": [1,1],
      "instantons": "none"
    })");
    CHECK(run_cli("solve --config cli_obstructed.json --out cli_obs_rep.json") == 1);
    std::ifstream is("cli_obs_rep.json");
    std::string body((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
    CHECK(body.find("\"solvable\": false") != std::string::npos);
    CHECK(body.find("obstruction_integral") != std::string::npos);
    std::remove("cli_obstructed.json");
    std::remove("cli_obs_rep.json");
}

TEST_CASE("tdual command verifies both sides and gates on integrality") {
    write_file("cli_scen2.json", kBalanced);
    CHECK(run_cli("tdual --config cli_scen2.json --out cli_td.json") == 0);
    std::ifstream is("cli_td.json");
    std::string body((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
    CHECK(body.find("\"tdual.identity_residual\"") != std::string::npos);
    CHECK(body.find("dual_beta_periods") != std::string::npos);
    std::remove("cli_scen2.json");
    std::remove("cli_td.json");

    write_file("cli_third.json", R"({
      "base": {"grid": 8},
      "beta_periods": [[1,-1,0,0,0,0],[0,0,1,-1,0,0],[0,0,0,0,1,-1]],
      "t2": [1,3],
      "instantons": "balanced"
    })");
    CHECK(run_cli("tdual --config cli_third.json --out cli_td2.json") == 1);
    std::remove("cli_third.json");
    std::remove("cli_td2.json");
}

TEST_CASE("identical config and seed give byte-identical reports modulo timestamp") {
    CHECK(run_cli("verify-algebra --samples 3 --seed 11 --out cli_det_a.json") == 0);
    CHECK(run_cli("verify-algebra --samples 3 --seed 11 --out cli_det_b.json") == 0);
    CHECK(read_without_timestamp("cli_det_a.json") ==
          read_without_timestamp("cli_det_b.json"));
    // a different seed draws different samples
    CHECK(run_cli("verify-algebra --samples 3 --seed 12 --out cli_det_c.json") == 0);
    CHECK(read_without_timestamp("cli_det_a.json") !=
          read_without_timestamp("cli_det_c.json"));
    std::remove("cli_det_a.json");
    std::remove("cli_det_b.json");
    std::remove("cli_det_c.json");
}

TEST_CASE("lattice-check certificates") {
    write_file("cli_lat.json", R"({
      "mode": "K3", "t2": [1,1], "alpha": [-1,1], "r": 36, "q_values": [-2,-2,-2]
    })");
    CHECK(run_cli("lattice-check --config cli_lat.json --out cli_lat_rep.json") == 0);

    write_file("cli_lat_bad.json", R"({
      "mode": "K3", "t2": [1,1], "alpha": [-1,1], "r": 37, "q_values": [-2,-2,-2]
    })");
    CHECK(run_cli("lattice-check --config cli_lat_bad.json --out cli_lat_rep.json") == 1);
    std::remove("cli_lat.json");
    std::remove("cli_lat_bad.json");
    std::remove("cli_lat_rep.json");
}
