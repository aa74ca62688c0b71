#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <ejmnet/ejmnet.hpp>

using namespace ejmnet;
using ejmnet::io::json;

namespace {

struct CmdResult {
    int exitCode = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(EJMNET_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

std::string without_wallclock(const std::string& text) {
    std::string out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (line.find("wallclock") == std::string::npos) out += line + "\n";
    return out;
}

// Finds the CSV row starting with `key,` and returns the requested field.
double csv_field(const std::string& text, const std::string& key, int field) {
    for (const std::string& line : data_lines(text)) {
        if (line.rfind(key + ",", 0) != 0) continue;
        std::stringstream ss(line);
        std::string cell;
        for (int i = 0; i <= field; ++i) REQUIRE(std::getline(ss, cell, ','));
        return std::stod(cell);
    }
    FAIL("row not found: " + key);
    return 0;
}

BilocalModel random_model(Rng& rng) {
    BilocalModel m;
    m.q1 = rng.dirichlet_array<8>();
    m.q2 = rng.dirichlet_array<8>();
    for (auto& row : m.response) row = rng.dirichlet_array<4>();
    return m;
}

}  // namespace

TEST_CASE("correlator sets survive a JSON round trip exactly") {
    const CorrelatorSet c = closed_form_correlators(0.37, 0.81, 0.64);
    const CorrelatorSet back = io::correlator_set_from_json(io::to_json(c));
    CHECK(max_correlator_difference(c, back) == 0.0);
    CHECK_THROWS_AS(io::correlator_set_from_json(json::object()), ValidityError);
}

TEST_CASE("bilocal models survive a JSON round trip and are re-validated") {
    Rng rng(31);
    const BilocalModel m = random_model(rng);
    const BilocalModel back = io::bilocal_model_from_json(io::to_json(m));
    CHECK(back.q1 == m.q1);
    CHECK(back.q2 == m.q2);
    CHECK(back.response == m.response);
    json j = io::to_json(m);
    j["q1"][0] = -1.0;
    CHECK_THROWS_AS(io::bilocal_model_from_json(j), ValidityError);
}

TEST_CASE("distributions round trip through JSON and CSV") {
    const TripartiteDistribution dist =
        network_distribution(0.9, 0.7, 0.55, pauli_settings(), pauli_settings());
    const TripartiteDistribution via_json = io::distribution_from_json(io::to_json(dist));
    for (std::size_t i = 0; i < TripartiteDistribution::kSize; ++i)
        CHECK(via_json.p[i] == dist.p[i]);

    std::stringstream csv(io::distribution_to_csv(dist));
    const TripartiteDistribution via_csv = io::distribution_from_csv(csv);
    for (std::size_t i = 0; i < TripartiteDistribution::kSize; ++i)
        CHECK(std::abs(via_csv.p[i] - dist.p[i]) < 1e-11);
}

TEST_CASE("distribution CSV parsing reports precise failure locations") {
    const TripartiteDistribution dist = eval_bilocal(BilocalModel::uniform());
    const std::string good = io::distribution_to_csv(dist);

    // Truncated file: a missing entry must be flagged.
    std::string truncated = good.substr(0, good.rfind("3,3"));
    std::stringstream t(truncated);
    CHECK_THROWS_WITH(io::distribution_from_csv(t),
                      Catch::Matchers::ContainsSubstring("missing entry"));

    // Duplicate row.
    std::stringstream d(good + "1,1,+1,1,+1,0.0625\n");
    CHECK_THROWS_WITH(io::distribution_from_csv(d),
                      Catch::Matchers::ContainsSubstring("duplicate"));

    // Malformed probability naming the line.
    std::string bad = good;
    bad.replace(bad.find("0.0625"), 6, "x.xx");
    std::stringstream b(bad);
    CHECK_THROWS_AS(io::distribution_from_csv(b), ValidityError);
}

TEST_CASE("csv floats use 12 significant digits with a dot separator") {
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(-1.0 / 3.0) == "-0.333333333333");
    CHECK(io::format_double(12 * std::sqrt(6.0)) == "29.3938769134");
    CHECK(io::format_double(0.0) == "0");
}

TEST_CASE("cli computes the printed correlator example") {
    const CmdResult res = run_cli("correlators --theta 0 --v1 1 --v2 1");
    REQUIRE(res.exitCode == 0);
    CHECK(std::abs(csv_field(res.out, "AB_11", 1) + 0.5) < 1e-12);
    CHECK(std::abs(csv_field(res.out, "AB_11", 2) + 0.5) < 1e-12);
    CHECK(std::abs(csv_field(res.out, "ABC_123", 1) + 0.5) < 1e-12);
    CHECK(std::abs(csv_field(res.out, "AB_12", 1)) < 1e-12);
    CHECK(csv_field(res.out, "AB_12", 2) == 0.0);
    // Discrepancy column stays at numerical noise.
    for (const std::string& line : data_lines(res.out)) {
        if (line.rfind("quantity", 0) == 0) continue;
        std::stringstream ss(line);
        std::string cell;
        for (int i = 0; i < 4; ++i) REQUIRE(std::getline(ss, cell, ','));
        CHECK(std::stod(cell) < 1e-10);
    }
}

TEST_CASE("cli reports all-zero correlators for fully depolarized sources") {
    const CmdResult res = run_cli("correlators --theta 0.4 --v1 0 --v2 0");
    REQUIRE(res.exitCode == 0);
    for (const std::string& line : data_lines(res.out)) {
        if (line.rfind("quantity", 0) == 0) continue;
        std::stringstream ss(line);
        std::string cell;
        REQUIRE(std::getline(ss, cell, ','));
        REQUIRE(std::getline(ss, cell, ','));
        CHECK(std::abs(std::stod(cell)) < 1e-12);
    }
}

TEST_CASE("cli inequality report flags the full-visibility violation") {
    const CmdResult res = run_cli("inequalities --theta 0 --v1 1 --v2 1");
    REQUIRE(res.exitCode == 0);
    CHECK(std::abs(csv_field(res.out, "B = S/3 - T", 1) - 4.0) < 1e-9);
    CHECK(std::abs(csv_field(res.out, "B = S/3 - T", 2) - 3.0) < 1e-12);
    CHECK(csv_field(res.out, "B = S/3 - T", 4) == 1.0);
    CHECK(std::abs(csv_field(res.out, "Bprime vs bilocal bound", 1) - 29.3938769134) < 1e-6);
    CHECK(csv_field(res.out, "Bprime vs bilocal bound", 4) == 1.0);
}

TEST_CASE("cli inequality report shows no violation at 80 percent visibility") {
    const CmdResult res = run_cli("inequalities --theta 0 --v1 0.8 --v2 0.8");
    REQUIRE(res.exitCode == 0);
    CHECK(std::abs(csv_field(res.out, "B = S/3 - T", 1) - 2.72) < 1e-9);
    CHECK(csv_field(res.out, "B = S/3 - T", 4) == 0.0);
}

TEST_CASE("cli reads distribution files and rejects malformed ones") {
    const TripartiteDistribution dist = correlators_to_distribution(
        bprime_only_violation_example());
    io::write_text_file("ineq_input.csv", io::distribution_to_csv(dist));
    const CmdResult res = run_cli("inequalities --input ineq_input.csv --format json");
    REQUIRE(res.exitCode == 0);
    const json j = json::parse(res.out);
    CHECK_FALSE(j.at("B").at("violated").get<bool>());
    CHECK(j.at("Bprime").at("violatesBilocal").get<bool>());

    io::write_text_file("ineq_bad.csv", "x,z,a,b,c,p\n1,1,+1,1,+1,0.9\n");
    const CmdResult bad = run_cli("inequalities --input ineq_bad.csv");
    CHECK(bad.exitCode == 2);
    const CmdResult missing = run_cli("inequalities --input no_such_file.csv");
    CHECK(missing.exitCode == 2);
    std::remove("ineq_input.csv");
    std::remove("ineq_bad.csv");
}

TEST_CASE("cli usage errors exit with status 1") {
    CHECK(run_cli("zscan").exitCode == 1);
    CHECK(run_cli("frobnicate").exitCode == 1);
    CHECK(run_cli("correlators --settings bogus").exitCode == 1);
    CHECK(run_cli("scan --theta 0").exitCode == 1);
}

TEST_CASE("cli circuit verdicts cover the default grid and pass") {
    const CmdResult res = run_cli("circuit");
    REQUIRE(res.exitCode == 0);
    const auto lines = data_lines(res.out);
    REQUIRE(lines.size() == 22);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(lines[i].rfind(",1") == lines[i].size() - 2);
    }
    const CmdResult js = run_cli("circuit --theta 0.5 --format json");
    REQUIRE(js.exitCode == 0);
    const json j = json::parse(js.out);
    CHECK(j.at("allPass").get<bool>());
    CHECK(j.at("verdicts").size() == 1);
}

TEST_CASE("cli fit certifies the full-visibility point of the extremal basis") {
    const CmdResult res = run_cli(
        "fit --theta 1.5707963267948966 --v1 1 --v2 1 --restarts 8 --max-iters 800 --seed 11");
    REQUIRE(res.exitCode == 0);
    const json j = json::parse(res.out);
    CHECK(j.at("result").at("feasible").get<bool>());
    CHECK(j.at("meta").at("seed").get<int>() == 11);
    const BilocalModel m = io::bilocal_model_from_json(j.at("result").at("model"));
    m.validate();
}

TEST_CASE("cli fit with the symmetric family certifies an aligned interior point") {
    const CmdResult res = run_cli("fit --theta 0 --v1 0.75 --v2 0.75 --parametrization symmetric14");
    REQUIRE(res.exitCode == 0);
    const json j = json::parse(res.out);
    CHECK(j.at("result").at("feasible").get<bool>());
    CHECK(j.at("result").at("restartsUsed").get<int>() == 1);
}

TEST_CASE("cli reruns are byte-identical except for the wall clock") {
    for (const std::string cmd :
         {std::string("correlators --theta 0.3 --v1 0.9 --v2 0.8"),
          std::string("circuit --theta 0 --theta 0.7"),
          std::string("inequalities --theta 0.5 --v1 0.7 --v2 0.6 --format json")}) {
        const CmdResult a = run_cli(cmd + " -o rerun.txt");
        REQUIRE(a.exitCode == 0);
        const std::string first = slurp("rerun.txt");
        const CmdResult b = run_cli(cmd + " -o rerun.txt");
        REQUIRE(b.exitCode == 0);
        const std::string second = slurp("rerun.txt");
        CHECK(without_wallclock(first) == without_wallclock(second));
        std::remove("rerun.txt");
    }
}

TEST_CASE("cli config files mirror the command-line flags") {
    io::write_text_file("cfg.json", "{\"theta\": 0.0, \"v1\": 1.0, \"v2\": 1.0}\n");
    const CmdResult via_cfg = run_cli("correlators --config cfg.json");
    const CmdResult via_flags = run_cli("correlators --theta 0 --v1 1 --v2 1");
    REQUIRE(via_cfg.exitCode == 0);
    REQUIRE(via_flags.exitCode == 0);
    CHECK(data_lines(via_cfg.out) == data_lines(via_flags.out));

    // Explicit flags override config values.
    const CmdResult overridden = run_cli("correlators --config cfg.json --v1 0 --v2 0");
    CHECK(std::abs(csv_field(overridden.out, "AB_11", 1)) < 1e-12);
    std::remove("cfg.json");
}

TEST_CASE("cli zscan emits one row per cap with the linear bound column") {
    const CmdResult res = run_cli("zscan --z 0 --restarts 2 --max-iters 60 --seed 5");
    REQUIRE(res.exitCode == 0);
    const auto lines = data_lines(res.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "Z,maxB,bound");
    std::stringstream ss(lines[1]);
    std::string cell;
    REQUIRE(std::getline(ss, cell, ','));
    CHECK(std::stod(cell) == 0.0);
    REQUIRE(std::getline(ss, cell, ','));
    const double maxb = std::stod(cell);
    CHECK(maxb > 2.9);
    CHECK(maxb < 3.05);
    REQUIRE(std::getline(ss, cell, ','));
    CHECK(std::stod(cell) == 3.0);
}

TEST_CASE("cli scan on the symmetric diagonal brackets the known threshold") {
    const CmdResult res = run_cli(
        "scan --diagonal --theta 0 --settings pauli --restarts 6 --max-iters 500 --seed 3");
    REQUIRE(res.exitCode == 0);
    const auto lines = data_lines(res.out);
    REQUIRE(lines.size() == 2);
    std::stringstream ss(lines[1]);
    std::string cell;
    REQUIRE(std::getline(ss, cell, ','));  // theta
    REQUIRE(std::getline(ss, cell, ','));  // settings
    CHECK(cell == "pauli");
    REQUIRE(std::getline(ss, cell, ','));  // Vcrit
    const double vcrit = std::stod(cell);
    CHECK(vcrit > 0.75);
    CHECK(vcrit < 0.83);
}
