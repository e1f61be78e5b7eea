#include "doctest.h"

#include <cmath>

#include "json.hpp"
#include "test_support.hpp"
#include "tqp/anyon_model.hpp"

using json = nlohmann::json;
using tqp_test::CliResult;
using tqp_test::corpus_dir;
using tqp_test::run_cli;

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("model fibonacci --no-such-flag").exit_code == 2);
    CHECK(run_cli("model fibonacci --format yaml").exit_code == 2);
    CHECK(run_cli("model").exit_code == 2);
    CHECK(run_cli("synth fibonacci 4 tau 1").exit_code == 2);
    CHECK(run_cli("run x.tqp --emit model").exit_code == 2);
    CHECK(run_cli("synth fibonacci 4 tau 1 iX --max-len 99").exit_code == 2);
    CHECK(run_cli("model fibonacci --emit state").exit_code == 2);
    CHECK(run_cli("model fibonacci --tol").exit_code == 2);
    CHECK(run_cli("check x.tqp --format").exit_code == 2);
}

TEST_CASE("check: exit codes and diagnostics") {
    const std::string pos = corpus_dir() + "/pos";
    const std::string neg = corpus_dir() + "/neg";

    SUBCASE("a valid program checks clean") {
        const CliResult r = run_cli("check " + pos + "/p01_minimal.tqp");
        CHECK(r.exit_code == 0);
        CHECK(r.out.empty());
    }
    SUBCASE("a bad sigma index reports E102 with a position") {
        const CliResult r = run_cli("check " + neg + "/n10_e102_sigma_range.tqp");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("E102") != std::string::npos);
        CHECK(r.err.find(":3:") != std::string::npos); // line of "apply s4;"
    }
    SUBCASE("stdin works") {
        const CliResult r = run_cli("check -", "model fibonacci; config 2 of tau total 1;");
        CHECK(r.exit_code == 0);
    }
    SUBCASE("json diagnostics go to stdout") {
        const CliResult r = run_cli("check " + neg + "/n10_e102_sigma_range.tqp --format json");
        CHECK(r.exit_code == 1);
        const json doc = json::parse(r.out);
        CHECK(doc["code"] == "E102");
        CHECK(doc["line"] == 3);
    }
}

TEST_CASE("model: report content") {
    const CliResult r = run_cli("model fibonacci --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["labels"] == json::array({"1", "tau"}));
    CHECK(doc["pass"] == true);
    CHECK(std::abs(doc["quantum_dimensions"][1].get<double>() - 1.6180339887498949) < 1e-9);
    CHECK(doc["pentagon_residual"].get<double>() < 1e-9);
    CHECK(doc["hexagon_residual"].get<double>() < 1e-9);
    CHECK(doc["unitarity_defect"].get<double>() < 1e-9);
    CHECK(doc["unit"] == "1");

    const CliResult level = run_cli("model su2_3 --format json");
    CHECK(json::parse(level.out)["level"] == 3);

    // a good model file loads, verifies and reports like a named model
    const CliResult from_file = run_cli("model " + corpus_dir() + "/models/fib.json --format json");
    REQUIRE(from_file.exit_code == 0);
    const json file_doc = json::parse(from_file.out);
    CHECK(file_doc["pass"] == true);
    CHECK(file_doc["name"] == "fibonacci");
}

TEST_CASE("synth: malformed targets fail cleanly") {
    const std::string path = "/tmp/tqp_bad_target.json";
    tqp_test::spit(path, "{\"dim\":2}");
    CHECK(run_cli("synth fibonacci 4 tau 1 " + path).exit_code == 1);
    tqp_test::spit(path, "not json at all");
    CHECK(run_cli("synth fibonacci 4 tau 1 " + path).exit_code == 1);
    std::remove(path.c_str());
    CHECK(run_cli("synth fibonacci 4 tau 1 /tmp/definitely_missing.json").exit_code == 1);
    CHECK(run_cli("synth fibonacci 4 nosuch 1 iX").exit_code == 1);
    // dimension mismatch: the 5-strand total-tau sector has dim 5
    CHECK(run_cli("synth fibonacci 5 tau tau iX --max-len 3").exit_code == 1);
}

TEST_CASE("model: export and re-import") {
    const CliResult r = run_cli("model ising --emit model");
    REQUIRE(r.exit_code == 0);
    const tqp::AnyonModel imported = tqp::import_model_json(r.out, 1e-9);
    CHECK(imported.name == "ising");
    CHECK(imported.num_labels() == 3);
    CHECK(tqp::verify_pentagon(imported, 1e-9).pass);
}

TEST_CASE("model: a broken model file fails with exit 1") {
    const CliResult r = run_cli("model " + corpus_dir() + "/models/broken.json");
    CHECK(r.exit_code == 1);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("run: emissions and filters") {
    const std::string pos = corpus_dir() + "/pos";

    SUBCASE("text emissions in order") {
        const CliResult r = run_cli("run " + pos + "/p11_multi_emit.tqp");
        REQUIRE(r.exit_code == 0);
        const std::size_t first_state = r.out.find("state dim=");
        const std::size_t unitary = r.out.find("unitary dim=");
        const std::size_t measure = r.out.find("measure edge=");
        CHECK(first_state != std::string::npos);
        CHECK(unitary != std::string::npos);
        CHECK(measure != std::string::npos);
        CHECK(first_state < unitary);
        CHECK(unitary < measure);
    }
    SUBCASE("json mode emits one document per line") {
        const CliResult r = run_cli("run " + pos + "/p11_multi_emit.tqp --format json");
        REQUIRE(r.exit_code == 0);
        int docs = 0;
        std::istringstream lines(r.out);
        std::string line;
        while (std::getline(lines, line)) {
            const json doc = json::parse(line); // throws on malformed output
            CHECK(doc.is_object());
            ++docs;
        }
        CHECK(docs == 4);
    }
    SUBCASE("--emit filters to one kind") {
        const CliResult r = run_cli("run " + pos + "/p11_multi_emit.tqp --format json --emit state");
        REQUIRE(r.exit_code == 0);
        int docs = 0;
        std::istringstream lines(r.out);
        std::string line;
        while (std::getline(lines, line)) {
            const json doc = json::parse(line);
            CHECK(doc.contains("amplitudes"));
            ++docs;
        }
        CHECK(docs == 2);
    }
    SUBCASE("measure distribution sums to one") {
        const CliResult r = run_cli("run " + pos + "/p05_measure.tqp --format json");
        REQUIRE(r.exit_code == 0);
        const json doc = json::parse(r.out);
        double sum = 0.0;
        for (const auto& entry : doc["distribution"])
            sum += entry["p"].get<double>();
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    SUBCASE("a program with diagnostics exits 1") {
        const CliResult r = run_cli("run " + corpus_dir() + "/neg/n13_e103_empty_sector.tqp");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("E103") != std::string::npos);
    }
}

TEST_CASE("byte stability: identical runs produce identical bytes") {
    const std::string pos = corpus_dir() + "/pos";
    const std::vector<std::string> commands = {
        "model fibonacci",
        "model su2_2 --format json",
        "model ising --emit model",
        "run " + pos + "/p11_multi_emit.tqp",
        "run " + pos + "/p06_ising_basic.tqp --format json",
        "check " + corpus_dir() + "/neg/n10_e102_sigma_range.tqp",
        "synth fibonacci 4 tau 1 iX --max-len 4",
        "synth fibonacci 4 tau 1 iX --max-len 4 --format json",
    };
    for (const std::string& cmd : commands) {
        CAPTURE(cmd);
        const CliResult a = run_cli(cmd);
        const CliResult b = run_cli(cmd);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
}

TEST_CASE("--output writes the payload to a file") {
    const std::string path = "/tmp/tqp_test_output.json";
    std::remove(path.c_str());
    const CliResult direct = run_cli("model fibonacci --format json");
    const CliResult filed = run_cli("model fibonacci --format json --output " + path);
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(tqp_test::slurp(path) == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("synth: finds a short word for a preset") {
    const CliResult r = run_cli("synth fibonacci 4 tau 1 iX --max-len 4 --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["depth_reached"] == 4);
    CHECK(doc["distance"].get<double>() < 1.0);
    CHECK(doc["explored"].get<long long>() > 100);

    // the emitted word is valid program syntax
    const std::string word = doc["word"].get<std::string>();
    const CliResult check = run_cli(
        "check -", "model fibonacci; config 4 of tau total 1; apply " + word + "; emit unitary;");
    CHECK(check.exit_code == 0);
}

TEST_CASE("synth: accepts a unitary json target") {
    const CliResult target = run_cli("run -", "model fibonacci; config 4 of tau total 1; "
                                              "apply s1 s2; emit unitary;");
    REQUIRE(target.exit_code == 0);
    // text mode is the default; re-run in json and use the document as a target
    const CliResult target_json =
        run_cli("run - --format json", "model fibonacci; config 4 of tau total 1; "
                                       "apply s1 s2; emit unitary;");
    const std::string path = "/tmp/tqp_test_target.json";
    tqp_test::spit(path, target_json.out);
    const CliResult r = run_cli("synth fibonacci 4 tau 1 " + path + " --max-len 3 --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["distance"].get<double>() < 1e-7);
    CHECK(doc["word"] == "s1 s2");
    std::remove(path.c_str());
}

TEST_CASE("exit-code contract over the corpus") {
    const std::string pos = corpus_dir() + "/pos";
    const std::string neg = corpus_dir() + "/neg";
    for (const char* name : {"p01_minimal", "p07_su2_level2", "p16_ising_sigma8", "p20_model_from_json"}) {
        CAPTURE(name);
        CHECK(run_cli("check " + pos + "/" + name + ".tqp").exit_code == 0);
        CHECK(run_cli("run " + pos + "/" + name + ".tqp").exit_code == 0);
    }
    for (const char* name : {"n04_e002_missing_config", "n08_e101_unknown_species",
                             "n12_e102_start_range", "n14_e104_broken_model"}) {
        CAPTURE(name);
        CHECK(run_cli("check " + neg + "/" + name + ".tqp").exit_code == 1);
        CHECK(run_cli("run " + neg + "/" + name + ".tqp").exit_code == 1);
    }
}
