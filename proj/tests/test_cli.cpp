#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cli_app.hpp"
#include "stochdom/convexity_test.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = stochdom::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const char* tag) {
    auto dir = std::filesystem::temp_directory_path() /
               (std::string("stochdom_cli_") + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type, properties, required, items, enum, const, oneOf.
bool validate_schema(const json& schema, const json& value);

bool type_matches(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

bool validate_schema(const json& schema, const json& value) {
    if (schema.contains("const") && value != schema["const"]) return false;
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& e : schema["enum"]) hit = hit || (value == e);
        if (!hit) return false;
    }
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        if (t.is_string()) {
            if (!type_matches(t.get<std::string>(), value)) return false;
        } else {
            bool hit = false;
            for (const auto& alt : t) hit = hit || type_matches(alt.get<std::string>(), value);
            if (!hit) return false;
        }
    }
    if (schema.contains("required")) {
        for (const auto& name : schema["required"])
            if (!value.contains(name.get<std::string>())) return false;
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [name, sub] : schema["properties"].items())
            if (value.contains(name) && !validate_schema(sub, value.at(name)))
                return false;
    }
    if (schema.contains("items") && value.is_array()) {
        for (const auto& item : value)
            if (!validate_schema(schema["items"], item)) return false;
    }
    if (schema.contains("oneOf")) {
        int hits = 0;
        for (const auto& alt : schema["oneOf"])
            if (validate_schema(alt, value)) ++hits;
        if (hits != 1) return false;
    }
    return true;
}

json load_schema() {
    std::ifstream in(STOCHDOM_SCHEMA_PATH);
    REQUIRE(in.good());
    return json::parse(in);
}

}  // namespace

TEST_CASE("compare subcommand reproduces the worked rank examples") {
    const auto schema = load_schema();

    SUBCASE("one-sample odds-convex certificate") {
        const auto r = run_cli({"compare", "--class", "co", "--i", "196", "--n", "200",
                                "--j", "43", "--m", "44", "--format", "json"});
        REQUIRE(r.code == 0);
        const json doc = json::parse(r.out);
        CHECK(validate_schema(schema, doc));
        CHECK(doc["certified"] == true);
        CHECK(doc["verdicts"][0]["class"] == "co");
        CHECK(doc["verdicts"][0]["condition_used"] == "co");
    }
    SUBCASE("trivial identity certifies") {
        const auto r = run_cli({"compare", "--class", "co", "--i", "1", "--n", "1",
                                "--j", "1", "--m", "1", "--format", "json"});
        REQUIRE(r.code == 0);
        CHECK(json::parse(r.out)["certified"] == true);
    }
    SUBCASE("two-sample certificate at degree 9") {
        const auto r = run_cli({"compare", "--x", "dagum(a=3,p=2,b=3)", "--y",
                                "loglogistic(a=2,b=2)", "--i", "7", "--n", "30", "--j",
                                "4", "--m", "25", "--k-max", "20", "--format", "json"});
        REQUIRE(r.code == 0);
        const json doc = json::parse(r.out);
        CHECK(validate_schema(schema, doc));
        CHECK(doc["certified"] == true);
        CHECK(doc["degree"]["k"] == 9);
        CHECK(doc["degree"]["fsd"] == false);
        // class derived from Y's catalog membership: odds-convex only
        REQUIRE(doc["verdicts"].size() == 1);
        CHECK(doc["verdicts"][0]["class"] == "co");
    }
    SUBCASE("numeric oracle confirmation") {
        const auto r = run_cli({"compare", "--parent", "gamma(a=2,b=2)", "--class",
                                "ifr", "--i", "194", "--n", "200", "--j", "43", "--m",
                                "44", "--verify-numeric", "--format", "json"});
        REQUIRE(r.code == 0);
        const json doc = json::parse(r.out);
        CHECK(validate_schema(schema, doc));
        CHECK(doc["certified"] == true);
        CHECK(doc["numeric_oracle"]["ran"] == true);
        CHECK(doc["numeric_oracle"]["verdict"] != "fails");
    }
    SUBCASE("missing class selection is an operational error") {
        const auto r = run_cli({"compare", "--i", "1", "--n", "2", "--j", "1", "--m",
                                "2"});
        CHECK(r.code == 1);
        CHECK(r.err.find("--class") != std::string::npos);
    }
    SUBCASE("unknown family reports the parse position") {
        const auto r = run_cli({"compare", "--x", "frobnitz(a=1)", "--y",
                                "loglogistic(a=2,b=2)", "--i", "2", "--n", "4", "--j",
                                "1", "--m", "4"});
        CHECK(r.code == 1);
        CHECK(r.err.find("position 0") != std::string::npos);
    }
}

TEST_CASE("min-rank subcommand") {
    const auto schema = load_schema();
    const auto r = run_cli({"min-rank", "--class", "co", "--n", "200", "--j", "43",
                            "--m", "44", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(validate_schema(schema, doc));
    CHECK(doc["min_rank"] == 196);
    CHECK(doc["trace"].size() == 196 - 43 + 1);
    CHECK(doc["trace"].back()["certified"] == true);

    const auto ifr = run_cli({"min-rank", "--class", "ifr", "--n", "200", "--j", "43",
                              "--m", "44", "--format", "json"});
    CHECK(json::parse(ifr.out)["min_rank"] == 194);
}

TEST_CASE("param-range subcommand on a small instance") {
    const auto schema = load_schema();
    const auto r = run_cli({"param-range", "--family", "loglogistic", "--fix", "a=3",
                            "--free", "b", "--lo", "1", "--hi", "3", "--y",
                            "loglogistic(a=3,b=1)", "--class", "co", "--i", "10", "--n",
                            "50", "--j", "10", "--m", "50", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(validate_schema(schema, doc));
    CHECK(doc["found"] == true);
    CHECK(doc["lo"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["hi"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("test-convexity subcommand") {
    const auto schema = load_schema();
    const auto dir = scratch_dir("tc");
    const auto sample_path = dir / "sample.txt";
    {
        // convex-by-construction sample for the odds transform
        std::ofstream out(sample_path);
        out.precision(17);
        for (int j = 1; j <= 15; ++j) {
            const double p = (j - 1.0) / 15.0;
            out << p / (1.0 - p) << "\n";
        }
    }

    SUBCASE("convex sample accepts with statistic 0") {
        const auto r = run_cli({"test-convexity", "--sample", sample_path.string(),
                                "--co", "--runs", "600", "--seed", "7", "--cache-dir",
                                (dir / "cache").string(), "--format", "json"});
        REQUIRE(r.code == 0);
        const json doc = json::parse(r.out);
        CHECK(validate_schema(schema, doc));
        CHECK(doc["statistic"].get<double>() == 0.0);
        CHECK(doc["decision"] == "accept");
        CHECK(doc["p_value"].get<double>() > 0.9);
        CHECK(doc["gcm_nodes"].size() == 15);
    }
    SUBCASE("output is byte-identical for identical inputs") {
        const std::vector<std::string> args = {
            "test-convexity", "--sample", sample_path.string(), "--co", "--runs", "600",
            "--seed", "7", "--cache-dir", (dir / "cache").string(), "--format", "json"};
        const auto a = run_cli(args);
        const auto b = run_cli(args);
        CHECK(a.out == b.out);
    }
    SUBCASE("mismatching explicit null table is regenerated with a warning") {
        const auto table_path = dir / "null_bad.csv";
        {
            std::ofstream out(table_path);
            out << "kind,n,runs,seed\nodds,9,10,1\n";
            for (int k = 0; k < 10; ++k) out << 0.1 * k << "\n";
        }
        const auto r = run_cli({"test-convexity", "--sample", sample_path.string(),
                                "--co", "--runs", "600", "--seed", "7", "--null-table",
                                table_path.string(), "--cache-dir",
                                (dir / "cache").string(), "--format", "json"});
        REQUIRE(r.code == 0);
        CHECK(r.err.find("regenerating") != std::string::npos);
        CHECK(json::parse(r.out)["runs"] == 600);
    }
    SUBCASE("csv format emits the two-column gcm data") {
        const auto r = run_cli({"test-convexity", "--sample", sample_path.string(),
                                "--co", "--runs", "600", "--seed", "7", "--cache-dir",
                                (dir / "cache").string(), "--format", "csv"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("x,gcm") != std::string::npos);
    }
    SUBCASE("unreadable sample file is an operational error") {
        const auto r = run_cli({"test-convexity", "--sample",
                                (dir / "missing.txt").string(), "--co"});
        CHECK(r.code == 1);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("null-table subcommand caches and reports") {
    const auto schema = load_schema();
    const auto dir = scratch_dir("nt");
    const auto r = run_cli({"null-table", "--transform", "co", "--n", "10", "--runs",
                            "550", "--seed", "3", "--cache-dir", dir.string(),
                            "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(validate_schema(schema, doc));
    CHECK(doc["stats"].size() == 550);
    CHECK(doc["low_precision"] == false);
    CHECK(std::filesystem::exists(
        stochdom::null_table_path(dir, stochdom::TransformKind::odds, 10, 550, 3)));

    // csv format round-trips through the cache file layout
    const auto csv = run_cli({"null-table", "--transform", "co", "--n", "10", "--runs",
                              "550", "--seed", "3", "--cache-dir", dir.string(),
                              "--format", "csv"});
    CHECK(csv.out.rfind("kind,n,runs,seed\nodds,10,550,3\n", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("tables subcommand shapes") {
    const auto dir = scratch_dir("tb");
    SUBCASE("table2 grid") {
        const auto r = run_cli({"tables", "--which", "table2", "--runs-override", "60",
                                "--seed", "5", "--cache-dir", dir.string()});
        REQUIRE(r.code == 0);
        std::istringstream lines(r.out);
        std::string line;
        std::getline(lines, line);
        CHECK(line == "# seed,5");
        std::getline(lines, line);
        CHECK(line.rfind("# warning", 0) == 0);  // 60 runs: low precision
        std::getline(lines, line);
        CHECK(line.rfind("runs,", 0) == 0);
        std::getline(lines, line);
        CHECK(line == "p/n,10,15,20,25,30,40,50,75,100");
        int rows = 0;
        while (std::getline(lines, line))
            if (!line.empty()) ++rows;
        CHECK(rows == 10);
    }
    SUBCASE("table3 grid") {
        const auto r = run_cli({"tables", "--which", "table3", "--replicates", "4",
                                "--runs-override", "80", "--seed", "5", "--cache-dir",
                                dir.string()});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("family/n,25,50,75,100") != std::string::npos);
        CHECK(r.out.find("gamma(a=2,b=1)") != std::string::npos);
        CHECK(r.out.find("pareto(a=0.5,b=1)") != std::string::npos);
        CHECK(r.out.find('%') != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("help and bad flags") {
    const auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("compare") != std::string::npos);

    const auto bad = run_cli({"compare", "--i", "1"});
    CHECK(bad.code == 2);
}
