#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cgm/report.hpp"
#include "fixtures.hpp"

using namespace cgm;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cgm-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
};

LoadedGraph loaded(const CausalGraph& g) { return {g, true}; }

}  // namespace

TEST_CASE("metric list parsing") {
    const auto ids = parse_metric_list("shd-c, csd,sid,ced");
    CHECK(ids == std::vector<MetricId>{MetricId::ShdC, MetricId::Csd, MetricId::Sid, MetricId::Ced});
    CHECK(parse_metric_list("f1") == std::vector<MetricId>{MetricId::F1});
    CHECK_THROWS_AS(parse_metric_list("nope"), std::invalid_argument);
    CHECK_THROWS_AS(parse_metric_list(""), std::invalid_argument);
}

TEST_CASE("every advertised metric name resolves") {
    for (const char* name : {"shd", "dshd", "hd", "mre", "edit-distance", "reversed-edges", "shd-c", "csd", "f1",
                             "tpr", "fpr", "precision", "kd", "cbc", "sid", "ced"}) {
        CHECK(metric_name(metric_from_name(name)) == name);
    }
}

TEST_CASE("metric value display") {
    CHECK(MetricValue::integer(7).display() == "7");
    CHECK(MetricValue::real(0.75).display() == "0.75");
    CHECK(MetricValue::interval(0, 5).display() == "[0, 5]");
    CHECK(MetricValue::not_applicable("why").display() == "n/a: why");
    CHECK_FALSE(MetricValue::interval(0, 5).comparable().has_value());
}

TEST_CASE("evaluate: identical graphs zero out the distances") {
    const auto report =
        evaluate(loaded(fixtures::chain3()), loaded(fixtures::chain3()),
                 parse_metric_list("shd,csd,kd,ced,sid,shd-c,f1"), 1, "t", "p");
    CHECK(report.n == 3);
    CHECK_FALSE(report.any_na());
    for (const auto& r : report.results) {
        if (r.id == MetricId::F1)
            CHECK(r.value.as_real() == doctest::Approx(1.0));
        else
            CHECK(r.value.as_integer() == 0);
    }
}

TEST_CASE("evaluate: chain vs dropped edge values") {
    const auto report = evaluate(loaded(fixtures::chain3()), loaded(fixtures::chain3_drop()),
                                 parse_metric_list("csd,kd,ced"), 1);
    CHECK(report.results[0].value.as_integer() == 1);
    CHECK(report.results[1].value.as_integer() == 2);
    CHECK(report.results[2].value.as_integer() == 4);
}

TEST_CASE("evaluate: sid turns into an interval on CPDAG predictions") {
    const auto report =
        evaluate(loaded(fixtures::chain3()), loaded(fixtures::und3()), parse_metric_list("sid"), 1);
    REQUIRE(report.results[0].value.kind() == MetricValue::Kind::Interval);
    CHECK(report.results[0].value.lo() == 0);
    CHECK(report.results[0].value.hi() == 6);
}

TEST_CASE("evaluate: inapplicable metrics become n/a, not errors") {
    const auto cyclic = parse_adjacency_csv("0,1,0\n0,0,1\n1,0,0", false);
    const auto report = evaluate(loaded(fixtures::chain3()), {cyclic, false},
                                 parse_metric_list("sid,shd,csd,kd"), 1);
    CHECK(report.results[0].value.is_na());   // sid on a cyclic prediction
    CHECK(report.results[1].value.is_na());   // shd likewise
    CHECK_FALSE(report.results[2].value.is_na());  // csd is total
    CHECK_FALSE(report.results[3].value.is_na());  // kd is total
    CHECK(report.any_na());
}

TEST_CASE("label alignment permutes the prediction") {
    const auto truth = parse_adjacency_csv("a,b,c\n0,1,0\n0,0,1\n0,0,0", true);
    // Same graph, nodes listed in a different order.
    const auto pred = parse_adjacency_csv("c,a,b\n0,0,0\n0,0,1\n1,0,0", true);
    const auto report = evaluate({truth, true}, {pred, true}, parse_metric_list("csd"), 1);
    CHECK(report.results[0].value.as_integer() == 0);
}

TEST_CASE("label alignment requires matching label sets") {
    const auto truth = parse_adjacency_csv("a,b\n0,1\n0,0", true);
    const auto pred = parse_adjacency_csv("a,x\n0,1\n0,0", true);
    CHECK_THROWS_AS(evaluate({truth, true}, {pred, true}, default_metrics(), 1), std::invalid_argument);
}

TEST_CASE("positional alignment requires matching node counts") {
    CHECK_THROWS_AS(
        evaluate(loaded(fixtures::chain3()), {fixtures::edgeless(4), false}, default_metrics(), 1),
        std::invalid_argument);
}

TEST_CASE("report rendering carries the same values everywhere") {
    const auto report = evaluate(loaded(fixtures::chain3()), loaded(fixtures::und3()),
                                 parse_metric_list("csd,sid,ced"), 1, "truth.csv", "pred.csv");

    const auto table = render_report(report, OutputFormat::Table);
    CHECK(table.find("csd") != std::string::npos);
    CHECK(table.find("[0, 6]") != std::string::npos);

    const auto csv = render_report(report, OutputFormat::Csv);
    CHECK(csv.find("metric,value,elapsed_ms") == 0);
    CHECK(csv.find("\"[0, 6]\"") != std::string::npos);

    const auto doc = json::parse(render_report(report, OutputFormat::Json));
    CHECK(doc["truth"] == "truth.csv");
    CHECK(doc["n"] == 3);
    CHECK(doc["metrics"]["csd"] == 2);
    CHECK(doc["metrics"]["sid"]["lo"] == 0);
    CHECK(doc["metrics"]["sid"]["hi"] == 6);
    CHECK(doc["version"] == std::string(kToolVersion));
    CHECK(doc["elapsed_ms"].contains("ced"));
}

TEST_CASE("manifest parsing") {
    TempDir dir;
    dir.write("manifest.json", R"({"name":"demo","category":"static","graph":"truth.csv",
        "predictions":[{"model":"m1","path":"p1.csv"}]})");
    const auto m = load_manifest(dir.path / "manifest.json");
    CHECK(m.name == "demo");
    CHECK(m.category == "static");
    CHECK(m.predictions.size() == 1);

    dir.write("bad.json", R"({"name":"demo","category":"weird","graph":"g.csv","predictions":[]})");
    CHECK_THROWS_AS(load_manifest(dir.path / "bad.json"), ParseError);
    dir.write("broken.json", "{");
    CHECK_THROWS_AS(load_manifest(dir.path / "broken.json"), ParseError);
    CHECK_THROWS_AS(load_manifest(dir.path / "missing.json"), ParseError);
}

TEST_CASE("dataset evaluation: best flags, error rows, empty sets") {
    TempDir dir;
    dir.write("truth.csv", to_csv(fixtures::chain3(), true));
    dir.write("predictions/perfect.csv", to_csv(fixtures::chain3(), true));
    dir.write("predictions/dropped.csv", to_csv(fixtures::chain3_drop(), true));
    dir.write("predictions/broken.csv", "0,2\n1,0");
    dir.write("manifest.json", R"({"name":"demo","category":"static","graph":"truth.csv","predictions":[
        {"model":"perfect","path":"predictions/perfect.csv"},
        {"model":"dropped","path":"predictions/dropped.csv"},
        {"model":"broken","path":"predictions/broken.csv"}]})");

    const auto manifest = load_manifest(dir.path / "manifest.json");
    const auto report = evaluate_dataset(manifest, parse_metric_list("csd,ced,f1"), 1);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].model == "perfect");
    CHECK_FALSE(report.rows[0].error);
    CHECK(report.rows[1].results[0].value.as_integer() == 1);
    CHECK(report.rows[2].error.has_value());
    CHECK(report.any_problem());

    const auto table = render_dataset_report(report, OutputFormat::Table);
    // The identical prediction wins every column.
    CHECK(table.find("0 *") != std::string::npos);
    CHECK(table.find("1 *") != std::string::npos);  // f1 = 1 flagged as best
    CHECK(table.find("error:") != std::string::npos);

    const auto doc = json::parse(render_dataset_report(report, OutputFormat::Json));
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["rows"][2].contains("error"));
    CHECK(doc["rows"][0]["metrics"]["csd"] == 0);

    // Parallel rows produce the same values in the same order.
    const auto parallel = evaluate_dataset(manifest, parse_metric_list("csd,ced,f1"), 4);
    REQUIRE(parallel.rows.size() == report.rows.size());
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        CHECK(parallel.rows[r].model == report.rows[r].model);
        CHECK(parallel.rows[r].error == report.rows[r].error);
        for (std::size_t c = 0; c < report.rows[r].results.size(); ++c)
            CHECK(parallel.rows[r].results[c].value.display() == report.rows[r].results[c].value.display());
    }
}

TEST_CASE("dataset evaluation: empty prediction list") {
    TempDir dir;
    dir.write("truth.csv", to_csv(fixtures::chain3(), true));
    dir.write("manifest.json",
              R"({"name":"demo","category":"static","graph":"truth.csv","predictions":[]})");
    const auto report = evaluate_dataset(load_manifest(dir.path / "manifest.json"), default_metrics(), 1);
    CHECK(report.rows.empty());
    CHECK_FALSE(report.any_problem());
    const auto table = render_dataset_report(report, OutputFormat::Table);
    CHECK(table.find("model") != std::string::npos);  // header only
}

TEST_CASE("prediction with mismatched labels is a row-level error") {
    TempDir dir;
    dir.write("truth.csv", "a,b\n0,1\n0,0");
    dir.write("other.csv", "a,z\n0,1\n0,0");
    dir.write("manifest.json", R"({"name":"demo","category":"static","graph":"truth.csv","predictions":[
        {"model":"other","path":"other.csv"}]})");
    const auto report = evaluate_dataset(load_manifest(dir.path / "manifest.json"), default_metrics(), 1);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].error.has_value());
}
