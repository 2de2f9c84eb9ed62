// End-to-end checks against the built command-line binary: exit-code
// contract, output schemas and determinism. Invoked as: cli_tests <tool>.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "cgm/graph.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;

#define CHECK_MSG(cond, msg)                                                          \
    do {                                                                              \
        if (!(cond)) {                                                                \
            ++g_failures;                                                             \
            std::cerr << "FAILED at " << __LINE__ << ": " << #cond << " -- " << (msg) << "\n"; \
        }                                                                             \
    } while (0)

#define CHECK_CLI(cond) CHECK_MSG(cond, "")

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Env {
    std::string tool;
    fs::path dir;

    explicit Env(std::string tool_path) : tool(std::move(tool_path)) {
        dir = fs::temp_directory_path() / ("cgm-cli-test-" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Env() { fs::remove_all(dir); }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path p = dir / name;
        fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }

    RunResult run(const std::string& args) const {
        const fs::path out_file = dir / "stdout.txt";
        const fs::path err_file = dir / "stderr.txt";
        const std::string cmd =
            "\"" + tool + "\" " + args + " > \"" + out_file.string() + "\" 2> \"" + err_file.string() + "\"";
        const int status = std::system(cmd.c_str());
        RunResult r;
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out_file);
        r.err = slurp(err_file);
        return r;
    }
};

json strip_timing(json doc) {
    doc.erase("elapsed_ms");
    if (doc.contains("rows"))
        for (auto& row : doc["rows"]) row.erase("elapsed_ms");
    return doc;
}

void check_report_schema(const json& doc) {
    CHECK_MSG(doc.contains("truth") && doc["truth"].is_string(), doc.dump());
    CHECK_MSG(doc.contains("pred") && doc["pred"].is_string(), doc.dump());
    CHECK_MSG(doc.contains("n") && doc["n"].is_number_integer(), doc.dump());
    CHECK_MSG(doc.contains("metrics") && doc["metrics"].is_object(), doc.dump());
    CHECK_MSG(doc.contains("elapsed_ms") && doc["elapsed_ms"].is_object(), doc.dump());
    CHECK_MSG(doc.contains("version") && doc["version"].is_string(), doc.dump());
    for (const auto& [name, value] : doc["metrics"].items()) {
        const bool scalar = value.is_number();
        const bool interval = value.is_object() && value.contains("lo") && value.contains("hi");
        const bool na = value.is_object() && value.contains("na") && value["na"].is_string();
        CHECK_MSG(scalar || interval || na, name + ": " + value.dump());
        CHECK_MSG(doc["elapsed_ms"].contains(name), name);
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-tool>\n";
        return 2;
    }
    Env env(argv[1]);

    const auto truth = env.write("truth.csv", cgm::to_csv(fixtures::chain3(), true));
    const auto same = env.write("same.csv", cgm::to_csv(fixtures::chain3(), true));
    const auto dropped = env.write("dropped.csv", cgm::to_csv(fixtures::chain3_drop(), true));
    const auto undirected = env.write("und.csv", cgm::to_csv(fixtures::und3(), true));
    const auto cyclic = env.write("cyclic.csv", "0,1,0\n0,0,1\n1,0,0\n");
    const auto malformed = env.write("malformed.csv", "0,2\n1,0\n");

    // --- eval: success path -------------------------------------------------
    {
        const auto r = env.run("eval --truth " + truth.string() + " --pred " + same.string());
        CHECK_MSG(r.exit_code == 0, r.err);
        CHECK_CLI(r.out.find("shd-c") != std::string::npos);
        CHECK_CLI(r.out.find("ced") != std::string::npos);
    }
    {
        const auto r = env.run("eval --truth " + truth.string() + " --pred " + dropped.string() +
                               " --metrics csd,kd,ced --format csv");
        CHECK_MSG(r.exit_code == 0, r.err);
        CHECK_CLI(r.out.find("csd,1,") != std::string::npos);
        CHECK_CLI(r.out.find("kd,2,") != std::string::npos);
        CHECK_CLI(r.out.find("ced,4,") != std::string::npos);
    }

    // --- eval: JSON schema, intervals ---------------------------------------
    {
        const auto r = env.run("eval --truth " + truth.string() + " --pred " + undirected.string() +
                               " --format json --metrics sid,csd,ced");
        CHECK_MSG(r.exit_code == 0, r.err);
        const auto doc = json::parse(r.out);
        check_report_schema(doc);
        CHECK_CLI(doc["metrics"]["sid"]["lo"] == 0);
        CHECK_CLI(doc["metrics"]["sid"]["hi"] == 6);
    }

    // --- eval: n/a values exit 2 ---------------------------------------------
    {
        const auto r = env.run("eval --truth " + truth.string() + " --pred " + cyclic.string() +
                               " --metrics sid,csd --format json");
        CHECK_MSG(r.exit_code == 2, r.out + r.err);
        const auto doc = json::parse(r.out);
        check_report_schema(doc);
        CHECK_CLI(doc["metrics"]["sid"].contains("na"));
        CHECK_CLI(doc["metrics"]["csd"] == 1);  // only the cycle-closing edge differs
    }

    // --- eval: usage and parse errors exit 1 ----------------------------------
    CHECK_CLI(env.run("eval --truth missing.csv --pred " + same.string()).exit_code == 1);
    CHECK_CLI(env.run("eval --truth " + truth.string() + " --pred " + malformed.string()).exit_code == 1);
    CHECK_CLI(env.run("eval --truth " + truth.string() + " --pred " + same.string() + " --metrics bogus").exit_code == 1);
    CHECK_CLI(env.run("eval --truth " + truth.string()).exit_code == 1);  // missing required flag
    CHECK_CLI(env.run("").exit_code == 1);                                // subcommand required
    CHECK_CLI(env.run("--help").exit_code == 0);

    // --- jobs invariance ------------------------------------------------------
    {
        const auto big_t = env.write("big_t.csv", cgm::to_csv(cgm::random_dag(20, 0.2, 7), true));
        const auto big_p = env.write("big_p.csv", cgm::to_csv(cgm::random_dag(20, 0.2, 8), true));
        const auto base = "eval --truth " + big_t.string() + " --pred " + big_p.string() +
                          " --format json --metrics shd,csd,kd,cbc,sid,ced";
        const auto r1 = env.run(base + " --jobs 1");
        const auto r8 = env.run(base + " --jobs 8");
        CHECK_MSG(r1.exit_code == 0 && r8.exit_code == 0, r1.err + r8.err);
        CHECK_MSG(strip_timing(json::parse(r1.out)) == strip_timing(json::parse(r8.out)), "jobs changed values");
    }

    // --- gen -------------------------------------------------------------------
    {
        const auto a = env.run("gen --nodes 10 --density 0.1 --seed 7 --out " + (env.dir / "g1.csv").string());
        const auto b = env.run("gen --nodes 10 --density 0.1 --seed 7 --out " + (env.dir / "g2.csv").string());
        CHECK_MSG(a.exit_code == 0, a.err);
        CHECK_CLI(a.err.find("4 edges") != std::string::npos);
        CHECK_CLI(b.exit_code == 0);
        CHECK_MSG(slurp(env.dir / "g1.csv") == slurp(env.dir / "g2.csv"), "gen not deterministic");

        const auto zero = env.run("gen --nodes 5 --density 0 --seed 1");
        CHECK_CLI(zero.exit_code == 0);
        CHECK_CLI(zero.err.find("0 edges") != std::string::npos);

        CHECK_CLI(env.run("gen --nodes 1 --density 0.5 --seed 1").exit_code == 1);
    }

    // --- convert -----------------------------------------------------------------
    {
        const auto el = env.run("convert --in " + truth.string() + " --to edgelist --out " +
                                (env.dir / "t.edges").string());
        CHECK_MSG(el.exit_code == 0, el.err);
        const auto back = env.run("convert --in " + (env.dir / "t.edges").string() + " --to csv");
        CHECK_MSG(back.exit_code == 0, back.err);
        CHECK_MSG(cgm::parse_adjacency_csv_auto(back.out).graph.adj() == fixtures::chain3().adj(),
                  "round trip changed the graph");

        const auto cp = env.run("convert --in " + truth.string() + " --to cpdag");
        CHECK_MSG(cp.exit_code == 0, cp.err);
        CHECK_MSG(cgm::parse_adjacency_csv_auto(cp.out).graph.adj() == fixtures::und3().adj(),
                  "chain cpdag should be fully undirected");

        const auto collider_file = env.write("collider.csv", cgm::to_csv(fixtures::collider3(), true));
        const auto cp2 = env.run("convert --in " + collider_file.string() + " --to cpdag");
        CHECK_CLI(cgm::parse_adjacency_csv_auto(cp2.out).graph.adj() == fixtures::collider3().adj());

        CHECK_CLI(env.run("convert --in " + cyclic.string() + " --to cpdag").exit_code == 1);
    }

    // --- bench-ced ------------------------------------------------------------------
    {
        const auto r = env.run("bench-ced --sizes 5,8 --seeds 2 --jobs 1");
        CHECK_MSG(r.exit_code == 0, r.err);
        CHECK_CLI(r.out.rfind("n,seed,edges,ced,elapsed_ms", 0) == 0);
        CHECK_CLI(std::count(r.out.begin(), r.out.end(), '\n') == 5);  // header + 2x2 rows
        CHECK_CLI(r.err.find("log-log slope") != std::string::npos);
    }

    // --- eval-dir ----------------------------------------------------------------------
    {
        env.write("data/truth.csv", cgm::to_csv(fixtures::chain3(), true));
        env.write("data/predictions/perfect.csv", cgm::to_csv(fixtures::chain3(), true));
        env.write("data/predictions/dropped.csv", cgm::to_csv(fixtures::chain3_drop(), true));
        env.write("data/predictions/broken.csv", "0,2\n1,0\n");
        env.write("data/manifest.json",
                  R"({"name":"demo","category":"static","graph":"truth.csv","predictions":[
                      {"model":"perfect","path":"predictions/perfect.csv"},
                      {"model":"dropped","path":"predictions/dropped.csv"},
                      {"model":"broken","path":"predictions/broken.csv"}]})");

        const auto r = env.run("eval-dir --dataset " + (env.dir / "data").string() + " --metrics csd,ced,f1");
        CHECK_MSG(r.exit_code == 2, r.out + r.err);  // one row fails to parse
        CHECK_CLI(r.out.find("perfect") != std::string::npos);
        CHECK_CLI(r.out.find("error:") != std::string::npos);
        CHECK_CLI(r.out.find("0 *") != std::string::npos);  // best flags on the identical row

        const auto j1 = env.run("eval-dir --dataset " + (env.dir / "data").string() +
                                " --metrics csd,ced --format json --jobs 1");
        const auto j8 = env.run("eval-dir --dataset " + (env.dir / "data").string() +
                                " --metrics csd,ced --format json --jobs 8");
        CHECK_CLI(strip_timing(json::parse(j1.out)) == strip_timing(json::parse(j8.out)));

        // Report can land in a file.
        const auto with_out = env.run("eval-dir --dataset " + (env.dir / "data").string() +
                                      " --metrics csd --format csv --out " + (env.dir / "report.csv").string());
        CHECK_CLI(with_out.exit_code == 2);
        CHECK_CLI(slurp(env.dir / "report.csv").rfind("model,csd", 0) == 0);

        // All-good dataset exits 0.
        env.write("ok/truth.csv", cgm::to_csv(fixtures::chain3(), true));
        env.write("ok/p.csv", cgm::to_csv(fixtures::chain3(), true));
        env.write("ok/manifest.json",
                  R"({"name":"ok","category":"static","graph":"truth.csv","predictions":[{"model":"p","path":"p.csv"}]})");
        CHECK_CLI(env.run("eval-dir --dataset " + (env.dir / "ok").string() + " --metrics csd,ced").exit_code == 0);

        // Empty prediction list: header only, exit 0.
        env.write("empty/truth.csv", cgm::to_csv(fixtures::chain3(), true));
        env.write("empty/manifest.json",
                  R"({"name":"empty","category":"static","graph":"truth.csv","predictions":[]})");
        const auto empty = env.run("eval-dir --dataset " + (env.dir / "empty").string());
        CHECK_CLI(empty.exit_code == 0);
        CHECK_CLI(empty.out.find("model") != std::string::npos);

        CHECK_CLI(env.run("eval-dir --dataset " + (env.dir / "nowhere").string()).exit_code == 1);
    }

    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << g_failures << " check(s) failed\n";
    return 1;
}
