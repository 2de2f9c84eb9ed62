// Command-line front end: evaluates predicted causal graphs against a ground
// truth, generates random DAGs, converts between graph file formats and runs
// the effect-distance scaling benchmark.
//
// Exit codes: 0 success, 1 usage/parse error, 2 report contains n/a values
// or row-level errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cgm/bench.hpp"
#include "cgm/cpdag.hpp"
#include "cgm/graph.hpp"
#include "cgm/random_dag.hpp"
#include "cgm/report.hpp"

namespace {

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << content;
}

struct EvalArgs {
    std::string truth, pred, metrics = "shd-c,csd,sid,ced", format = "table";
    int jobs = default_jobs();
};

int run_eval(const EvalArgs& args) {
    const auto metrics = cgm::parse_metric_list(args.metrics);
    const auto format = cgm::format_from_name(args.format);
    const auto truth = cgm::load_graph_file(args.truth);
    const auto pred = cgm::load_graph_file(args.pred);
    const auto report = cgm::evaluate(truth, pred, metrics, args.jobs, args.truth, args.pred);
    std::cout << cgm::render_report(report, format);
    return report.any_na() ? 2 : 0;
}

struct EvalDirArgs {
    std::string dataset, metrics = "shd-c,csd,sid,ced", format = "table", out;
    int jobs = default_jobs();
};

int run_eval_dir(const EvalDirArgs& args) {
    const auto metrics = cgm::parse_metric_list(args.metrics);
    const auto format = cgm::format_from_name(args.format);
    const auto manifest = cgm::load_manifest(std::filesystem::path(args.dataset) / "manifest.json");
    const auto report = cgm::evaluate_dataset(manifest, metrics, args.jobs);
    write_output(cgm::render_dataset_report(report, format), args.out);
    return report.any_problem() ? 2 : 0;
}

struct GenArgs {
    int nodes = 0;
    double density = 0.1;
    std::uint64_t seed = 0;
    std::string out, format = "csv";
};

int run_gen(const GenArgs& args) {
    const auto g = cgm::random_dag(args.nodes, args.density, args.seed);
    std::string content;
    if (args.format == "csv")
        content = cgm::to_csv(g, /*with_header=*/true);
    else if (args.format == "edgelist")
        content = cgm::to_edge_list(g);
    else
        throw std::invalid_argument("unknown gen format '" + args.format + "'");
    write_output(content, args.out);
    std::fprintf(stderr, "%ld edges\n", g.entry_count());
    return 0;
}

struct BenchArgs {
    std::string sizes = "25,50,100,200", out;
    double density = 0.1;
    int seeds = 5;
    int jobs = default_jobs();
};

int run_bench(const BenchArgs& args) {
    std::vector<int> sizes;
    std::stringstream ss(args.sizes);
    std::string token;
    while (std::getline(ss, token, ',')) sizes.push_back(std::stoi(token));
    if (sizes.empty()) throw std::invalid_argument("bench-ced: no sizes given");

    const auto result = cgm::bench_ced(sizes, args.density, args.seeds, args.jobs);
    write_output(cgm::bench_csv(result), args.out);
    for (auto [n, ms] : result.median_ms) std::fprintf(stderr, "n=%d median %.3f ms\n", n, ms);
    std::fprintf(stderr, "log-log slope: %.3f\n", result.loglog_slope);
    return 0;
}

struct ConvertArgs {
    std::string in, to, out;
};

int run_convert(const ConvertArgs& args) {
    const auto loaded = cgm::load_graph_file(args.in);
    std::string content;
    if (args.to == "csv") {
        content = cgm::to_csv(loaded.graph, loaded.labeled);
    } else if (args.to == "edgelist") {
        content = cgm::to_edge_list(loaded.graph);
    } else if (args.to == "cpdag") {
        const auto converted = cgm::dag_to_cpdag(loaded.graph);
        content = cgm::to_csv(converted, loaded.labeled);
    } else {
        throw std::invalid_argument("unknown convert target '" + args.to + "'");
    }
    write_output(content, args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal graph comparison metrics"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "compare one predicted graph against a ground truth");
    eval->add_option("--truth", eval_args.truth, "ground-truth graph file")->required();
    eval->add_option("--pred", eval_args.pred, "predicted graph file")->required();
    eval->add_option("--metrics", eval_args.metrics, "comma-separated metric list");
    eval->add_option("--format", eval_args.format, "table | json | csv");
    eval->add_option("--jobs", eval_args.jobs, "worker threads");

    EvalDirArgs dir_args;
    auto* eval_dir = app.add_subcommand("eval-dir", "evaluate every prediction of a dataset directory");
    eval_dir->add_option("--dataset", dir_args.dataset, "directory containing manifest.json")->required();
    eval_dir->add_option("--metrics", dir_args.metrics, "comma-separated metric list");
    eval_dir->add_option("--format", dir_args.format, "table | json | csv");
    eval_dir->add_option("--out", dir_args.out, "write the report to this file");
    eval_dir->add_option("--jobs", dir_args.jobs, "worker threads");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a random DAG");
    gen->add_option("--nodes", gen_args.nodes, "node count")->required();
    gen->add_option("--density", gen_args.density, "fraction of the n*(n-1)/2 possible edges");
    gen->add_option("--seed", gen_args.seed, "RNG seed");
    gen->add_option("--out", gen_args.out, "output file (stdout otherwise)");
    gen->add_option("--format", gen_args.format, "csv | edgelist");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench-ced", "time ced on random graph pairs of growing size");
    bench->add_option("--sizes", bench_args.sizes, "comma-separated node counts");
    bench->add_option("--density", bench_args.density, "edge density");
    bench->add_option("--seeds", bench_args.seeds, "seeds per size");
    bench->add_option("--out", bench_args.out, "write the timing CSV to this file");
    bench->add_option("--jobs", bench_args.jobs, "worker threads");

    ConvertArgs convert_args;
    auto* convert = app.add_subcommand("convert", "convert between graph representations");
    convert->add_option("--in", convert_args.in, "input graph file")->required();
    convert->add_option("--to", convert_args.to, "csv | edgelist | cpdag")->required();
    convert->add_option("--out", convert_args.out, "output file (stdout otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*eval) return run_eval(eval_args);
        if (*eval_dir) return run_eval_dir(dir_args);
        if (*gen) return run_gen(gen_args);
        if (*bench) return run_bench(bench_args);
        if (*convert) return run_convert(convert_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
