#include "cgm/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cgm/effect_metrics.hpp"
#include "cgm/structure_metrics.hpp"

namespace cgm {

using json = nlohmann::ordered_json;

namespace {

struct MetricInfo {
    MetricId id;
    std::string_view name;
    bool lower_better;
};

constexpr MetricInfo kMetrics[] = {
    {MetricId::Shd, "shd", true},
    {MetricId::Dshd, "dshd", true},
    {MetricId::Hd, "hd", true},
    {MetricId::Mre, "mre", true},
    {MetricId::EditDistance, "edit-distance", true},
    {MetricId::ReversedEdges, "reversed-edges", true},
    {MetricId::ShdC, "shd-c", true},
    {MetricId::Csd, "csd", true},
    {MetricId::F1, "f1", false},
    {MetricId::Tpr, "tpr", false},
    {MetricId::Fpr, "fpr", true},
    {MetricId::Precision, "precision", false},
    {MetricId::Kd, "kd", true},
    {MetricId::Cbc, "cbc", false},
    {MetricId::Sid, "sid", true},
    {MetricId::Ced, "ced", true},
};

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string_view metric_name(MetricId id) {
    for (const auto& m : kMetrics)
        if (m.id == id) return m.name;
    return "?";
}

MetricId metric_from_name(std::string_view name) {
    for (const auto& m : kMetrics)
        if (m.name == name) return m.id;
    throw std::invalid_argument("unknown metric name '" + std::string(name) + "'");
}

bool lower_is_better(MetricId id) {
    for (const auto& m : kMetrics)
        if (m.id == id) return m.lower_better;
    return true;
}

std::vector<MetricId> parse_metric_list(std::string_view list) {
    std::vector<MetricId> out;
    std::string token;
    std::stringstream ss{std::string(list)};
    while (std::getline(ss, token, ',')) {
        const auto a = token.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const auto b = token.find_last_not_of(" \t");
        out.push_back(metric_from_name(token.substr(a, b - a + 1)));
    }
    if (out.empty()) throw std::invalid_argument("empty metric list");
    return out;
}

std::vector<MetricId> default_metrics() {
    return {MetricId::ShdC, MetricId::Csd, MetricId::Sid, MetricId::Ced};
}

MetricValue MetricValue::integer(long v) {
    MetricValue m;
    m.kind_ = Kind::Integer;
    m.integer_ = v;
    return m;
}

MetricValue MetricValue::real(double v) {
    MetricValue m;
    m.kind_ = Kind::Real;
    m.real_ = v;
    return m;
}

MetricValue MetricValue::interval(long lo, long hi) {
    MetricValue m;
    m.kind_ = Kind::Interval;
    m.lo_ = lo;
    m.hi_ = hi;
    return m;
}

MetricValue MetricValue::not_applicable(std::string reason) {
    MetricValue m;
    m.kind_ = Kind::NotApplicable;
    m.reason_ = std::move(reason);
    return m;
}

std::optional<double> MetricValue::comparable() const {
    switch (kind_) {
        case Kind::Integer: return static_cast<double>(integer_);
        case Kind::Real: return real_;
        default: return std::nullopt;
    }
}

std::string MetricValue::display() const {
    switch (kind_) {
        case Kind::Integer: return std::to_string(integer_);
        case Kind::Real: return format_real(real_);
        case Kind::Interval: return "[" + std::to_string(lo_) + ", " + std::to_string(hi_) + "]";
        case Kind::NotApplicable: return "n/a: " + reason_;
    }
    return "?";
}

bool MetricReport::any_na() const {
    return std::any_of(results.begin(), results.end(), [](const MetricResult& r) { return r.value.is_na(); });
}

OutputFormat format_from_name(std::string_view name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

MetricValue compute_metric(MetricId id, const CausalGraph& truth, const CausalGraph& pred, int jobs) {
    try {
        switch (id) {
            case MetricId::Shd: return MetricValue::integer(shd(truth, pred));
            case MetricId::Dshd: return MetricValue::integer(dshd(truth, pred));
            case MetricId::Hd: {
                const auto c = edit_counts(truth, pred);
                return MetricValue::integer(c.fa + c.fd + 2 * c.fr);
            }
            case MetricId::Mre: {
                const auto w = se_weights(SePreset::Mre, truth.node_count());
                return MetricValue::real(se_like(truth, pred, w.alpha, w.beta, w.gamma));
            }
            case MetricId::EditDistance: {
                const auto c = edit_counts(truth, pred);
                return MetricValue::integer(c.fa + c.fd + c.fr);
            }
            case MetricId::ReversedEdges: return MetricValue::integer(edit_counts(truth, pred).fr);
            case MetricId::ShdC: return MetricValue::integer(shd_c(truth, pred));
            case MetricId::Csd: return MetricValue::integer(csd(truth, pred));
            case MetricId::F1: return MetricValue::real(classification_metrics(truth, pred).f1());
            case MetricId::Tpr: return MetricValue::real(classification_metrics(truth, pred).tpr());
            case MetricId::Fpr: return MetricValue::real(classification_metrics(truth, pred).fpr());
            case MetricId::Precision: return MetricValue::real(classification_metrics(truth, pred).precision());
            case MetricId::Kd: return MetricValue::integer(kd(truth, pred));
            case MetricId::Cbc: return MetricValue::real(cbc(truth, pred));
            case MetricId::Sid:
                if (pred.kind() == GraphKind::Cpdag) {
                    const auto r = sid_range(truth, pred, 16, jobs);
                    return MetricValue::interval(r.lo, r.hi);
                }
                return MetricValue::integer(sid(truth, pred, jobs));
            case MetricId::Ced: return MetricValue::integer(ced(truth, pred, jobs));
        }
        throw std::invalid_argument("unknown metric id");
    } catch (const std::invalid_argument& e) {
        return MetricValue::not_applicable(e.what());
    }
}

CausalGraph align_nodes(const LoadedGraph& truth, const LoadedGraph& pred) {
    const CausalGraph& t = truth.graph;
    const CausalGraph& p = pred.graph;
    if (t.node_count() != p.node_count())
        throw std::invalid_argument("node mismatch: truth has " + std::to_string(t.node_count()) +
                                    " nodes, prediction has " + std::to_string(p.node_count()));
    if (!truth.labeled || !pred.labeled) return p;  // positional alignment

    std::vector<int> perm(t.node_count());
    for (int k = 0; k < t.node_count(); ++k) {
        try {
            perm[k] = p.index_of(t.labels()[k]);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("node mismatch: prediction is missing node '" + t.labels()[k] + "'");
        }
    }
    return p.permuted(perm);
}

MetricReport evaluate(const LoadedGraph& truth, const LoadedGraph& pred, const std::vector<MetricId>& metrics,
                      int jobs, std::string truth_path, std::string pred_path) {
    const CausalGraph aligned = align_nodes(truth, pred);

    MetricReport report;
    report.truth_path = std::move(truth_path);
    report.pred_path = std::move(pred_path);
    report.n = truth.graph.node_count();
    for (MetricId id : metrics) {
        const auto start = std::chrono::steady_clock::now();
        MetricValue value = compute_metric(id, truth.graph, aligned, jobs);
        const auto stop = std::chrono::steady_clock::now();
        report.results.push_back({id, std::move(value), std::chrono::duration<double, std::milli>(stop - start).count()});
    }
    return report;
}

namespace {

json value_to_json(const MetricValue& v) {
    switch (v.kind()) {
        case MetricValue::Kind::Integer: return v.as_integer();
        case MetricValue::Kind::Real: return v.as_real();
        case MetricValue::Kind::Interval: return json{{"lo", v.lo()}, {"hi", v.hi()}};
        case MetricValue::Kind::NotApplicable: return json{{"na", v.reason()}};
    }
    return nullptr;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(s.size() < width ? width - s.size() : 0, ' ');
}

std::string render_cells(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (widths.size() <= c) widths.resize(c + 1, 0);
            widths[c] = std::max(widths[c], row[c].size());
        }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += "  ";
            out += c + 1 == row.size() ? row[c] : pad(row[c], widths[c]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render_report(const MetricReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: {
            json metrics = json::object();
            json elapsed = json::object();
            for (const auto& r : report.results) {
                metrics[std::string(metric_name(r.id))] = value_to_json(r.value);
                elapsed[std::string(metric_name(r.id))] = r.elapsed_ms;
            }
            json doc{{"truth", report.truth_path}, {"pred", report.pred_path},   {"n", report.n},
                     {"metrics", metrics},         {"elapsed_ms", elapsed},      {"version", report.version}};
            return doc.dump(2) + "\n";
        }
        case OutputFormat::Csv: {
            std::string out = "metric,value,elapsed_ms\n";
            for (const auto& r : report.results)
                out += std::string(metric_name(r.id)) + "," + csv_escape(r.value.display()) + "," +
                       format_real(r.elapsed_ms) + "\n";
            return out;
        }
        case OutputFormat::Table: {
            std::vector<std::vector<std::string>> rows;
            rows.push_back({"metric", "value", "elapsed_ms"});
            for (const auto& r : report.results)
                rows.push_back({std::string(metric_name(r.id)), r.value.display(), format_real(r.elapsed_ms)});
            return render_cells(rows);
        }
    }
    return {};
}

DatasetManifest load_manifest(const std::filesystem::path& manifest_file) {
    json doc;
    try {
        doc = json::parse(read_text_file(manifest_file));
    } catch (const json::parse_error& e) {
        throw ParseError("manifest " + manifest_file.string() + ": " + e.what());
    }

    DatasetManifest m;
    m.root = manifest_file.parent_path();
    try {
        m.name = doc.at("name").get<std::string>();
        m.category = doc.at("category").get<std::string>();
        m.graph_file = doc.at("graph").get<std::string>();
        for (const auto& entry : doc.at("predictions"))
            m.predictions.push_back({entry.at("model").get<std::string>(), entry.at("path").get<std::string>()});
    } catch (const json::exception& e) {
        throw ParseError("manifest " + manifest_file.string() + ": " + e.what());
    }
    if (m.category != "static" && m.category != "multi_time_series" && m.category != "event_sequence")
        throw ParseError("manifest " + manifest_file.string() + ": unknown category '" + m.category + "'");
    return m;
}

bool DatasetReport::any_problem() const {
    for (const auto& row : rows) {
        if (row.error) return true;
        for (const auto& r : row.results)
            if (r.value.is_na()) return true;
    }
    return false;
}

DatasetReport evaluate_dataset(const DatasetManifest& manifest, const std::vector<MetricId>& metrics, int jobs) {
    DatasetReport report;
    report.dataset = manifest.name;
    report.category = manifest.category;
    report.truth_path = (manifest.root / manifest.graph_file).string();
    report.metrics = metrics;

    const LoadedGraph truth = load_graph_file(manifest.root / manifest.graph_file);
    report.n = truth.graph.node_count();

    auto evaluate_row = [&](const PredictionEntry& entry) {
        DatasetRow row;
        row.model = entry.model;
        try {
            const LoadedGraph pred = load_graph_file(manifest.root / entry.path);
            row.results = evaluate(truth, pred, metrics, 1, report.truth_path, entry.path).results;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (const auto& entry : manifest.predictions) report.rows.push_back(evaluate_row(entry));
        return report;
    }
    // Row-level parallelism; rows land in manifest order regardless of
    // completion order.
    std::vector<std::future<DatasetRow>> futures;
    futures.reserve(manifest.predictions.size());
    for (const auto& entry : manifest.predictions)
        futures.push_back(std::async(std::launch::async, evaluate_row, entry));
    for (auto& f : futures) report.rows.push_back(f.get());
    return report;
}

std::string render_dataset_report(const DatasetReport& report, OutputFormat format) {
    // Best scalar per metric column (intervals and n/a do not compete).
    std::vector<std::optional<double>> best(report.metrics.size());
    for (std::size_t c = 0; c < report.metrics.size(); ++c) {
        for (const auto& row : report.rows) {
            if (row.error) continue;
            const auto v = row.results[c].value.comparable();
            if (!v) continue;
            if (!best[c] || (lower_is_better(report.metrics[c]) ? *v < *best[c] : *v > *best[c])) best[c] = *v;
        }
    }
    auto is_best = [&](std::size_t c, const MetricValue& v) {
        const auto x = v.comparable();
        return x && best[c] && *x == *best[c];
    };

    switch (format) {
        case OutputFormat::Json: {
            json rows = json::array();
            for (const auto& row : report.rows) {
                if (row.error) {
                    rows.push_back(json{{"model", row.model}, {"error", *row.error}});
                    continue;
                }
                json metrics = json::object();
                json elapsed = json::object();
                for (const auto& r : row.results) {
                    metrics[std::string(metric_name(r.id))] = value_to_json(r.value);
                    elapsed[std::string(metric_name(r.id))] = r.elapsed_ms;
                }
                rows.push_back(json{{"model", row.model}, {"metrics", metrics}, {"elapsed_ms", elapsed}});
            }
            json names = json::array();
            for (MetricId id : report.metrics) names.push_back(std::string(metric_name(id)));
            json doc{{"dataset", report.dataset}, {"category", report.category}, {"truth", report.truth_path},
                     {"n", report.n},             {"metrics", names},            {"rows", rows},
                     {"version", report.version}};
            return doc.dump(2) + "\n";
        }
        case OutputFormat::Csv: {
            std::string out = "model";
            for (MetricId id : report.metrics) out += "," + std::string(metric_name(id));
            out += ",error\n";
            for (const auto& row : report.rows) {
                out += csv_escape(row.model);
                if (row.error) {
                    out += std::string(report.metrics.size(), ',');
                    out += "," + csv_escape(*row.error);
                } else {
                    for (const auto& r : row.results) out += "," + csv_escape(r.value.display());
                    out += ",";
                }
                out += '\n';
            }
            return out;
        }
        case OutputFormat::Table: {
            std::vector<std::vector<std::string>> cells;
            std::vector<std::string> header{"model"};
            for (MetricId id : report.metrics) header.push_back(std::string(metric_name(id)));
            cells.push_back(header);
            for (const auto& row : report.rows) {
                std::vector<std::string> line{row.model};
                if (row.error) {
                    line.push_back("error: " + *row.error);
                } else {
                    for (std::size_t c = 0; c < row.results.size(); ++c) {
                        std::string cell = row.results[c].value.display();
                        if (is_best(c, row.results[c].value)) cell += " *";
                        line.push_back(std::move(cell));
                    }
                }
                cells.push_back(std::move(line));
            }
            return render_cells(cells);
        }
    }
    return {};
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LoadedGraph load_graph_file(const std::filesystem::path& path) {
    try {
        return parse_graph_auto(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace cgm
