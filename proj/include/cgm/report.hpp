#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgm/graph.hpp"

namespace cgm {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class MetricId {
    Shd,
    Dshd,
    Hd,
    Mre,
    EditDistance,
    ReversedEdges,
    ShdC,
    Csd,
    F1,
    Tpr,
    Fpr,
    Precision,
    Kd,
    Cbc,
    Sid,
    Ced,
};

std::string_view metric_name(MetricId id);
MetricId metric_from_name(std::string_view name);  // throws on unknown names

/// Comma-separated metric list, e.g. "shd-c,csd,sid,ced".
std::vector<MetricId> parse_metric_list(std::string_view list);
std::vector<MetricId> default_metrics();

/// Lower values win for distances and error rates; higher for the
/// agreement scores (f1, tpr, precision, cbc).
bool lower_is_better(MetricId id);

/// A computed metric: scalar (integer or real), interval (sid over an
/// equivalence class), or not-applicable with a reason.
class MetricValue {
public:
    enum class Kind { Integer, Real, Interval, NotApplicable };

    static MetricValue integer(long v);
    static MetricValue real(double v);
    static MetricValue interval(long lo, long hi);
    static MetricValue not_applicable(std::string reason);

    Kind kind() const { return kind_; }
    long as_integer() const { return integer_; }
    double as_real() const { return real_; }
    long lo() const { return lo_; }
    long hi() const { return hi_; }
    const std::string& reason() const { return reason_; }

    bool is_na() const { return kind_ == Kind::NotApplicable; }
    /// Scalar magnitude used for best-flagging; intervals and n/a are
    /// excluded from comparisons.
    std::optional<double> comparable() const;

    std::string display() const;

private:
    Kind kind_ = Kind::NotApplicable;
    long integer_ = 0;
    double real_ = 0;
    long lo_ = 0, hi_ = 0;
    std::string reason_;
};

struct MetricResult {
    MetricId id;
    MetricValue value;
    double elapsed_ms = 0;
};

struct MetricReport {
    std::string truth_path;
    std::string pred_path;
    int n = 0;
    std::vector<MetricResult> results;
    std::string version{kToolVersion};

    bool any_na() const;
};

enum class OutputFormat { Table, Json, Csv };
OutputFormat format_from_name(std::string_view name);

/// Computes one metric; library preconditions that fail (cyclic input for
/// sid, undirected edges for shd, ...) surface as a not-applicable value
/// carrying the error text, never as an exception.
MetricValue compute_metric(MetricId id, const CausalGraph& truth, const CausalGraph& pred, int jobs);

/// Reorders `pred` to truth's node order. Alignment is by label when both
/// graphs carry explicit labels (sets must match), positional otherwise.
CausalGraph align_nodes(const LoadedGraph& truth, const LoadedGraph& pred);

MetricReport evaluate(const LoadedGraph& truth, const LoadedGraph& pred, const std::vector<MetricId>& metrics,
                      int jobs, std::string truth_path = {}, std::string pred_path = {});

std::string render_report(const MetricReport& report, OutputFormat format);

struct PredictionEntry {
    std::string model;
    std::string path;
};

/// manifest.json shape:
///   {"name": ..., "category": "static" | "multi_time_series" | "event_sequence",
///    "graph": "truth.csv", "predictions": [{"model": ..., "path": ...}, ...]}
/// Prediction paths are resolved relative to the manifest's directory.
struct DatasetManifest {
    std::filesystem::path root;
    std::string name;
    std::string category;
    std::string graph_file;
    std::vector<PredictionEntry> predictions;
};

DatasetManifest load_manifest(const std::filesystem::path& manifest_file);

struct DatasetRow {
    std::string model;
    std::optional<std::string> error;  // row-level failure; other rows still evaluate
    std::vector<MetricResult> results;
};

struct DatasetReport {
    std::string dataset;
    std::string category;
    std::string truth_path;
    int n = 0;
    std::vector<MetricId> metrics;
    std::vector<DatasetRow> rows;  // manifest order
    std::string version{kToolVersion};

    bool any_problem() const;  // any error row or n/a cell
};

/// Evaluates every prediction in the manifest against the dataset's ground
/// truth. Rows may run in parallel (`jobs`); output order and values do not
/// depend on it.
DatasetReport evaluate_dataset(const DatasetManifest& manifest, const std::vector<MetricId>& metrics, int jobs);

/// Table format flags the best scalar value per metric column with '*'.
std::string render_dataset_report(const DatasetReport& report, OutputFormat format);

std::string read_text_file(const std::filesystem::path& path);
LoadedGraph load_graph_file(const std::filesystem::path& path);

}  // namespace cgm
