#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mfiv/grid.hpp"
#include "mfiv/simulate.hpp"

namespace mfiv {

/// Shortest decimal representation that round-trips a 64-bit float.
std::string format_double(double x);

/// Write `content` to `path` atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

enum class MissingPolicy { Reject, DropRow };

struct SchemaConfig {
    std::string date_col = "date";
    std::string y_col = "y";
    std::string w_col = "w";
    std::string z_prefix = "z_";
    bool log_y = false;
    bool log_z = false;
    MissingPolicy missing = MissingPolicy::Reject;
    double grid_a = 0.0;
    double grid_b = 24.0;
};

struct EmpiricalDataset {
    std::vector<std::string> dates;
    std::vector<double> y;
    std::vector<double> w;
    Eigen::MatrixXd z;  // T x m
    SamplingGrid grid;
    int dropped_rows = 0;
};

/// Load a mixed-frequency CSV with columns date, y, w, z_1..z_m (names
/// overridable through the schema). Malformed cells, ragged rows, and
/// non-positive values under a log transform are reported with their
/// row/column coordinates.
EmpiricalDataset load_csv(const std::string& path, const SchemaConfig& schema);

/// Export a simulated sample in the empirical CSV schema (lossless at the
/// printed precision, so it round-trips through load_csv).
void export_sample_csv(const std::string& path, const SimulatedSample& sample);

/// Convert a loaded dataset back to the sample layout used by the estimator.
SimulatedSample dataset_to_sample(const EmpiricalDataset& data);

}  // namespace mfiv
