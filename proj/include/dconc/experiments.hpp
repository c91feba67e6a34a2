#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dconc/bounds.hpp"
#include "dconc/roof.hpp"
#include "dconc/serialization.hpp"

namespace dconc {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kDeviation = 1;
inline constexpr int kInputError = 2;
} // namespace exit_code

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::size_t dA = 2;
    std::size_t dB = 2;
    std::size_t samples = 100;
    std::uint64_t seed = 42;
    std::string output_path; // empty writes to the console stream
    OutputFormat format = OutputFormat::Csv;
    std::size_t threads = 1;

    /// Throws ConfigError on samples < 1 or a dimension < 2.
    void validate() const;
};

/// Runs body(i) for i in [0, count) on up to `threads` workers. Callers write
/// results into slots indexed by i, so output order never depends on scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

/// Worker count from DCONC_THREADS, defaulting to the hardware concurrency.
std::size_t threads_from_environment();

// --- example1 ---------------------------------------------------------------

inline constexpr double kExample1F = -0.5;
inline constexpr double kExample1Tolerance = 5e-4;

struct Example1Values {
    double f;
    double c2;         // Wootters concurrence squared
    double d_lower_x4; // 4 [det(I - rho_A) - det(I - rho)]
    double mb_lower;   // 2 [Tr rho^2 - Tr rho_A^2]
};

Example1Values example1_values(double f = kExample1F);

/// Prints the Werner N = 2 table. At the reference parameter the values are
/// compared to (0.25, 0.2297, 0.1667) and a deviation returns kDeviation.
int cmd_example1(double f, std::ostream& out);

// --- bounds-scan ------------------------------------------------------------

inline constexpr const char* kCsvSchema = "v1";

struct ScanRow {
    std::size_t seed_index;
    std::string family; // "ginibre" or "separable"
    std::size_t dA;
    std::size_t dB;
    std::size_t rank;
    double purity;
    BoundReport bounds;
    NielsenKempeResult nk;
    std::optional<double> wootters_c;
    std::optional<double> roof_d;
};

struct ScanSummary {
    std::size_t rows = 0;
    std::size_t witness_certified = 0;
    std::size_t nk_failures = 0;
    std::size_t two_qubit_rows = 0;
    // 4 d_upper against purity_upper_c2, two-qubit rows only
    std::size_t upper_tighter = 0;
    std::size_t upper_equal = 0;
    std::size_t upper_looser = 0;
};

/// One sample: even indices draw a Ginibre state of random rank, odd indices a
/// random separable state.
ScanRow scan_sample(const ExperimentConfig& cfg, std::size_t index);
std::vector<ScanRow> run_bounds_scan(const ExperimentConfig& cfg);
ScanSummary summarize(const std::vector<ScanRow>& rows);

void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& out);
void write_scan_json(const std::vector<ScanRow>& rows, const ScanSummary& summary, std::ostream& out);
void write_scan_summary(const ScanSummary& summary, std::ostream& out);

/// Full command: data to cfg.output_path (or `out`), summary to `console`.
int cmd_bounds_scan(const ExperimentConfig& cfg, std::ostream& out, std::ostream& console);

// --- prop2 ------------------------------------------------------------------

inline constexpr double kCounterexampleMargin = -1e-6;

struct Prop2Sample {
    std::size_t index;
    std::uint64_t seed;
    std::size_t rank;
    double roof_d;
    double d_lower;
    double margin; // roof_d^2 - d_lower
};

struct Prop2Report {
    ExperimentConfig config;
    std::vector<Prop2Sample> samples;
    std::vector<json> counterexamples;
    double min_margin = 0.0;
    double mean_margin = 0.0;
};

/// Margin of the conjectured lower bound for the state drawn at `index`; the
/// counterexample document is filled when the margin falls below threshold.
Prop2Sample prop2_sample(const ExperimentConfig& cfg, std::size_t index, std::optional<json>* counterexample);
Prop2Report run_prop2_search(const ExperimentConfig& cfg);
json to_json(const Prop2Report& report);

int cmd_prop2(const ExperimentConfig& cfg, std::ostream& out, std::ostream& console);

// --- eval -------------------------------------------------------------------

/// Every applicable measure and bound for a density matrix.
json evaluate_state(const DensityMatrix& rho);

/// Loads a state file and prints its report. Input errors return kInputError
/// with a diagnostic on `err`.
int cmd_eval(const std::string& path, std::ostream& out, std::ostream& err);

} // namespace dconc
