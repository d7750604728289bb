#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "handles.hpp"

namespace mffdfa::cli {

/// Fully resolved analysis settings; echoed verbatim into every result.
struct AnalysisConfig {
    std::string method = "mffdfa";
    int m = 2;
    std::size_t k = 2;
    double q_min = -10.0;
    double q_max = 10.0;
    double q_step = 0.2;
    std::size_t s_min = 30;
    std::size_t s_max = 0;  // 0 until resolved against the series length
    std::size_t n_scales = 30;
    std::string abscissa = "normalized";
    std::size_t fit_s_lo = 0;
    std::size_t fit_s_hi = 0;
    bool log_returns = false;
    bool drop_overnight = false;
    std::uint64_t seed = 0;

    bool operator==(const AnalysisConfig&) const = default;
};

nlohmann::json to_json(const AnalysisConfig& config);
/// Applies the keys present in `j` on top of `config`; unknown keys are rejected.
void merge_json(AnalysisConfig& config, const nlohmann::json& j);
AnalysisConfig load_config_file(const std::string& path, AnalysisConfig base = {});

mffdfa_config to_c_config(const AnalysisConfig& config, unsigned threads);

/// Values read from a one-column CSV. `session_starts` holds the value index
/// following each "# session" marker line.
struct CsvSeries {
    std::vector<double> values;
    std::vector<std::size_t> session_starts;
    std::size_t ignored_columns = 0;  // lines whose extra columns were dropped
};

CsvSeries parse_csv(std::istream& in, const std::string& origin = "<input>");
CsvSeries read_csv(const std::string& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

void write_series_csv(std::ostream& out, const std::vector<double>& values,
                      const std::vector<std::string>& header_comments);

struct ResultDocument {
    AnalysisConfig config;
    std::size_t series_length = 0;
    std::vector<double> q;
    std::vector<double> h;
    std::vector<double> fit_r2;
    std::vector<double> intercept;
    std::vector<double> alpha;
    std::vector<double> f_alpha;
    double delta_alpha = 0.0;
    std::vector<std::size_t> scales;
    std::vector<std::size_t> segment_counts;
    std::vector<std::size_t> zero_variance_counts;
    std::vector<std::size_t> rank_deficient_fits;
    std::vector<std::string> basis_names;
    std::vector<double> selection_fractions;
    std::vector<std::vector<double>> fluctuation;  // [q][scale]

    bool operator==(const ResultDocument&) const = default;

    /// h at q = 2, linearly interpolated if 2 is not on the grid.
    double hurst() const;
};

nlohmann::json to_json(const ResultDocument& doc);
ResultDocument result_from_json(const nlohmann::json& j);

/// Flat per-q table (q,h,fit_r2,intercept,alpha,f_alpha) with '#' summary lines.
void write_result_csv(std::ostream& out, const ResultDocument& doc);

/// Loads the series for `config` (applying log returns / session splitting),
/// resolves s_max, runs the analysis through the C API.
ResultDocument run_analysis(const std::vector<double>& input, const std::vector<std::size_t>& session_starts,
                            AnalysisConfig config, unsigned threads);

struct SweepRow {
    int m = 0;
    std::string method;
    std::size_t k = 1;
    double hurst = 0.0;
    double delta_alpha = 0.0;
};

struct SweepResult {
    AnalysisConfig config;
    std::vector<SweepRow> rows;
    std::vector<ResultDocument> runs;
};

/// Parses "1-10", "1,3,5" or "2"; every order must lie in [1, 10].
std::vector<int> parse_m_range(const std::string& text);

/// One mfdfa (k = 1) and one mfdfa_overlap (k from config) run per order.
SweepResult run_sweep(const std::vector<double>& input, const std::vector<std::size_t>& session_starts,
                      const std::vector<int>& orders, const AnalysisConfig& config, unsigned threads);

nlohmann::json to_json(const SweepResult& sweep);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

struct OracleRow {
    double q, tau, alpha, f_alpha, h;
};

std::vector<OracleRow> run_oracle(double a, double q_min, double q_max, double q_step);
void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows);

/// q_min, q_min + step, ... q_max with the library's zero snapping.
std::vector<double> q_values(double q_min, double q_max, double q_step);

} // namespace mffdfa::cli
