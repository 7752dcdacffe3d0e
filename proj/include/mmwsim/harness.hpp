#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmwsim/config.hpp"
#include "mmwsim/metrics.hpp"

namespace mmwsim {

inline constexpr const char* kToolName = "mmwsim";
inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr const char* kCsvHeader =
    "arch,n_t,n_r,k,m,p_t_dbw,drop,ase_bit_s_hz,p_txc_w,p_rxc_w,gee_bit_per_joule,flags";

// One coordinate of the sweep grid (index feeds the seed mixer).
struct SweepPoint {
    int index = 0;
    int m = 1;
    int n_t = 1;
    int n_r = 1;
};

// Per-(architecture, sweep point) aggregate over drops.
struct SummaryRow {
    Architecture arch = Architecture::cm_fd;
    int n_t = 0;
    int n_r = 0;
    int k = 0;
    int m = 0;
    double p_t_dbw = 0.0;
    std::string kind;  // "mean" or "stderr" in the drop column
    double ase_bit_s_hz = 0.0;
    double p_txc_w = 0.0;
    double p_rxc_w = 0.0;
    double gee_bit_per_joule = 0.0;
    std::string flags;  // "n=<drops>" plus flag counts
};

struct ResultTable {
    std::vector<std::string> metadata;  // emitted as '#'-prefixed lines
    std::vector<MetricSample> samples;
    std::vector<SummaryRow> summaries;
};

// Sweep grid in deterministic order: m (outer), n_t, n_r (inner).
std::vector<SweepPoint> enumerate_sweep_points(const SimConfig& cfg);

// The channel set shared by every architecture within one drop.
std::vector<ChannelRealization> draw_drop_channels(const SimConfig& cfg, const SweepPoint& point,
                                                   int drop_index);

// Synthesizes one architecture with the configured knobs.
BeamformerSet synthesize(Architecture a, const std::vector<ChannelRealization>& channels, int m,
                         const SimConfig& cfg);

// Evaluates every configured architecture on one shared channel drop.
// Synthesis/metric failures become flagged rows, not aborts.
std::vector<MetricSample> run_drop(const SimConfig& cfg, const SweepPoint& point, int drop_index);

// Full Monte Carlo sweep. threads <= 0 selects the hardware thread count.
// Output is byte-identical for any thread count.
ResultTable run_sweep(const SimConfig& cfg, int threads = 0);

// CSV emission: metadata lines, header, sample rows, summary rows; numbers
// carry 9 significant digits.
void emit_csv(const ResultTable& table, std::ostream& out);
void emit_csv(const ResultTable& table, const std::string& path);

// %.9g rendering used for every floating-point CSV field.
std::string format_g9(double v);

}  // namespace mmwsim
