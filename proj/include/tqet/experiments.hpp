#pragma once

#include <string>

#include "tqet/protocol.hpp"

namespace tqet {

enum class SweepKind { GH, Ece, Ratio, FixedDistance };

/// One grid point of a sweep. Numeric fields are NaN when undefined for
/// the cell; `flag` says why ("degenerate", "undefined_ratio", "no_window",
/// "invalid_sites", or "error: ..."). Failures never abort a sweep.
struct SweepCell {
    std::array<double, 2> axis{};  // (g, h) for GH sweeps, (N, 0) for scaling
    double e_qet = 0.0;
    double min_t_e_tqet = 0.0;
    double min_t_de = 0.0;
    double min_t_de_restricted = 0.0;  // min dE over {t : E_TQET(t) < 0}
    double eta_tqet = 0.0;
    double eta_qet = 0.0;
    double ratio = 0.0;  // min_t_e_tqet / e_qet when e_qet < -1e-12
    bool degenerate = false;
    std::string flag;
};

struct SweepResult {
    SweepKind kind = SweepKind::GH;
    ChainSpec base;
    std::vector<double> axis1;  // g values, or N values for scaling sweeps
    std::vector<double> axis2;  // h values; empty for scaling sweeps
    std::vector<SweepCell> cells;  // row-major: axis1 outer, axis2 inner
    std::string timestamp;         // not serialized; outputs stay deterministic
};

std::vector<double> linspace(double lo, double hi, int points);

/// Coupling-field heatmap at fixed N: per-cell E_QET, min_t E_TQET and
/// efficiency. Cells with |g| < 1e-9 (or no injected energy) are flagged
/// degenerate.
SweepResult sweep_gh(const ChainSpec& base, const std::vector<double>& g_grid,
                     const std::vector<double>& h_grid, int workers = 1);

/// Efficiency scaling in N with Bob at the far end (site N-1).
SweepResult scale_ece(const ChainSpec& base, const std::vector<int>& n_values,
                      int workers = 1);

/// min_t E_TQET / E_QET scaling in N with Bob at site N-1, so the
/// teleportation distance grows with N.
SweepResult scale_ratio(const ChainSpec& base, const std::vector<int>& n_values,
                        int workers = 1);

/// Net-advantage comparison at constant distance |site_a - site_b| = 2:
/// per-N E_QET versus min_t dE restricted to the window E_TQET(t) < 0.
SweepResult fixed_distance(const ChainSpec& base, const std::vector<int>& n_values,
                           int workers = 1);

}  // namespace tqet
