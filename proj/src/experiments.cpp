#include "tqet/experiments.hpp"

#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>

#include "tqet/parallel.hpp"

namespace tqet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string timestamp_now() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void blank_cell(SweepCell& cell) {
    cell.e_qet = kNaN;
    cell.min_t_e_tqet = kNaN;
    cell.min_t_de = kNaN;
    cell.min_t_de_restricted = kNaN;
    cell.eta_tqet = kNaN;
    cell.eta_qet = kNaN;
    cell.ratio = kNaN;
}

// Runs the full protocol for one cell and fills every derived field.
// Flags (in priority order): invalid_sites, error, degenerate,
// undefined_ratio, no_window.
void evaluate_cell(const ChainSpec& spec, SweepCell& cell) {
    blank_cell(cell);
    try {
        spec.validate();
    } catch (const validation_error&) {
        cell.flag = "invalid_sites";
        return;
    }
    try {
        const ProtocolContext ctx = make_context(spec);
        const ProtocolTrace trace = run_trace(ctx, 1);
        cell.e_qet = trace.e_qet;
        double min_e_tqet = std::numeric_limits<double>::infinity();
        double min_de = std::numeric_limits<double>::infinity();
        double min_de_window = std::numeric_limits<double>::infinity();
        bool window = false;
        for (const auto& pt : trace.points) {
            min_e_tqet = std::min(min_e_tqet, pt.e_tqet_opt);
            min_de = std::min(min_de, pt.de_min);
            if (pt.e_tqet_opt < 0.0) {
                window = true;
                min_de_window = std::min(min_de_window, pt.de_min);
            }
        }
        cell.min_t_e_tqet = min_e_tqet;
        cell.min_t_de = min_de;
        cell.min_t_de_restricted = window ? min_de_window : kNaN;

        cell.degenerate = std::abs(spec.g) < 1e-9 || trace.e_input <= 1e-12;
        if (!cell.degenerate) {
            const Efficiency eff = ece(trace);
            cell.eta_tqet = eff.eta_tqet;
            cell.eta_qet = eff.eta_qet;
        }
        if (cell.e_qet < -1e-12) {
            cell.ratio = cell.min_t_e_tqet / cell.e_qet;
        }

        if (cell.degenerate) {
            cell.flag = "degenerate";
        } else if (std::isnan(cell.ratio)) {
            cell.flag = "undefined_ratio";
        } else if (!window) {
            cell.flag = "no_window";
        }
    } catch (const std::exception& e) {
        blank_cell(cell);
        cell.flag = std::string("error: ") + e.what();
    }
}

void check_n_values(const std::vector<int>& n_values) {
    if (n_values.empty()) {
        throw validation_error("scaling sweep needs a nonempty N sequence");
    }
    for (const int n : n_values) {
        if (n < 4 || n > kMaxSites) {
            std::ostringstream msg;
            msg << "scaling sweep N = " << n << " outside [4, " << kMaxSites << "]";
            throw validation_error(msg.str());
        }
    }
}

SweepResult scale_sweep(SweepKind kind, const ChainSpec& base,
                        const std::vector<int>& n_values, int workers,
                        int site_b_offset_from_end, bool fixed_offset_from_a) {
    check_n_values(n_values);
    SweepResult result;
    result.kind = kind;
    result.base = base;
    result.axis1.reserve(n_values.size());
    for (const int n : n_values) result.axis1.push_back(static_cast<double>(n));
    result.cells.resize(n_values.size());
    result.timestamp = timestamp_now();
    parallel_for(static_cast<int>(n_values.size()), workers, [&](int i) {
        ChainSpec spec = base;
        spec.n_sites = n_values[static_cast<size_t>(i)];
        spec.site_b = fixed_offset_from_a ? spec.site_a + 2
                                          : spec.n_sites - site_b_offset_from_end;
        SweepCell& cell = result.cells[static_cast<size_t>(i)];
        cell.axis = {static_cast<double>(spec.n_sites), 0.0};
        evaluate_cell(spec, cell);
    });
    return result;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw validation_error("linspace needs at least one point");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(points));
    if (points == 1) {
        out.push_back(lo);
        return out;
    }
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) out.push_back(lo + step * i);
    return out;
}

SweepResult sweep_gh(const ChainSpec& base, const std::vector<double>& g_grid,
                     const std::vector<double>& h_grid, int workers) {
    base.validate();
    if (g_grid.empty() || h_grid.empty()) {
        throw validation_error("sweep grids must be nonempty");
    }
    SweepResult result;
    result.kind = SweepKind::GH;
    result.base = base;
    result.axis1 = g_grid;
    result.axis2 = h_grid;
    result.cells.resize(g_grid.size() * h_grid.size());
    result.timestamp = timestamp_now();
    const int n_cells = static_cast<int>(result.cells.size());
    parallel_for(n_cells, workers, [&](int idx) {
        const size_t gi = static_cast<size_t>(idx) / h_grid.size();
        const size_t hi = static_cast<size_t>(idx) % h_grid.size();
        ChainSpec spec = base;
        spec.g = g_grid[gi];
        spec.h = h_grid[hi];
        SweepCell& cell = result.cells[static_cast<size_t>(idx)];
        cell.axis = {spec.g, spec.h};
        evaluate_cell(spec, cell);
    });
    return result;
}

SweepResult scale_ece(const ChainSpec& base, const std::vector<int>& n_values,
                      int workers) {
    return scale_sweep(SweepKind::Ece, base, n_values, workers, 1, false);
}

SweepResult scale_ratio(const ChainSpec& base, const std::vector<int>& n_values,
                        int workers) {
    return scale_sweep(SweepKind::Ratio, base, n_values, workers, 1, false);
}

SweepResult fixed_distance(const ChainSpec& base, const std::vector<int>& n_values,
                           int workers) {
    return scale_sweep(SweepKind::FixedDistance, base, n_values, workers, 0, true);
}

}  // namespace tqet
