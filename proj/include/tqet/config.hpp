#pragma once

#include <string>

#include "tqet/model.hpp"
#include "tqet/timelike.hpp"

namespace tqet {

enum class OutputFormat { Csv, Json, Both };

OutputFormat format_from_label(const std::string& label);
std::string format_label(OutputFormat f);

/// Everything a run needs: the chain, sweep grids, N ranges, output
/// routing and the per-figure toggles. Parsed from a flat key=value file
/// with `--set` overrides applied on top; see the schema in the README.
struct RunConfig {
    ChainSpec chain;

    double gh_g_min = -2.0;
    double gh_g_max = 2.0;
    int gh_g_points = 41;
    double gh_h_min = -2.0;
    double gh_h_max = 2.0;
    int gh_h_points = 41;

    int n_min = 4;
    int n_max = 10;
    bool allow_large_n = false;  // opt-in for N = 11, 12 sweeps

    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    int workers = 1;

    bool enable_gh = true;
    bool enable_ece = true;
    bool enable_ratio = true;
    bool enable_fixed = true;
    bool enable_sync = true;
    Scalarization scalarization = Scalarization::Abs;
};

/// Applies one key=value pair. `origin` prefixes diagnostics
/// ("file.cfg:3" or "--set"). Unknown keys are rejected.
void apply_key(RunConfig& config, const std::string& key, const std::string& value,
               const std::string& origin);

/// Parses `key=value` text into an unfinalized config: layering (file,
/// then overrides) happens before finalize_config. '#' starts a comment;
/// blank lines are skipped.
RunConfig parse_config_text(const std::string& text, const std::string& origin);

/// Applies one "key=value" override from the command line.
void apply_override(RunConfig& config, const std::string& assignment);

/// Fills derived defaults (site_b = n_sites - 1 when unset) and enforces
/// every invariant: n_sites present, the chain contract, grid sanity,
/// worker count, and the N = 11, 12 opt-in.
void finalize_config(RunConfig& config);

/// parse + finalize in one step.
RunConfig parse_config(const std::string& path);

/// Canonical physics content of a config: sorted key=value lines covering
/// the chain, grids and scalarization. Output routing (out_dir, format,
/// workers, toggles) is excluded so identical physics yields identical
/// bytes regardless of how the run was executed.
std::string canonical_config(const RunConfig& config);

/// FNV-1a 64-bit hash of canonical_config, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// "# tqet-lab <version> config-hash=<hex>", the first line of every
/// emitted file.
std::string provenance_line(const RunConfig& config);

}  // namespace tqet
