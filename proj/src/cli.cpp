#include "tqet/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "tqet/experiments.hpp"
#include "tqet/io.hpp"
#include "tqet/timelike.hpp"

namespace fs = std::filesystem;

namespace tqet {

namespace {

fs::path prepare_out_dir(const RunConfig& config) {
    const fs::path dir = config.out_dir.empty() ? fs::path(".") : fs::path(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw io_error("cannot create output directory " + dir.string() + ": " +
                       ec.message());
    }
    return dir;
}

void emit(const RunConfig& config, const std::string& stem, const Table& table) {
    const fs::path dir = prepare_out_dir(config);
    if (config.format != OutputFormat::Json) {
        write_csv(dir / (stem + ".csv"), table);
    }
    if (config.format != OutputFormat::Csv) {
        write_jsonl(dir / (stem + ".jsonl"), table);
    }
}

std::vector<int> sweep_n_values(const RunConfig& config) {
    std::vector<int> out;
    for (int n = config.n_min; n <= config.n_max; ++n) out.push_back(n);
    return out;
}

void emit_gh(const RunConfig& config) {
    const SweepResult res =
        sweep_gh(config.chain, linspace(config.gh_g_min, config.gh_g_max, config.gh_g_points),
                 linspace(config.gh_h_min, config.gh_h_max, config.gh_h_points),
                 config.workers);
    Table t;
    t.comments = {provenance_line(config)};
    t.header = {"g", "h", "e_qet", "min_t_e_tqet", "min_t_de", "ratio",
                "eta_tqet", "eta_qet", "flag"};
    for (const auto& cell : res.cells) {
        t.rows.push_back({num_cell(cell.axis[0]), num_cell(cell.axis[1]),
                          num_cell(cell.e_qet), num_cell(cell.min_t_e_tqet),
                          num_cell(cell.min_t_de), num_cell(cell.ratio),
                          num_cell(cell.eta_tqet), num_cell(cell.eta_qet),
                          text_cell(cell.flag)});
    }
    emit(config, "sweep_gh", t);
}

void emit_ece(const RunConfig& config) {
    const SweepResult res = scale_ece(config.chain, sweep_n_values(config), config.workers);
    Table t;
    t.comments = {provenance_line(config)};
    t.header = {"n", "e_qet", "eta_tqet", "eta_qet", "flag"};
    for (const auto& cell : res.cells) {
        t.rows.push_back({int_cell(static_cast<long long>(cell.axis[0])),
                          num_cell(cell.e_qet), num_cell(cell.eta_tqet),
                          num_cell(cell.eta_qet), text_cell(cell.flag)});
    }
    emit(config, "sweep_ece", t);
}

void emit_ratio(const RunConfig& config) {
    const SweepResult res = scale_ratio(config.chain, sweep_n_values(config), config.workers);
    Table t;
    t.comments = {provenance_line(config)};
    t.header = {"n", "e_qet", "min_t_e_tqet", "ratio", "flag"};
    for (const auto& cell : res.cells) {
        t.rows.push_back({int_cell(static_cast<long long>(cell.axis[0])),
                          num_cell(cell.e_qet), num_cell(cell.min_t_e_tqet),
                          num_cell(cell.ratio), text_cell(cell.flag)});
    }
    emit(config, "sweep_ratio", t);
}

void emit_fixed(const RunConfig& config) {
    const SweepResult res =
        fixed_distance(config.chain, sweep_n_values(config), config.workers);
    Table t;
    t.comments = {provenance_line(config)};
    t.header = {"n", "e_qet", "min_t_de_restricted", "gap", "flag"};
    for (const auto& cell : res.cells) {
        t.rows.push_back({int_cell(static_cast<long long>(cell.axis[0])),
                          num_cell(cell.e_qet), num_cell(cell.min_t_de_restricted),
                          num_cell(cell.e_qet - cell.min_t_de_restricted),
                          text_cell(cell.flag)});
    }
    emit(config, "sweep_fixed", t);
}

}  // namespace

void cmd_ground(const RunConfig& config) {
    config.chain.validate();
    const CMatrix h = build_h(config.chain);
    const GroundState gs = ground_state(h);
    Table t;
    t.comments = {provenance_line(config)};
    t.header = {"energy", "degeneracy_gap", "degenerate"};
    t.rows.push_back({num_cell(gs.energy), num_cell(gs.degeneracy_gap),
                      int_cell(gs.degenerate ? 1 : 0)});
    emit(config, "ground", t);
}

void cmd_trace(const RunConfig& config) {
    const ProtocolContext ctx = make_context(config.chain);
    const ProtocolTrace trace = run_trace(ctx, config.workers);

    Table t;
    t.comments = {provenance_line(config)};
    t.header = {"t", "M", "N", "theta_star", "dE_min", "E_NTE", "E_TQET_opt"};
    for (const auto& pt : trace.points) {
        t.rows.push_back({num_cell(pt.t), num_cell(pt.m), num_cell(pt.n_corr),
                          num_cell(pt.theta_star), num_cell(pt.de_min),
                          num_cell(pt.e_nte), num_cell(pt.e_tqet_opt)});
    }
    emit(config, "trace", t);

    double eta_tqet = std::numeric_limits<double>::quiet_NaN();
    double eta_qet = std::numeric_limits<double>::quiet_NaN();
    if (trace.e_input > 1e-12) {
        const Efficiency eff = ece(trace);
        eta_tqet = eff.eta_tqet;
        eta_qet = eff.eta_qet;
    }
    Table s;
    s.comments = {provenance_line(config)};
    s.header = {"E_QET", "E_input", "eta_tqet", "eta_qet"};
    s.rows.push_back({num_cell(trace.e_qet), num_cell(trace.e_input),
                      num_cell(eta_tqet), num_cell(eta_qet)});
    emit(config, "summary", s);
}

void cmd_timelike(const RunConfig& config) {
    const ProtocolContext ctx = make_context(config.chain);
    const CorrelatorSeries series =
        run_series(config.chain, ctx.ground, ctx.branches, ctx.spectrum, config.workers);

    Table t;
    t.comments = {provenance_line(config)};
    t.header = {"t", "re_trT2_rhoA", "im_trT2_rhoA", "re_trT2_rho0", "im_trT2_rho0",
                "trTTdag_rhoA", "trTTdag_rho0", "re_dtrT2", "im_dtrT2"};
    for (size_t i = 0; i < series.times.size(); ++i) {
        t.rows.push_back({num_cell(series.times[i]),
                          num_cell(series.tr_t2_rho_a[i].real()),
                          num_cell(series.tr_t2_rho_a[i].imag()),
                          num_cell(series.tr_t2_rho_0[i].real()),
                          num_cell(series.tr_t2_rho_0[i].imag()),
                          num_cell(series.tr_ttdag_rho_a[i]),
                          num_cell(series.tr_ttdag_rho_0[i]),
                          num_cell(series.delta_tr_t2[i].real()),
                          num_cell(series.delta_tr_t2[i].imag())});
    }
    emit(config, "timelike", t);

    if (!config.enable_sync) return;
    const ProtocolTrace trace = run_trace(ctx, config.workers);
    const SyncReport report = sync_analysis(trace, series, config.scalarization);
    Table s;
    s.comments = {provenance_line(config)};
    if (!report.flag.empty()) {
        s.comments.push_back("# flag=" + report.flag);
    } else {
        s.comments.push_back("# median_gap=" + format_sci(report.median_gap) +
                             " max_gap=" + format_sci(report.max_gap));
    }
    s.header = {"t_min", "t_critical", "gap"};
    for (const auto& pair : report.pairs) {
        s.rows.push_back({num_cell(pair.t_min), num_cell(pair.t_critical),
                          num_cell(pair.gap)});
    }
    emit(config, "sync", s);
}

void cmd_sweep(const RunConfig& config, const std::string& which) {
    if (which.empty()) {
        if (config.enable_gh) emit_gh(config);
        if (config.enable_ece) emit_ece(config);
        if (config.enable_ratio) emit_ratio(config);
        if (config.enable_fixed) emit_fixed(config);
        return;
    }
    if (which == "gh") emit_gh(config);
    else if (which == "ece") emit_ece(config);
    else if (which == "ratio") emit_ratio(config);
    else if (which == "fixed") emit_fixed(config);
    else throw validation_error("unknown sweep '" + which + "' (gh, ece, ratio, fixed)");
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"tqet-lab: exact-diagonalization laboratory for timelike quantum "
                 "energy teleportation on mixed-field Ising chains"};
    app.require_subcommand(1);

    struct Shared {
        std::string config_path;
        std::vector<std::string> sets;
        std::string out;
        int workers = 0;
        std::string format;
    } shared;

    auto add_common = [&shared](CLI::App* sub) {
        sub->add_option("--config", shared.config_path,
                        "configuration file (flat key=value)");
        sub->add_option("--set", shared.sets, "override one config key=value")
            ->type_size(1);
        sub->add_option("--out", shared.out, "output directory");
        sub->add_option("--workers", shared.workers, "worker thread count");
        sub->add_option("--format", shared.format, "csv, json, or both");
    };

    CLI::App* ground = app.add_subcommand("ground", "ground-state energy and gap");
    CLI::App* trace = app.add_subcommand("trace", "optimized protocol trace");
    CLI::App* timelike =
        app.add_subcommand("timelike", "spacetime correlator diagnostics");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps");
    std::string which;
    sweep->add_option("which", which, "gh|ece|ratio|fixed (all enabled when omitted)");
    CLI::App* validate = app.add_subcommand("validate", "numerical property suite");
    std::string inject;
    validate->add_option("--inject-fault", inject, "force one named check to fail")
        ->group("");
    for (CLI::App* sub : {ground, trace, timelike, sweep, validate}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        RunConfig config;
        if (!shared.config_path.empty()) {
            std::ifstream in(shared.config_path, std::ios::binary);
            if (!in) {
                throw validation_error("cannot read config file '" +
                                       shared.config_path + "'");
            }
            std::ostringstream text;
            text << in.rdbuf();
            config = parse_config_text(text.str(), shared.config_path);
        }
        for (const auto& assignment : shared.sets) apply_override(config, assignment);
        if (!shared.out.empty()) {
            config.out_dir = shared.out;
        } else if (const char* env = std::getenv("TQET_LAB_OUT"); env && *env) {
            config.out_dir = env;
        }
        if (shared.workers > 0) config.workers = shared.workers;
        if (!shared.format.empty()) config.format = format_from_label(shared.format);

        if (validate->parsed()) {
            return cmd_validate(config, inject, std::cout);
        }
        finalize_config(config);
        if (ground->parsed()) cmd_ground(config);
        else if (trace->parsed()) cmd_trace(config);
        else if (timelike->parsed()) cmd_timelike(config);
        else if (sweep->parsed()) cmd_sweep(config, which);
        return 0;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const consistency_error& e) {
        std::cerr << "consistency error: " << e.what() << '\n';
        return 2;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace tqet
