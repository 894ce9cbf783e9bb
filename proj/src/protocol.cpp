#include "tqet/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tqet/kernel.hpp"
#include "tqet/parallel.hpp"

namespace tqet {

namespace {

// Real expectation of a Hermitian operator summed over weighted branches:
// Tr[rho O] with rho = sum_b |v_b><v_b| (branches carry their weight).
double branch_expectation(const std::array<CVector, 2>& branches, const CMatrix& op) {
    double acc = 0.0;
    for (const auto& v : branches) {
        acc += expectation(op, v).real();
    }
    return acc;
}

}  // namespace

BranchEnsemble prepare_branches(const GroundState& gs, const ChainSpec& spec) {
    BranchEnsemble ensemble;
    for (int b = 0; b < 2; ++b) {
        const CMatrix p = projector_a(spec, b);
        ensemble.branch_vectors[b] = p * gs.vector;
        ensemble.weights[b] = ensemble.branch_vectors[b].squaredNorm();
    }
    const double total = ensemble.weights[0] + ensemble.weights[1];
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "branch weights must sum to 1, got " << total;
        throw consistency_error(msg.str());
    }
    const Complex overlap = ensemble.branch_vectors[0].dot(ensemble.branch_vectors[1]);
    if (std::abs(overlap) > 1e-12) {
        throw consistency_error("measurement branches are not orthogonal");
    }
    ensemble.degenerate_measurement =
        ensemble.weights[0] < 1e-14 || ensemble.weights[1] < 1e-14;
    return ensemble;
}

ProtocolContext make_context(const ChainSpec& spec) {
    spec.validate();
    ProtocolContext ctx;
    ctx.spec = spec;
    ctx.hamiltonian = build_h(spec);
    ctx.spectrum = eigh(ctx.hamiltonian);
    ctx.ground = ground_state(ctx.hamiltonian, ctx.spectrum);
    ctx.branches = prepare_branches(ctx.ground, spec);
    ctx.h_a = build_ha(spec);
    ctx.h_b = build_hb(spec);
    ctx.sigma_a_op = pauli_string(spec.n_sites, {{spec.site_a, spec.sigma_a}});
    ctx.sigma_b_op = pauli_string(spec.n_sites, {{spec.site_b, spec.sigma_b}});
    ctx.drive = ctx.sigma_b_op * ctx.h_b - ctx.h_b * ctx.sigma_b_op;
    ctx.double_comm = ctx.sigma_b_op * ctx.drive - ctx.drive * ctx.sigma_b_op;
    if (max_abs(ctx.drive + ctx.drive.adjoint()) > 1e-12) {
        throw consistency_error("[sigma_B, H_B] is not anti-Hermitian");
    }
    if (hermiticity_defect(ctx.double_comm) > 1e-12) {
        throw consistency_error("[sigma_B, [sigma_B, H_B]] is not Hermitian");
    }
    ctx.sigma_a_ground = ctx.sigma_a_op * ctx.ground.vector;
    ctx.drive_ground = ctx.drive * ctx.ground.vector;
    ctx.hb_ground = expectation(ctx.h_b, ctx.ground.vector).real();
    ctx.ha_ground = expectation(ctx.h_a, ctx.ground.vector).real();
    return ctx;
}

double e_input(const BranchEnsemble& ensemble, const CMatrix& h_a, const GroundState& gs) {
    return branch_expectation(ensemble.branch_vectors, h_a) -
           expectation(h_a, gs.vector).real();
}

double e_nte(const BranchEnsemble& ensemble, const Spectrum& s, const CMatrix& h_b,
             const GroundState& gs, double t) {
    double acc = 0.0;
    for (const auto& v : ensemble.branch_vectors) {
        acc += expectation(h_b, evolve_state(s, v, t)).real();
    }
    return acc - expectation(h_b, gs.vector).real();
}

FeedbackCoefficients compute_mn(const ProtocolContext& ctx, double t) {
    FeedbackCoefficients out;

    Complex m_acc = 0.0;
    for (const auto& v : ctx.branches.branch_vectors) {
        m_acc += expectation(ctx.double_comm, evolve_state(ctx.spectrum, v, t));
    }
    m_acc *= 0.5;
    if (std::abs(m_acc.imag()) > 1e-10) {
        std::ostringstream msg;
        msg << "M(t) has imaginary residue " << m_acc.imag() << " at t = " << t;
        throw consistency_error(msg.str());
    }
    out.m = m_acc.real();

    // N(t) = -Im <g| sigma_A U^dag [sigma_B, H_B] U |g>
    //      = -Im( e^{-i E0 t} <U sigma_A g | [sigma_B, H_B] g> )
    const CVector y = evolve_state(ctx.spectrum, ctx.sigma_a_ground, t);
    const Complex phase = std::exp(Complex(0.0, -ctx.ground.energy * t));
    out.n_corr = -(phase * y.dot(ctx.drive_ground)).imag();
    return out;
}

OptimalControl optimal_theta(double m, double n_corr) {
    OptimalControl out;
    if (m * m + n_corr * n_corr < 1e-24) {
        return out;
    }
    out.theta_star = 0.5 * std::atan2(-n_corr, -m);
    // dE is pi-periodic; keep theta_star in (-pi/2, pi/2] when atan2 lands
    // on the excluded -pi branch cut (n_corr = -0.0, m > 0).
    if (out.theta_star <= -0.5 * std::numbers::pi) {
        out.theta_star += std::numbers::pi;
    }
    out.de_min = 0.5 * (-m - std::hypot(m, n_corr));
    return out;
}

double delta_e_analytic(double m, double n_corr, double theta) {
    return 0.5 * (std::cos(2.0 * theta) - 1.0) * m + 0.5 * std::sin(2.0 * theta) * n_corr;
}

double delta_e_direct(const ProtocolContext& ctx, double t, double theta) {
    // chi_b = U_B(b, theta) U(t) v_b evaluated without forming U_B:
    // U_B(b, theta) = cos(theta) I - i (-1)^b sin(theta) sigma_B.
    double rotated = 0.0;
    double unrotated = 0.0;
    const Complex c = std::cos(theta);
    for (int b = 0; b < 2; ++b) {
        const CVector w = evolve_state(ctx.spectrum, ctx.branches.branch_vectors[b], t);
        const double sign = (b == 0) ? 1.0 : -1.0;
        const Complex s(0.0, -sign * std::sin(theta));
        const CVector chi = c * w + s * (ctx.sigma_b_op * w);
        rotated += expectation(ctx.h_b, chi).real();
        unrotated += expectation(ctx.h_b, w).real();
    }
    return rotated - unrotated;
}

double e_tqet(const ProtocolContext& ctx, double t, double theta) {
    double acc = 0.0;
    const Complex c = std::cos(theta);
    for (int b = 0; b < 2; ++b) {
        const CVector w = evolve_state(ctx.spectrum, ctx.branches.branch_vectors[b], t);
        const double sign = (b == 0) ? 1.0 : -1.0;
        const Complex s(0.0, -sign * std::sin(theta));
        const CVector chi = c * w + s * (ctx.sigma_b_op * w);
        acc += expectation(ctx.h_b, chi).real();
    }
    return acc - ctx.hb_ground;
}

namespace {

ProtocolPoint evaluate_point(const ProtocolContext& ctx, double t) {
    ProtocolPoint pt;
    pt.t = t;
    const FeedbackCoefficients fc = compute_mn(ctx, t);
    pt.m = fc.m;
    pt.n_corr = fc.n_corr;
    const OptimalControl oc = optimal_theta(fc.m, fc.n_corr);
    pt.theta_star = oc.theta_star;
    pt.de_min = oc.de_min;
    pt.e_nte = e_nte(ctx.branches, ctx.spectrum, ctx.h_b, ctx.ground, t);
    pt.e_tqet_opt = e_tqet(ctx, t, oc.theta_star);
    const double recomposed = pt.e_nte + pt.de_min;
    if (std::abs(pt.e_tqet_opt - recomposed) > 1e-9) {
        std::ostringstream msg;
        msg << "direct and closed-form E_TQET disagree at t = " << t << ": "
            << pt.e_tqet_opt << " vs " << recomposed;
        throw consistency_error(msg.str());
    }
    return pt;
}

}  // namespace

ProtocolTrace run_trace(const ProtocolContext& ctx, int workers) {
    ProtocolTrace trace;
    trace.spec = ctx.spec;
    const std::vector<double> grid = ctx.spec.time_grid();
    trace.points.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()), workers,
                 [&](int i) { trace.points[i] = evaluate_point(ctx, grid[i]); });
    trace.e_qet = trace.points.front().de_min;
    trace.e_input = e_input(ctx.branches, ctx.h_a, ctx.ground);
    return trace;
}

ProtocolTrace run_trace(const ChainSpec& spec, int workers) {
    return run_trace(make_context(spec), workers);
}

Efficiency ece(const ProtocolTrace& trace) {
    if (trace.e_input <= 1e-12) {
        throw validation_error("efficiency undefined: no energy injected by the measurement");
    }
    double best = 0.0;
    for (const auto& pt : trace.points) {
        best = std::max(best, -pt.de_min);
    }
    Efficiency eff;
    eff.eta_tqet = best / trace.e_input;
    eff.eta_qet = -trace.e_qet / trace.e_input;
    return eff;
}

}  // namespace tqet
