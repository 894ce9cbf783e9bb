#pragma once

#include <array>

#include "tqet/model.hpp"

namespace tqet {

/// Alice's two unnormalized post-measurement branches v_b = P_A(b)|g> with
/// weights p_b = |v_b|^2. The weights sum to one and the branches are
/// orthogonal; both facts are checked at construction.
struct BranchEnsemble {
    std::array<CVector, 2> branch_vectors;
    std::array<double, 2> weights{};
    bool degenerate_measurement = false;  // one weight below 1e-14
};

/// One time-grid entry of the optimized protocol. All energies in units
/// of j. de_min = (-m - sqrt(m^2 + n^2)) / 2 <= 0 by construction;
/// e_tqet_opt is evaluated by explicit branch rotation, so
/// e_tqet_opt = e_nte + de_min is a live cross-check rather than a
/// tautology.
struct ProtocolPoint {
    double t = 0.0;
    double m = 0.0;
    double n_corr = 0.0;
    double theta_star = 0.0;
    double de_min = 0.0;
    double e_nte = 0.0;
    double e_tqet_opt = 0.0;
};

struct ProtocolTrace {
    ChainSpec spec;
    std::vector<ProtocolPoint> points;
    double e_qet = 0.0;    // points[0].de_min
    double e_input = 0.0;  // energy injected by Alice's measurement
};

/// Everything a per-time-step evaluation reads: the spectral decomposition,
/// the branch ensemble, the local operators and a few cached products.
/// Immutable after construction; grid points may be evaluated in parallel
/// against a shared context.
struct ProtocolContext {
    ChainSpec spec;
    CMatrix hamiltonian;
    Spectrum spectrum;
    GroundState ground;
    BranchEnsemble branches;
    CMatrix h_a;
    CMatrix h_b;
    CMatrix sigma_a_op;   // sigma_A embedded in the chain
    CMatrix sigma_b_op;   // sigma_B embedded in the chain
    CMatrix drive;        // [sigma_B, H_B], anti-Hermitian
    CMatrix double_comm;  // [sigma_B, [sigma_B, H_B]], Hermitian
    CVector sigma_a_ground;  // sigma_A |g>
    CVector drive_ground;    // [sigma_B, H_B] |g>
    double hb_ground = 0.0;  // <g|H_B|g>
    double ha_ground = 0.0;  // <g|H_A|g>
};

ProtocolContext make_context(const ChainSpec& spec);

/// v_b = P_A(b)|g>; flags (but accepts) a deterministic measurement where
/// one branch carries all the weight.
BranchEnsemble prepare_branches(const GroundState& gs, const ChainSpec& spec);

/// Tr[(rho_A - rho_0) H_A]: the energy cost of Alice's measurement.
double e_input(const BranchEnsemble& ensemble, const CMatrix& h_a, const GroundState& gs);

/// Tr[(rho_A(t) - rho_0) H_B]: Bob's local energy under natural time
/// evolution with no feedback. Vanishes at t = 0 because [P_A, H_B] = 0.
double e_nte(const BranchEnsemble& ensemble, const Spectrum& s, const CMatrix& h_b,
             const GroundState& gs, double t);

struct FeedbackCoefficients {
    double m = 0.0;       // local cost term, (1/2) Tr(rho_A(t) [sB,[sB,H_B]])
    double n_corr = 0.0;  // predictor term, (i/2) Tr(U {sA, rho_0} U^dag [sB,H_B])
};

/// The closed-form energy-balance coefficients. M is evaluated as a
/// branch quadratic form; N uses the pure-state reduction
/// N(t) = -Im <g| sigma_A U^dag(t) [sigma_B, H_B] U(t) |g>, which tests
/// validate against the density-matrix trace form. An imaginary residue
/// above 1e-10 in M raises consistency_error.
FeedbackCoefficients compute_mn(const ProtocolContext& ctx, double t);

struct OptimalControl {
    double theta_star = 0.0;  // in (-pi/2, pi/2]
    double de_min = 0.0;      // <= 0
};

/// Minimizer of dE(theta) = (cos 2theta - 1) M/2 + sin(2theta) N/2.
/// Returns (0, 0) when M and N both vanish (doing nothing is optimal).
OptimalControl optimal_theta(double m, double n_corr);

/// The closed-form dE(t, theta) given M and N. Pi-periodic in theta.
double delta_e_analytic(double m, double n_corr, double theta);

/// Brute-force dE(t, theta) via explicit branch evolution and conditional
/// rotation; the oracle against which the closed form is checked.
double delta_e_direct(const ProtocolContext& ctx, double t, double theta);

/// Bob's activated energy Tr[(rho_TQET(t) - rho_0) H_B].
double e_tqet(const ProtocolContext& ctx, double t, double theta);

/// Full protocol trace over the ChainSpec time grid with theta optimized
/// pointwise. Grid points are independent; `workers` > 1 evaluates them
/// on a thread pool with deterministic, grid-ordered results.
ProtocolTrace run_trace(const ProtocolContext& ctx, int workers = 1);
ProtocolTrace run_trace(const ChainSpec& spec, int workers = 1);

struct Efficiency {
    double eta_tqet = 0.0;  // max_t[-dE_min(t)] / E_input
    double eta_qet = 0.0;   // -E_QET / E_input
};

/// Operational energy conversion efficiency. Throws validation_error when
/// e_input <= 1e-12 (no injected energy, efficiency undefined).
Efficiency ece(const ProtocolTrace& trace);

}  // namespace tqet
