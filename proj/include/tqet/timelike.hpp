#pragma once

#include <array>
#include <string>

#include "tqet/protocol.hpp"

namespace tqet {

/// The four operators {I, X, Y, Z}/sqrt(2) on one site, identity elsewhere.
/// Restricted to the site they are Hilbert-Schmidt orthonormal:
/// Tr(o_mu o_nu) = delta_{mu nu}.
struct OperatorBasis {
    int site = 0;
    std::array<CMatrix, 4> elements;
};

OperatorBasis site_basis(int n_sites, int site);

using CorrelatorMatrix = Eigen::Matrix4cd;

/// Time-separated correlators C_ab(t; rho) = Tr[rho O_{A,a}(t) O_{B,b}(0)]
/// for both initial states, with the spacetime second moments derived from
/// them: tr_t2 = sum C^2 (complex), tr_ttdag = sum |C|^2, and the
/// measurement-induced difference delta_tr_t2.
struct CorrelatorSeries {
    std::vector<double> times;
    std::vector<CorrelatorMatrix> c_rho_a;
    std::vector<CorrelatorMatrix> c_rho_0;
    std::vector<Complex> tr_t2_rho_a;
    std::vector<Complex> tr_t2_rho_0;
    std::vector<double> tr_ttdag_rho_a;
    std::vector<double> tr_ttdag_rho_0;
    std::vector<Complex> delta_tr_t2;
};

/// Correlator matrix against the pure ground state rho_0 = |g><g|.
CorrelatorMatrix correlator_matrix(const GroundState& gs, const Spectrum& s,
                                   const OperatorBasis& basis_a,
                                   const OperatorBasis& basis_b, double t);

/// Correlator matrix against the post-measurement state rho_A, evaluated
/// as the weighted sum over pure branches.
CorrelatorMatrix correlator_matrix(const BranchEnsemble& ensemble, const Spectrum& s,
                                   const OperatorBasis& basis_a,
                                   const OperatorBasis& basis_b, double t);

/// Sum of squared entries, no conjugation; generically complex.
Complex tr_t2(const CorrelatorMatrix& c);

/// Sum of squared moduli; nonnegative and >= |tr_t2| always.
double tr_ttdag(const CorrelatorMatrix& c);

/// Full diagnostic series over the ChainSpec time grid for both initial
/// states. Bases sit on site_a and site_b.
CorrelatorSeries run_series(const ChainSpec& spec, const GroundState& gs,
                            const BranchEnsemble& ensemble, const Spectrum& s,
                            int workers = 1);

/// Interior local extrema of a sampled series by three-point comparison.
/// A plateau of values equal within 1e-12 counts once and yields its
/// midpoint time; plateaus touching an endpoint are excluded. Times are
/// index * dt.
std::vector<double> critical_points(const std::vector<double>& series, double dt);

/// Scalar functional applied to the complex delta_tr_t2 series before
/// extremum-finding.
enum class Scalarization { Abs, Re, Im };

Scalarization scalarization_from_label(const std::string& label);
std::string scalarization_label(Scalarization s);

struct SyncPair {
    double t_min = 0.0;       // local minimum of dE_min(t)
    double t_critical = 0.0;  // nearest critical point of the diagnostic
    double gap = 0.0;         // |t_min - t_critical|
};

/// Pairing of extraction windows with diagnostic critical points. When no
/// strict local minima of dE_min exist (or the diagnostic has no critical
/// points), pairs is empty and flag says why.
struct SyncReport {
    std::vector<SyncPair> pairs;
    double median_gap = 0.0;
    double max_gap = 0.0;
    std::string flag;  // empty, "no_minima", or "no_critical_points"
};

SyncReport sync_analysis(const ProtocolTrace& trace, const CorrelatorSeries& series,
                         Scalarization scalarization = Scalarization::Abs);

}  // namespace tqet
