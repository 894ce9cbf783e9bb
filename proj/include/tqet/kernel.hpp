#pragma once

#include "tqet/types.hpp"

namespace tqet {

/// Eigendecomposition of a Hermitian operator. Eigenvalues ascending,
/// eigenvectors stored as orthonormal columns. Immutable after
/// construction and safe to share read-only across threads; one cached
/// Spectrum per Hamiltonian drives all time evolution.
struct Spectrum {
    RVector eigenvalues;
    CMatrix eigenvectors;

    Eigen::Index dim() const { return eigenvalues.size(); }
};

/// max_ij |a_ij|, for diagnostics and residual checks.
double max_abs(const CMatrix& a);

/// max_ij |a_ij - conj(a_ji)|.
double hermiticity_defect(const CMatrix& a);

/// Tensor product. Factor `a` addresses the lower-numbered site: the
/// composite basis index is (i_a * b.dim + i_b), so site 1 is the most
/// significant tensor factor throughout the code base.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Hermitian eigendecomposition with deterministic output. Rejects input
/// whose hermiticity defect exceeds 1e-12. Within degenerate clusters
/// (eigenvalue spread below 1e-10) the columns are phase-fixed so their
/// first significant component is real positive and then ordered
/// lexicographically, which pins down the classical Ising point.
Spectrum eigh(const CMatrix& a);

/// e^{-i t H} v computed as V e^{-i lambda t} V^dag v. Norm preserving.
CVector evolve_state(const Spectrum& s, const CVector& v, double t);

/// Heisenberg picture: U^dag(t) O U(t).
CMatrix heisenberg(const Spectrum& s, const CMatrix& o, double t);

/// Dense U(t) = V e^{-i lambda t} V^dag; used by diagnostics and tests,
/// the hot paths evolve vectors instead.
CMatrix evolution_operator(const Spectrum& s, double t);

/// v^dag op v.
Complex expectation(const CMatrix& op, const CVector& v);

}  // namespace tqet
