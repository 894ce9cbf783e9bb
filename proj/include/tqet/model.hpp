#pragma once

#include <map>
#include <vector>

#include "tqet/kernel.hpp"

namespace tqet {

enum class Pauli { I, X, Y, Z };

Pauli pauli_from_label(char label);
char pauli_label(Pauli p);

/// Full experiment configuration for one mixed-field Ising chain:
///
///   H = -j sum_n Z_n Z_{n+1} - h sum_n Z_n - g sum_n X_n   (open boundary)
///
/// with Alice measuring sigma_a on site_a and Bob rotating about sigma_b
/// on site_b. Couplings are in units of j, times in 1/j.
struct ChainSpec {
    int n_sites = 0;
    double j = 1.0;
    double h = 0.0;
    double g = -1.05;
    int site_a = 2;
    int site_b = 0;  // 0 means "unset"; config parsing defaults it to n_sites - 1
    Pauli sigma_a = Pauli::Z;
    Pauli sigma_b = Pauli::Y;
    double t_max = 10.0;
    double dt = 0.02;

    Eigen::Index dim() const { return Eigen::Index{1} << n_sites; }
    std::vector<double> time_grid() const;

    /// Full protocol-level validation: interior Bob, |site_a - site_b| >= 2
    /// (required so [P_A, H_B] = 0), n_sites in [4, 12], non-identity agent
    /// Paulis, positive dt. Throws validation_error naming the violated
    /// invariant. Bare Hamiltonian builders only require the capacity check.
    void validate() const;
};

struct GroundState {
    double energy = 0.0;
    CVector vector;
    double degeneracy_gap = 0.0;  // lambda_1 - lambda_0
    bool degenerate = false;      // gap < 1e-10
};

/// Tensor product of single-site Paulis, identity on unassigned sites.
/// Sites are 1-based; site 1 is the most significant tensor factor.
CMatrix pauli_string(int n_sites, const std::map<int, Pauli>& assignment);

/// Convenience wrapper for a one-site assignment.
CMatrix single_site(int n_sites, int site, Pauli p);

/// scale * pauli_string(...) added into acc without materializing the term.
void add_pauli_string(CMatrix& acc, Complex scale, int n_sites,
                      const std::map<int, Pauli>& assignment);

/// Chain Hamiltonian. Needs only n_sites, j, h, g from the ChainSpec.
CMatrix build_h(const ChainSpec& spec);

/// Bob's local Hamiltonian -j Z_B (Z_{B-1} + Z_{B+1}) - h Z_B - g X_B.
/// Rejects edge sites: dropping a missing neighbor would silently change
/// what H_B means.
CMatrix build_hb(const ChainSpec& spec);

/// Alice's local Hamiltonian -g X_A (the only chain term that fails to
/// commute with her Z-projector).
CMatrix build_ha(const ChainSpec& spec);

/// P_A(b) = (I + (-1)^b sigma_A) / 2 for outcome b in {0, 1}.
CMatrix projector_a(const ChainSpec& spec, int b);

/// Bob's conditional unitary U_B(b) = exp(-i (-1)^b theta sigma_B),
/// expanded via sigma_B^2 = I.
CMatrix conditional_unitary(const ChainSpec& spec, int b, double theta);

/// Lowest eigenvector under the kernel's deterministic tie-breaking.
GroundState ground_state(const CMatrix& h);
GroundState ground_state(const CMatrix& h, const Spectrum& s);

}  // namespace tqet
