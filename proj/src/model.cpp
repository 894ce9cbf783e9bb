#include "tqet/model.hpp"

#include <cmath>
#include <sstream>

namespace tqet {

Pauli pauli_from_label(char label) {
    switch (label) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: break;
    }
    throw validation_error(std::string("unknown Pauli label '") + label + "'");
}

char pauli_label(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

std::vector<double> ChainSpec::time_grid() const {
    const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    std::vector<double> grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) grid[i] = static_cast<double>(i) * dt;
    return grid;
}

void ChainSpec::validate() const {
    if (n_sites < 4) throw validation_error("n_sites must be >= 4");
    if (n_sites > kMaxSites)
        throw validation_error("n_sites exceeds dense-kernel capacity (n_sites <= 12)");
    if (site_a < 1 || site_a > n_sites)
        throw validation_error("site_a out of range [1, n_sites]");
    if (site_b < 2 || site_b > n_sites - 1)
        throw validation_error("site_b must be interior: 2 <= site_b <= n_sites - 1");
    if (std::abs(site_a - site_b) < 2)
        throw validation_error("|site_a - site_b| >= 2 required so that [P_A, H_B] = 0");
    if (sigma_a == Pauli::I) throw validation_error("sigma_a must be a non-identity Pauli");
    if (sigma_b == Pauli::I) throw validation_error("sigma_b must be a non-identity Pauli");
    if (!(t_max >= 0.0)) throw validation_error("t_max must be >= 0");
    if (!(dt > 0.0)) throw validation_error("dt must be > 0");
}

namespace {

void check_capacity(int n_sites) {
    if (n_sites < 1) throw validation_error("n_sites must be >= 1");
    if (n_sites > kMaxSites)
        throw validation_error("n_sites exceeds dense-kernel capacity (n_sites <= 12)");
}

}  // namespace

void add_pauli_string(CMatrix& acc, Complex scale, int n_sites,
                      const std::map<int, Pauli>& assignment) {
    check_capacity(n_sites);
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    if (acc.rows() != dim || acc.cols() != dim)
        throw validation_error("add_pauli_string: accumulator dimension mismatch");
    for (const auto& [site, p] : assignment) {
        (void)p;
        if (site < 1 || site > n_sites) {
            std::ostringstream msg;
            msg << "pauli_string: site " << site << " out of range [1, " << n_sites << "]";
            throw validation_error(msg.str());
        }
    }
    // A Pauli string has exactly one nonzero per column; scatter it.
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::Index row = col;
        Complex phase = scale;
        for (const auto& [site, p] : assignment) {
            const int bitpos = n_sites - site;  // site 1 = most significant
            const bool bit = (col >> bitpos) & 1;
            switch (p) {
                case Pauli::I: break;
                case Pauli::X:
                    row ^= Eigen::Index{1} << bitpos;
                    break;
                case Pauli::Y:
                    row ^= Eigen::Index{1} << bitpos;
                    phase *= bit ? Complex(0, -1) : Complex(0, 1);
                    break;
                case Pauli::Z:
                    if (bit) phase = -phase;
                    break;
            }
        }
        acc(row, col) += phase;
    }
}

CMatrix pauli_string(int n_sites, const std::map<int, Pauli>& assignment) {
    check_capacity(n_sites);
    CMatrix out = CMatrix::Zero(Eigen::Index{1} << n_sites, Eigen::Index{1} << n_sites);
    add_pauli_string(out, Complex(1, 0), n_sites, assignment);
    return out;
}

CMatrix single_site(int n_sites, int site, Pauli p) {
    return pauli_string(n_sites, {{site, p}});
}

CMatrix build_h(const ChainSpec& spec) {
    check_capacity(spec.n_sites);
    const int n = spec.n_sites;
    CMatrix h = CMatrix::Zero(spec.dim(), spec.dim());
    for (int site = 1; site < n; ++site)
        add_pauli_string(h, -spec.j, n, {{site, Pauli::Z}, {site + 1, Pauli::Z}});
    for (int site = 1; site <= n; ++site) {
        if (spec.h != 0.0) add_pauli_string(h, -spec.h, n, {{site, Pauli::Z}});
        if (spec.g != 0.0) add_pauli_string(h, -spec.g, n, {{site, Pauli::X}});
    }
    return h;
}

CMatrix build_hb(const ChainSpec& spec) {
    check_capacity(spec.n_sites);
    const int n = spec.n_sites;
    const int b = spec.site_b;
    if (b < 2 || b > n - 1)
        throw validation_error("site_b must be interior: 2 <= site_b <= n_sites - 1");
    CMatrix hb = CMatrix::Zero(spec.dim(), spec.dim());
    add_pauli_string(hb, -spec.j, n, {{b - 1, Pauli::Z}, {b, Pauli::Z}});
    add_pauli_string(hb, -spec.j, n, {{b, Pauli::Z}, {b + 1, Pauli::Z}});
    if (spec.h != 0.0) add_pauli_string(hb, -spec.h, n, {{b, Pauli::Z}});
    if (spec.g != 0.0) add_pauli_string(hb, -spec.g, n, {{b, Pauli::X}});
    return hb;
}

CMatrix build_ha(const ChainSpec& spec) {
    check_capacity(spec.n_sites);
    if (spec.site_a < 1 || spec.site_a > spec.n_sites)
        throw validation_error("site_a out of range [1, n_sites]");
    CMatrix ha = CMatrix::Zero(spec.dim(), spec.dim());
    if (spec.g != 0.0) add_pauli_string(ha, -spec.g, spec.n_sites, {{spec.site_a, Pauli::X}});
    return ha;
}

CMatrix projector_a(const ChainSpec& spec, int b) {
    if (b != 0 && b != 1) throw validation_error("projector_a: outcome must be 0 or 1");
    if (spec.sigma_a == Pauli::I)
        throw validation_error("projector_a: sigma_a must be a non-identity Pauli");
    const double sign = (b == 0) ? 0.5 : -0.5;
    CMatrix p = 0.5 * CMatrix::Identity(spec.dim(), spec.dim());
    add_pauli_string(p, sign, spec.n_sites, {{spec.site_a, spec.sigma_a}});
    return p;
}

CMatrix conditional_unitary(const ChainSpec& spec, int b, double theta) {
    if (b != 0 && b != 1) throw validation_error("conditional_unitary: outcome must be 0 or 1");
    const double eps = (b == 0) ? 1.0 : -1.0;
    CMatrix u = std::cos(theta) * CMatrix::Identity(spec.dim(), spec.dim());
    add_pauli_string(u, Complex(0, -eps * std::sin(theta)), spec.n_sites,
                     {{spec.site_b, spec.sigma_b}});
    return u;
}

GroundState ground_state(const CMatrix& h, const Spectrum& s) {
    GroundState gs;
    gs.energy = s.eigenvalues(0);
    gs.vector = s.eigenvectors.col(0);
    gs.degeneracy_gap = s.dim() > 1 ? s.eigenvalues(1) - s.eigenvalues(0) : 0.0;
    gs.degenerate = gs.degeneracy_gap < 1e-10;
    const double residual = (h * gs.vector - gs.energy * gs.vector).norm();
    if (residual > 1e-9)
        throw consistency_error("ground_state: eigenvector residual exceeds 1e-9");
    return gs;
}

GroundState ground_state(const CMatrix& h) { return ground_state(h, eigh(h)); }

}  // namespace tqet
