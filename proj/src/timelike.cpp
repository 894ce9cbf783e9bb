#include "tqet/timelike.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tqet/kernel.hpp"
#include "tqet/parallel.hpp"

namespace tqet {

OperatorBasis site_basis(int n_sites, int site) {
    if (site < 1 || site > n_sites) {
        std::ostringstream msg;
        msg << "basis site " << site << " out of range [1, " << n_sites << "]";
        throw validation_error(msg.str());
    }
    OperatorBasis basis;
    basis.site = site;
    const double norm = 1.0 / std::sqrt(2.0);
    const std::array<Pauli, 4> labels = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (int k = 0; k < 4; ++k) {
        basis.elements[k] = norm * pauli_string(n_sites, {{site, labels[k]}});
    }
    return basis;
}

CorrelatorMatrix correlator_matrix(const GroundState& gs, const Spectrum& s,
                                   const OperatorBasis& basis_a,
                                   const OperatorBasis& basis_b, double t) {
    // Tr[|g><g| U^dag O_a U O_b] = e^{i E0 t} (O_a g)^dag U(t) (O_b g)
    CorrelatorMatrix c;
    const Complex phase = std::exp(Complex(0.0, gs.energy * t));
    std::array<CVector, 4> left;
    std::array<CVector, 4> right;
    for (int k = 0; k < 4; ++k) {
        left[k] = basis_a.elements[k] * gs.vector;
        right[k] = evolve_state(s, basis_b.elements[k] * gs.vector, t);
    }
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            c(a, b) = phase * left[a].dot(right[b]);
        }
    }
    return c;
}

CorrelatorMatrix correlator_matrix(const BranchEnsemble& ensemble, const Spectrum& s,
                                   const OperatorBasis& basis_a,
                                   const OperatorBasis& basis_b, double t) {
    // Tr[rho_A U^dag O_a U O_b] = sum_b' (O_a U v)^dag (U O_b v)
    CorrelatorMatrix c = CorrelatorMatrix::Zero();
    for (const auto& v : ensemble.branch_vectors) {
        const CVector w = evolve_state(s, v, t);
        std::array<CVector, 4> left;
        std::array<CVector, 4> right;
        for (int k = 0; k < 4; ++k) {
            left[k] = basis_a.elements[k] * w;
            right[k] = evolve_state(s, basis_b.elements[k] * v, t);
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                c(a, b) += left[a].dot(right[b]);
            }
        }
    }
    return c;
}

Complex tr_t2(const CorrelatorMatrix& c) {
    Complex acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            acc += c(a, b) * c(a, b);
        }
    }
    return acc;
}

double tr_ttdag(const CorrelatorMatrix& c) {
    return c.squaredNorm();
}

CorrelatorSeries run_series(const ChainSpec& spec, const GroundState& gs,
                            const BranchEnsemble& ensemble, const Spectrum& s,
                            int workers) {
    spec.validate();
    CorrelatorSeries series;
    series.times = spec.time_grid();
    const int n = static_cast<int>(series.times.size());
    series.c_rho_a.resize(n);
    series.c_rho_0.resize(n);
    series.tr_t2_rho_a.resize(n);
    series.tr_t2_rho_0.resize(n);
    series.tr_ttdag_rho_a.resize(n);
    series.tr_ttdag_rho_0.resize(n);
    series.delta_tr_t2.resize(n);
    const OperatorBasis basis_a = site_basis(spec.n_sites, spec.site_a);
    const OperatorBasis basis_b = site_basis(spec.n_sites, spec.site_b);
    parallel_for(n, workers, [&](int i) {
        const double t = series.times[i];
        series.c_rho_a[i] = correlator_matrix(ensemble, s, basis_a, basis_b, t);
        series.c_rho_0[i] = correlator_matrix(gs, s, basis_a, basis_b, t);
        series.tr_t2_rho_a[i] = tr_t2(series.c_rho_a[i]);
        series.tr_t2_rho_0[i] = tr_t2(series.c_rho_0[i]);
        series.tr_ttdag_rho_a[i] = tr_ttdag(series.c_rho_a[i]);
        series.tr_ttdag_rho_0[i] = tr_ttdag(series.c_rho_0[i]);
        series.delta_tr_t2[i] = series.tr_t2_rho_a[i] - series.tr_t2_rho_0[i];
    });
    return series;
}

namespace {

constexpr double kPlateauTol = 1e-12;

enum class ExtremumKind { Any, Minimum };

// Three-point extremum scan that merges runs of equal values (within
// kPlateauTol between neighbors) into plateaus reported at their midpoint.
std::vector<double> scan_extrema(const std::vector<double>& series, double dt,
                                 ExtremumKind kind) {
    std::vector<double> out;
    const int n = static_cast<int>(series.size());
    int l = 0;
    while (l < n) {
        int r = l;
        while (r + 1 < n && std::abs(series[r + 1] - series[l]) <= kPlateauTol) ++r;
        if (l > 0 && r < n - 1) {
            const double prev = series[l - 1];
            const double next = series[r + 1];
            const double v = series[l];
            const bool is_min = prev > v && next > v;
            const bool is_max = prev < v && next < v;
            if (is_min || (kind == ExtremumKind::Any && is_max)) {
                out.push_back(0.5 * (l + r) * dt);
            }
        }
        l = r + 1;
    }
    return out;
}

}  // namespace

std::vector<double> critical_points(const std::vector<double>& series, double dt) {
    if (series.size() < 3) {
        throw validation_error("critical_points needs a series of length >= 3");
    }
    return scan_extrema(series, dt, ExtremumKind::Any);
}

Scalarization scalarization_from_label(const std::string& label) {
    if (label == "abs") return Scalarization::Abs;
    if (label == "re") return Scalarization::Re;
    if (label == "im") return Scalarization::Im;
    throw validation_error("unknown scalarization '" + label + "' (abs, re, im)");
}

std::string scalarization_label(Scalarization s) {
    switch (s) {
        case Scalarization::Abs: return "abs";
        case Scalarization::Re: return "re";
        case Scalarization::Im: return "im";
    }
    return "abs";
}

SyncReport sync_analysis(const ProtocolTrace& trace, const CorrelatorSeries& series,
                         Scalarization scalarization) {
    const size_t n = trace.points.size();
    if (n != series.times.size()) {
        throw validation_error("trace and series are on different time grids");
    }
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(trace.points[i].t - series.times[i]) > 1e-12) {
            throw validation_error("trace and series are on different time grids");
        }
    }
    const double dt = trace.spec.dt;

    std::vector<double> de(n);
    for (size_t i = 0; i < n; ++i) de[i] = trace.points[i].de_min;
    const std::vector<double> minima = scan_extrema(de, dt, ExtremumKind::Minimum);

    std::vector<double> scalar(n);
    for (size_t i = 0; i < n; ++i) {
        const Complex z = series.delta_tr_t2[i];
        switch (scalarization) {
            case Scalarization::Abs: scalar[i] = std::abs(z); break;
            case Scalarization::Re: scalar[i] = z.real(); break;
            case Scalarization::Im: scalar[i] = z.imag(); break;
        }
    }
    const std::vector<double> criticals = scan_extrema(scalar, dt, ExtremumKind::Any);

    SyncReport report;
    if (minima.empty()) {
        report.flag = "no_minima";
        return report;
    }
    if (criticals.empty()) {
        report.flag = "no_critical_points";
        return report;
    }
    std::vector<double> gaps;
    gaps.reserve(minima.size());
    for (const double t_min : minima) {
        double best_t = criticals.front();
        double best_gap = std::abs(t_min - best_t);
        for (const double t_c : criticals) {
            const double gap = std::abs(t_min - t_c);
            if (gap < best_gap) {
                best_gap = gap;
                best_t = t_c;
            }
        }
        report.pairs.push_back({t_min, best_t, best_gap});
        gaps.push_back(best_gap);
    }
    std::sort(gaps.begin(), gaps.end());
    const size_t mid = gaps.size() / 2;
    report.median_gap = (gaps.size() % 2 == 1) ? gaps[mid]
                                               : 0.5 * (gaps[mid - 1] + gaps[mid]);
    report.max_gap = gaps.back();
    return report;
}

}  // namespace tqet
