#include "tqet/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace tqet {

double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const CMatrix& a) {
    return (a - a.adjoint().eval()).cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols();
    const Eigen::Index rb = b.rows(), cb = b.cols();
    CMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

namespace {

// Lexicographic order on phase-fixed columns: first differing entry wins,
// real part before imaginary part.
bool column_less(const CMatrix& v, Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        const Complex& x = v(r, a);
        const Complex& y = v(r, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

// Rotate each column so its first component with magnitude > 1e-8 is real
// positive, then sort the cluster's columns lexicographically.
void canonicalize_cluster(CMatrix& vectors, Eigen::Index lo, Eigen::Index hi) {
    for (Eigen::Index c = lo; c < hi; ++c) {
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            const Complex z = vectors(r, c);
            if (std::abs(z) > 1e-8) {
                vectors.col(c) *= std::conj(z) / std::abs(z);
                break;
            }
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(hi - lo));
    std::iota(order.begin(), order.end(), lo);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return column_less(vectors, a, b); });
    CMatrix sorted(vectors.rows(), hi - lo);
    for (Eigen::Index k = 0; k < hi - lo; ++k)
        sorted.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    vectors.middleCols(lo, hi - lo) = sorted;
}

}  // namespace

Spectrum eigh(const CMatrix& a) {
    if (a.rows() != a.cols()) throw validation_error("eigh: matrix is not square");
    const double defect = hermiticity_defect(a);
    if (defect >= 1e-12) {
        std::ostringstream msg;
        msg << "eigh: input is not Hermitian, max |A - A^dag| = " << defect;
        throw validation_error(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw consistency_error("eigh: eigendecomposition failed to converge");

    Spectrum s{solver.eigenvalues(), solver.eigenvectors()};

    // Deterministic tie-breaking inside degenerate clusters.
    const Eigen::Index n = s.dim();
    Eigen::Index lo = 0;
    while (lo < n) {
        Eigen::Index hi = lo + 1;
        while (hi < n && s.eigenvalues(hi) - s.eigenvalues(lo) < 1e-10) ++hi;
        if (hi - lo > 1) canonicalize_cluster(s.eigenvectors, lo, hi);
        lo = hi;
    }
    return s;
}

CVector evolve_state(const Spectrum& s, const CVector& v, double t) {
    if (v.size() != s.dim()) throw validation_error("evolve_state: dimension mismatch");
    CVector w = s.eigenvectors.adjoint() * v;
    for (Eigen::Index k = 0; k < w.size(); ++k)
        w(k) *= std::polar(1.0, -s.eigenvalues(k) * t);
    return s.eigenvectors * w;
}

CMatrix heisenberg(const Spectrum& s, const CMatrix& o, double t) {
    if (o.rows() != s.dim() || o.cols() != s.dim())
        throw validation_error("heisenberg: dimension mismatch");
    CMatrix a = s.eigenvectors.adjoint() * o * s.eigenvectors;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            a(i, j) *= std::polar(1.0, (s.eigenvalues(i) - s.eigenvalues(j)) * t);
    return s.eigenvectors * a * s.eigenvectors.adjoint();
}

CMatrix evolution_operator(const Spectrum& s, double t) {
    CVector phases(s.dim());
    for (Eigen::Index k = 0; k < s.dim(); ++k)
        phases(k) = std::polar(1.0, -s.eigenvalues(k) * t);
    return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

Complex expectation(const CMatrix& op, const CVector& v) { return v.dot(op * v); }

}  // namespace tqet
