#include <cmath>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"
#include "lasuscc/fock.hpp"

namespace lasuscc {

namespace {

// Orthonormalizes v against the first `m` columns of basis (two passes).
// Returns false if nothing is left.
bool orthonormalize(const Matrix& basis, Eigen::Index m, Vector& v) {
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index k = 0; k < m; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    }
    const double nrm = v.norm();
    if (nrm < 1e-10) return false;
    v /= nrm;
    return true;
}

} // namespace

EigenPair davidson_lowest(const std::function<Vector(const Vector&)>& apply, const Vector& diagonal,
                          const DavidsonSettings& settings) {
    const Eigen::Index dim = diagonal.size();
    if (dim == 0) throw ShapeError("Davidson called on an empty space");
    const Eigen::Index max_sub = std::min<Eigen::Index>(std::max(settings.max_subspace, 4), dim);

    Matrix v(dim, max_sub), av(dim, max_sub);
    Eigen::Index m = 0;
    auto push = [&](Vector x) {
        if (m < max_sub && orthonormalize(v, m, x)) {
            v.col(m) = x;
            av.col(m) = apply(x);
            ++m;
        }
    };

    // Guesses: the lowest diagonal determinant and a dense, symmetry-breaking vector.
    Eigen::Index i0 = 0;
    diagonal.minCoeff(&i0);
    push(Vector::Unit(dim, i0));
    Vector mixed(dim);
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (Eigen::Index i = 0; i < dim; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        mixed[i] = 1e-2 * (static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5);
    }
    mixed[i0] += 1.0;
    push(mixed);

    EigenPair out;
    for (int iter = 0; iter < settings.max_iterations; ++iter) {
        const Matrix sub = v.leftCols(m).transpose() * av.leftCols(m);
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sub + sub.transpose()));
        const double theta = es.eigenvalues()[0];
        const Vector y = es.eigenvectors().col(0);
        Vector x = v.leftCols(m) * y;
        Vector ax = av.leftCols(m) * y;
        Vector r = ax - theta * x;
        const double rnorm = r.norm();
        out.residual_history.push_back(rnorm);
        if (rnorm <= settings.residual_tol) {
            out.value = theta;
            out.vector = x / x.norm();
            out.residual = rnorm;
            return out;
        }
        Vector t(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            double denom = theta - diagonal[i];
            if (std::abs(denom) < 1e-8) denom = denom < 0 ? -1e-8 : 1e-8;
            t[i] = r[i] / denom;
        }
        if (m == max_sub) {
            // Restart from the current Ritz vector and the next-best one.
            Vector x2 = v.leftCols(m) * es.eigenvectors().col(1);
            m = 0;
            push(x);
            push(x2);
        }
        const Eigen::Index before = m;
        push(t);
        if (m == before) push(r); // preconditioned direction collapsed
        if (m == before) {
            throw ConvergenceError(fmt::format("Davidson subspace collapsed at residual {:.3e}", rnorm),
                                   out.residual_history);
        }
    }
    throw ConvergenceError(fmt::format("Davidson did not converge in {} iterations (residual {:.3e})",
                                       settings.max_iterations, out.residual_history.back()),
                           out.residual_history);
}

} // namespace lasuscc
