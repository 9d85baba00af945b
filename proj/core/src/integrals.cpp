#include "lasuscc/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

void Tensor4::set_symmetric(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double v) noexcept {
    (*this)(p, q, r, s) = v;
    (*this)(q, p, r, s) = v;
    (*this)(p, q, s, r) = v;
    (*this)(q, p, s, r) = v;
    (*this)(r, s, p, q) = v;
    (*this)(s, r, p, q) = v;
    (*this)(r, s, q, p) = v;
    (*this)(s, r, q, p) = v;
}

int Geometry::electron_count() const {
    // Only hydrogen reaches this point; other elements are rejected earlier.
    return static_cast<int>(atoms.size()) - charge;
}

IntegralSet IntegralSet::zeros(std::size_t n_orb, int n_alpha, int n_beta) {
    IntegralSet ints;
    ints.n_orb = n_orb;
    ints.n_alpha = n_alpha;
    ints.n_beta = n_beta;
    ints.h = Matrix::Zero(static_cast<Eigen::Index>(n_orb), static_cast<Eigen::Index>(n_orb));
    ints.g = Tensor4(n_orb);
    return ints;
}

void IntegralSet::check(double tol) const {
    const auto n = static_cast<Eigen::Index>(n_orb);
    if (h.rows() != n || h.cols() != n || g.dim() != n_orb) {
        throw ShapeError(fmt::format("integral set dimensions disagree with n_orb={}", n_orb));
    }
    if (!std::isfinite(e_core) || !h.allFinite()) {
        throw ValidationError("integral set contains non-finite one-body entries");
    }
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > tol) {
        throw ValidationError("one-body integrals are not symmetric");
    }
    for (std::size_t p = 0; p < n_orb; ++p)
        for (std::size_t q = 0; q < n_orb; ++q)
            for (std::size_t r = 0; r < n_orb; ++r)
                for (std::size_t s = 0; s < n_orb; ++s) {
                    const double v = g(p, q, r, s);
                    if (!std::isfinite(v)) {
                        throw ValidationError("integral set contains non-finite two-body entries");
                    }
                    const double dev = std::max({std::abs(v - g(q, p, r, s)), std::abs(v - g(p, q, s, r)),
                                                 std::abs(v - g(r, s, p, q))});
                    if (dev > tol) {
                        throw ValidationError(
                            fmt::format("two-body integrals break 8-fold symmetry at ({}{}|{}{})", p, q, r, s));
                    }
                }
}

namespace {

// STO-3G hydrogen, zeta = 1.24 (Hehre, Stewart & Pople, J. Chem. Phys. 51, 2657 (1969),
// as distributed by the EMSL/BSE basis set library).
constexpr std::array<double, 3> kSto3gExponents = {3.42525091, 0.62391373, 0.16885540};
constexpr std::array<double, 3> kSto3gCoefficients = {0.15432897, 0.53532814, 0.44463454};

struct Primitive {
    double exponent;
    double weight; // contraction coefficient times primitive normalization
};

struct ContractedS {
    Eigen::Vector3d center; // bohr
    std::array<Primitive, 3> prims;
};

double overlap_prim(double a, double b, double r2) {
    const double p = a + b;
    return std::pow(M_PI / p, 1.5) * std::exp(-a * b / p * r2);
}

ContractedS make_hydrogen_s(const Eigen::Vector3d& center) {
    ContractedS f{center, {}};
    for (std::size_t i = 0; i < 3; ++i) {
        const double a = kSto3gExponents[i];
        f.prims[i] = {a, kSto3gCoefficients[i] * std::pow(2.0 * a / M_PI, 0.75)};
    }
    double self = 0.0;
    for (const auto& x : f.prims)
        for (const auto& y : f.prims)
            self += x.weight * y.weight * overlap_prim(x.exponent, y.exponent, 0.0);
    const double scale = 1.0 / std::sqrt(self);
    for (auto& x : f.prims) {
        x.weight *= scale;
    }
    return f;
}

Matrix two_electron_jk(const Tensor4& eri, const Matrix& density, bool exchange) {
    const auto n = static_cast<std::size_t>(density.rows());
    Matrix out = Matrix::Zero(density.rows(), density.cols());
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s)
                    acc += (exchange ? eri(p, r, q, s) : eri(p, q, r, s)) * density(r, s);
            out(p, q) = acc;
        }
    return out;
}

Matrix closed_shell_fock(const AoIntegrals& ao, const Matrix& density) {
    return ao.h_core + two_electron_jk(ao.eri, density, false) - 0.5 * two_electron_jk(ao.eri, density, true);
}

} // namespace

AoIntegrals build_sto3g_hydrogen(const Geometry& geometry) {
    if (geometry.atoms.empty()) {
        throw ValidationError("geometry has no atoms");
    }
    std::vector<ContractedS> basis;
    std::vector<Eigen::Vector3d> centers;
    for (std::size_t i = 0; i < geometry.atoms.size(); ++i) {
        const auto& atom = geometry.atoms[i];
        std::string el = atom.element;
        std::transform(el.begin(), el.end(), el.begin(), [](unsigned char c) { return std::toupper(c); });
        if (el != "H") {
            throw UnsupportedElementError(fmt::format(
                "atom {} is '{}': the native integral engine only supports hydrogen; supply an FCIDUMP instead",
                i, atom.element));
        }
        for (double x : atom.position) {
            if (!std::isfinite(x)) {
                throw ValidationError(fmt::format("atom {} has a non-finite coordinate", i));
            }
        }
        Eigen::Vector3d r(atom.position[0], atom.position[1], atom.position[2]);
        for (std::size_t j = 0; j < centers.size(); ++j) {
            if ((centers[j] / kBohrPerAngstrom - r).norm() < 1e-6) {
                throw DegenerateGeometryError(fmt::format("atoms {} and {} coincide", j, i));
            }
        }
        centers.push_back(r * kBohrPerAngstrom);
        basis.push_back(make_hydrogen_s(centers.back()));
    }

    const int n_elec = geometry.electron_count();
    const auto nbf = static_cast<Eigen::Index>(basis.size());
    if (n_elec < 0 || n_elec > 2 * nbf) {
        throw ValidationError(fmt::format("charge {} leaves {} electrons for {} orbitals", geometry.charge, n_elec, nbf));
    }

    AoIntegrals ao;
    ao.n_electrons = n_elec;
    ao.overlap = Matrix::Zero(nbf, nbf);
    ao.kinetic = Matrix::Zero(nbf, nbf);
    ao.nuclear = Matrix::Zero(nbf, nbf);

    for (Eigen::Index i = 0; i < nbf; ++i) {
        for (Eigen::Index j = 0; j < nbf; ++j) {
            const auto& fa = basis[static_cast<std::size_t>(i)];
            const auto& fb = basis[static_cast<std::size_t>(j)];
            const double r2 = (fa.center - fb.center).squaredNorm();
            double s = 0.0, t = 0.0, v = 0.0;
            for (const auto& pa : fa.prims) {
                for (const auto& pb : fb.prims) {
                    const double a = pa.exponent, b = pb.exponent, p = a + b;
                    const double w = pa.weight * pb.weight;
                    const double sab = overlap_prim(a, b, r2);
                    s += w * sab;
                    t += w * a * b / p * (3.0 - 2.0 * a * b / p * r2) * sab;
                    const Eigen::Vector3d centroid = (a * fa.center + b * fb.center) / p;
                    const double kab = std::exp(-a * b / p * r2);
                    for (const auto& c : centers) {
                        v -= w * 2.0 * M_PI / p * kab * boys_f0(p * (centroid - c).squaredNorm());
                    }
                }
            }
            ao.overlap(i, j) = s;
            ao.kinetic(i, j) = t;
            ao.nuclear(i, j) = v;
        }
    }
    ao.h_core = ao.kinetic + ao.nuclear;

    const auto n = static_cast<std::size_t>(nbf);
    ao.eri = Tensor4(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l <= k; ++l) {
                    if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) {
                        continue;
                    }
                    const auto &fi = basis[i], &fj = basis[j], &fk = basis[k], &fl = basis[l];
                    const double rij = (fi.center - fj.center).squaredNorm();
                    const double rkl = (fk.center - fl.center).squaredNorm();
                    double acc = 0.0;
                    for (const auto& pi : fi.prims)
                        for (const auto& pj : fj.prims) {
                            const double p = pi.exponent + pj.exponent;
                            const Eigen::Vector3d cp = (pi.exponent * fi.center + pj.exponent * fj.center) / p;
                            const double kij = std::exp(-pi.exponent * pj.exponent / p * rij);
                            for (const auto& pk : fk.prims)
                                for (const auto& pl : fl.prims) {
                                    const double q = pk.exponent + pl.exponent;
                                    const Eigen::Vector3d cq =
                                        (pk.exponent * fk.center + pl.exponent * fl.center) / q;
                                    const double kkl = std::exp(-pk.exponent * pl.exponent / q * rkl);
                                    const double pref = 2.0 * std::pow(M_PI, 2.5) / (p * q * std::sqrt(p + q));
                                    acc += pi.weight * pj.weight * pk.weight * pl.weight * pref * kij * kkl *
                                           boys_f0(p * q / (p + q) * (cp - cq).squaredNorm());
                                }
                        }
                    ao.eri.set_symmetric(i, j, k, l, acc);
                }

    double enuc = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            enuc += 1.0 / (centers[i] - centers[j]).norm();
    ao.nuclear_repulsion = enuc;
    return ao;
}

Matrix inverse_sqrt(const Matrix& s, double min_eig) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    const Vector& w = es.eigenvalues();
    if (w.size() > 0 && w.minCoeff() < min_eig) {
        throw IllConditionedBasisError(
            fmt::format("overlap matrix is singular or ill-conditioned (smallest eigenvalue {:.3e})", w.minCoeff()));
    }
    return es.eigenvectors() * w.cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

ScfResult rhf(const AoIntegrals& ao, const ScfSettings& settings) {
    if (ao.n_electrons % 2 != 0) {
        throw ValidationError(fmt::format("RHF needs a closed shell, got {} electrons", ao.n_electrons));
    }
    const int n_occ = ao.n_electrons / 2;
    const Matrix x = inverse_sqrt(ao.overlap);

    auto diagonalize = [&](const Matrix& fock, ScfResult& out) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(x.transpose() * fock * x);
        out.orbital_energies = es.eigenvalues();
        out.coefficients = x * es.eigenvectors();
    };
    auto density_of = [&](const Matrix& c) -> Matrix {
        const Matrix occ = c.leftCols(n_occ);
        return 2.0 * occ * occ.transpose();
    };

    // Superposition of atomic densities: for hydrogen, each normalized AO carries
    // its share of the electrons. The bare core-Hamiltonian guess can lock the
    // iterations onto an excited SCF solution for longer chains.
    ScfResult res;
    const auto nao = static_cast<double>(ao.overlap.rows());
    Matrix density = Matrix::Identity(ao.overlap.rows(), ao.overlap.cols()) * (ao.n_electrons / nao);
    double energy_prev = 0.0;

    for (int iter = 1; iter <= settings.max_iter; ++iter) {
        const Matrix fock = closed_shell_fock(ao, density);
        const double energy = 0.5 * (density.cwiseProduct(ao.h_core + fock)).sum() + ao.nuclear_repulsion;
        res.energy_trace.push_back(energy);
        diagonalize(fock, res);
        Matrix new_density = density_of(res.coefficients);
        if (settings.damping > 0.0) {
            new_density = (1.0 - settings.damping) * new_density + settings.damping * density;
        }
        const double rms = std::sqrt((new_density - density).squaredNorm() / static_cast<double>(density.size()));
        const double de = energy - energy_prev;
        density = new_density;
        energy_prev = energy;
        if (iter > 1 && std::abs(de) < settings.energy_tol && rms < settings.density_rms_tol) {
            res.fock = closed_shell_fock(ao, density);
            res.density = density;
            res.energy = 0.5 * (density.cwiseProduct(ao.h_core + res.fock)).sum() + ao.nuclear_repulsion;
            res.iterations = iter;
            return res;
        }
    }
    const double last_change =
        res.energy_trace.size() > 1 ? res.energy_trace.back() - res.energy_trace[res.energy_trace.size() - 2] : 0.0;
    throw ConvergenceError(fmt::format("RHF did not converge in {} iterations (last energy change {:.3e})",
                                       settings.max_iter, last_change),
                           {last_change});
}

Matrix localize_per_fragment(const Matrix& overlap, const Matrix& fock,
                             const std::vector<std::vector<int>>& fragment_aos) {
    const Eigen::Index n = overlap.rows();
    if (overlap.cols() != n || fock.rows() != n || fock.cols() != n) {
        throw ShapeError("overlap and Fock matrices must be square and of equal size");
    }
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < fragment_aos.size(); ++k) {
        for (int mu : fragment_aos[k]) {
            if (mu < 0 || mu >= n) {
                throw ValidationError(fmt::format("fragment {} lists AO {} outside 0..{}", k, mu, n - 1));
            }
            if (owner[static_cast<std::size_t>(mu)] != -1) {
                throw ValidationError(fmt::format("AO {} is assigned to fragments {} and {}", mu,
                                                  owner[static_cast<std::size_t>(mu)], k));
            }
            owner[static_cast<std::size_t>(mu)] = static_cast<int>(k);
        }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
        throw ValidationError("every AO must be assigned to a fragment");
    }

    const Matrix x = inverse_sqrt(overlap);
    const Matrix f_orth = x.transpose() * fock * x;
    Matrix rotation = Matrix::Zero(n, n);
    for (const auto& aos : fragment_aos) {
        std::vector<int> idx(aos);
        std::sort(idx.begin(), idx.end());
        const auto m = static_cast<Eigen::Index>(idx.size());
        Matrix block(m, m);
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b)
                block(a, b) = f_orth(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
        Eigen::SelfAdjointEigenSolver<Matrix> es(block);
        Matrix vecs = es.eigenvectors();
        for (Eigen::Index c = 0; c < m; ++c) {
            Eigen::Index imax = 0;
            vecs.col(c).cwiseAbs().maxCoeff(&imax);
            if (vecs(imax, c) < 0.0) {
                vecs.col(c) *= -1.0;
            }
        }
        for (Eigen::Index c = 0; c < m; ++c)
            for (Eigen::Index a = 0; a < m; ++a)
                rotation(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(c)]) = vecs(a, c);
    }
    return x * rotation;
}

IntegralSet ao_to_mo(const AoIntegrals& ao, const Matrix& c, int n_active_electrons, std::size_t n_frozen) {
    const Eigen::Index nao = ao.h_core.rows();
    if (c.rows() != nao || ao.overlap.rows() != nao || ao.eri.dim() != static_cast<std::size_t>(nao)) {
        throw ShapeError(fmt::format("coefficient matrix has {} rows but the AO basis has {} functions", c.rows(), nao));
    }
    if (static_cast<Eigen::Index>(n_frozen) > c.cols()) {
        throw ShapeError("more frozen orbitals than columns in the coefficient matrix");
    }
    if (n_active_electrons < 0 || n_active_electrons % 2 != 0) {
        throw ValidationError("ao_to_mo assigns a closed-shell electron count to the active space");
    }
    const auto nf = static_cast<Eigen::Index>(n_frozen);
    const Matrix c_core = c.leftCols(nf);
    const Matrix c_act = c.rightCols(c.cols() - nf);
    const auto m = static_cast<std::size_t>(c_act.cols());

    const Matrix d_core = 2.0 * c_core * c_core.transpose();
    const Matrix f_core = closed_shell_fock(ao, d_core);

    IntegralSet out = IntegralSet::zeros(m, n_active_electrons / 2, n_active_electrons / 2);
    out.e_core = ao.nuclear_repulsion + 0.5 * (d_core.cwiseProduct(ao.h_core + f_core)).sum();
    out.h = c_act.transpose() * f_core * c_act;
    out.h = 0.5 * (out.h + out.h.transpose()).eval();

    // Quarter transforms, one index at a time.
    const auto n = static_cast<std::size_t>(nao);
    std::vector<double> t1(m * n * n * n, 0.0), t2(m * m * n * n, 0.0), t3(m * m * m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < n; ++p) {
            const double cpi = c_act(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i));
            if (cpi == 0.0) continue;
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t s = 0; s < n; ++s)
                        t1[((i * n + q) * n + r) * n + s] += cpi * ao.eri(p, q, r, s);
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t q = 0; q < n; ++q) {
                const double cqj = c_act(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j));
                if (cqj == 0.0) continue;
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t s = 0; s < n; ++s)
                        t2[((i * m + j) * n + r) * n + s] += cqj * t1[((i * n + q) * n + r) * n + s];
            }
    for (std::size_t ij = 0; ij < m * m; ++ij)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t r = 0; r < n; ++r) {
                const double crk = c_act(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
                if (crk == 0.0) continue;
                for (std::size_t s = 0; s < n; ++s)
                    t3[(ij * m + k) * n + s] += crk * t2[(ij * n + r) * n + s];
            }
    auto& g = out.g.data();
    for (std::size_t ijk = 0; ijk < m * m * m; ++ijk)
        for (std::size_t l = 0; l < m; ++l) {
            double acc = 0.0;
            for (std::size_t s = 0; s < n; ++s)
                acc += c_act(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(l)) * t3[ijk * n + s];
            g[ijk * m + l] = acc;
        }
    // Symmetrize away the rounding noise so the 8-fold invariant holds to the last bit.
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q <= p; ++q)
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s <= r; ++s) {
                    if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
                    const double v = (out.g(p, q, r, s) + out.g(q, p, r, s) + out.g(p, q, s, r) +
                                      out.g(q, p, s, r) + out.g(r, s, p, q) + out.g(s, r, p, q) +
                                      out.g(r, s, q, p) + out.g(s, r, q, p)) / 8.0;
                    out.g.set_symmetric(p, q, r, s, v);
                }
    return out;
}

double determinant_energy(const IntegralSet& ints, int n_occ_alpha, int n_occ_beta) {
    double e = ints.e_core;
    std::vector<std::pair<int, int>> occ; // (orbital, spin)
    for (int i = 0; i < n_occ_alpha; ++i) occ.emplace_back(i, 0);
    for (int i = 0; i < n_occ_beta; ++i) occ.emplace_back(i, 1);
    for (auto [i, si] : occ) {
        e += ints.h(i, i);
        for (auto [j, sj] : occ) {
            const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            e += 0.5 * ints.g(ui, ui, uj, uj);
            if (si == sj) e -= 0.5 * ints.g(ui, uj, uj, ui);
        }
    }
    return e;
}

Geometry hydrogen_dimer_ladder(int k, double separation, double bond) {
    Geometry geo;
    for (int i = 0; i < k; ++i) {
        const double x = separation * i;
        geo.atoms.push_back({"H", {x, 0.0, 0.0}});
        geo.atoms.push_back({"H", {x, 0.0, bond}});
    }
    return geo;
}

} // namespace lasuscc
