#include "lasuscc/fock.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

void CIVector::normalize() {
    const double nrm = coeffs.norm();
    if (nrm > 0.0) coeffs /= nrm;
}

namespace {

Matrix normal_order_correction(const Matrix& h, const Tensor4& g) {
    const auto n = static_cast<std::size_t>(h.rows());
    Matrix k = h;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) acc += g(p, r, r, q);
            k(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) -= 0.5 * acc;
        }
    return k;
}

void check_sector(const Sector& s, std::size_t n_orb) {
    if (s.n_orb < 0 || static_cast<std::size_t>(s.n_orb) != n_orb) {
        throw ShapeError(fmt::format("sector has {} orbitals, integrals have {}", s.n_orb, n_orb));
    }
    if (s.n_alpha < 0 || s.n_beta < 0 || s.n_alpha > s.n_orb || s.n_beta > s.n_orb) {
        throw ValidationError(fmt::format("invalid sector ({} orbitals, {} alpha, {} beta)", s.n_orb, s.n_alpha, s.n_beta));
    }
}

} // namespace

CIHamiltonian::CIHamiltonian(const IntegralSet& ints, const Sector& sector)
    : CIHamiltonian(ints.e_core, ints.h, ints.h, ints.g, sector) {}

CIHamiltonian::CIHamiltonian(double e_core, const Matrix& h_alpha, const Matrix& h_beta, const Tensor4& g,
                             const Sector& sector)
    : sector_(sector),
      alpha_((check_sector(sector, g.dim()), sector.n_orb), sector.n_alpha),
      beta_(sector.n_orb, sector.n_beta),
      e_core_(e_core),
      k_alpha_(normal_order_correction(h_alpha, g)),
      k_beta_(normal_order_correction(h_beta, g)),
      h_alpha_(h_alpha),
      h_beta_(h_beta),
      pair_g_(g.as_pair_matrix()),
      g_(&g) {
    const auto n = static_cast<Eigen::Index>(g.dim());
    if (h_alpha.rows() != n || h_alpha.cols() != n || h_beta.rows() != n || h_beta.cols() != n) {
        throw ShapeError("one-body matrix and two-body tensor sizes disagree");
    }
}

Vector CIHamiltonian::apply(std::span<const double> v) const {
    const std::size_t na = alpha_.size(), nb = beta_.size(), dim = na * nb;
    if (v.size() != dim) {
        throw ShapeError(fmt::format("CI vector has length {}, sector dimension is {}", v.size(), dim));
    }
    const auto n = static_cast<std::size_t>(sector_.n_orb);
    Vector sigma = e_core_ * Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(dim));
    Matrix d = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(n * n));

    for (std::size_t ia = 0; ia < na; ++ia) {
        for (const auto& mv : alpha_.moves(ia)) {
            const double k = k_alpha_(mv.p, mv.q) * mv.sign;
            const auto col = static_cast<Eigen::Index>(mv.p * n + mv.q);
            const std::size_t src = ia * nb, dst = static_cast<std::size_t>(mv.target) * nb;
            for (std::size_t ib = 0; ib < nb; ++ib) {
                sigma[static_cast<Eigen::Index>(dst + ib)] += k * v[src + ib];
                d(static_cast<Eigen::Index>(dst + ib), col) += mv.sign * v[src + ib];
            }
        }
    }
    for (std::size_t ib = 0; ib < nb; ++ib) {
        for (const auto& mv : beta_.moves(ib)) {
            const double k = k_beta_(mv.p, mv.q) * mv.sign;
            const auto col = static_cast<Eigen::Index>(mv.p * n + mv.q);
            for (std::size_t ia = 0; ia < na; ++ia) {
                const std::size_t src = ia * nb + ib, dst = ia * nb + mv.target;
                sigma[static_cast<Eigen::Index>(dst)] += k * v[src];
                d(static_cast<Eigen::Index>(dst), col) += mv.sign * v[src];
            }
        }
    }

    const Matrix gd = d * pair_g_;

    for (std::size_t ia = 0; ia < na; ++ia) {
        for (const auto& mv : alpha_.moves(ia)) {
            const auto col = static_cast<Eigen::Index>(mv.p * n + mv.q);
            const double s = 0.5 * mv.sign;
            const std::size_t src = ia * nb, dst = static_cast<std::size_t>(mv.target) * nb;
            for (std::size_t ib = 0; ib < nb; ++ib)
                sigma[static_cast<Eigen::Index>(dst + ib)] += s * gd(static_cast<Eigen::Index>(src + ib), col);
        }
    }
    for (std::size_t ib = 0; ib < nb; ++ib) {
        for (const auto& mv : beta_.moves(ib)) {
            const auto col = static_cast<Eigen::Index>(mv.p * n + mv.q);
            const double s = 0.5 * mv.sign;
            for (std::size_t ia = 0; ia < na; ++ia)
                sigma[static_cast<Eigen::Index>(ia * nb + mv.target)] += s * gd(static_cast<Eigen::Index>(ia * nb + ib), col);
        }
    }
    return sigma;
}

Vector CIHamiltonian::diagonal() const {
    const std::size_t na = alpha_.size(), nb = beta_.size();
    const auto n = sector_.n_orb;
    const auto& g = *g_;
    Vector diag(static_cast<Eigen::Index>(na * nb));
    std::vector<int> occ_a, occ_b;
    for (std::size_t ia = 0; ia < na; ++ia) {
        occ_a.clear();
        for (int p = 0; p < n; ++p)
            if ((alpha_.strings()[ia] >> p) & 1) occ_a.push_back(p);
        for (std::size_t ib = 0; ib < nb; ++ib) {
            occ_b.clear();
            for (int p = 0; p < n; ++p)
                if ((beta_.strings()[ib] >> p) & 1) occ_b.push_back(p);
            double e = e_core_;
            for (int p : occ_a) e += h_alpha_(p, p);
            for (int p : occ_b) e += h_beta_(p, p);
            auto same = [&](const std::vector<int>& occ) {
                for (int p : occ)
                    for (int q : occ) {
                        const auto up = static_cast<std::size_t>(p), uq = static_cast<std::size_t>(q);
                        e += 0.5 * (g(up, up, uq, uq) - g(up, uq, uq, up));
                    }
            };
            same(occ_a);
            same(occ_b);
            for (int p : occ_a)
                for (int q : occ_b)
                    e += g(static_cast<std::size_t>(p), static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                           static_cast<std::size_t>(q));
            diag[static_cast<Eigen::Index>(ia * nb + ib)] = e;
        }
    }
    return diag;
}

Matrix CIHamiltonian::dense() const {
    const auto dim = static_cast<Eigen::Index>(this->dim());
    Matrix out(dim, dim);
    Vector unit = Vector::Zero(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        unit[j] = 1.0;
        out.col(j) = apply({unit.data(), static_cast<std::size_t>(dim)});
        unit[j] = 0.0;
    }
    return 0.5 * (out + out.transpose());
}

Vector apply_hamiltonian(const IntegralSet& ints, const Sector& sector, std::span<const double> v) {
    return CIHamiltonian(ints, sector).apply(v);
}

CasciResult casci_ground_state(const IntegralSet& ints, const Sector& sector, const CasciSettings& settings) {
    return casci_ground_state(CIHamiltonian(ints, sector), settings);
}

CasciResult casci_ground_state(const CIHamiltonian& ham, const CasciSettings& settings) {
    CasciResult res;
    res.state.sector = ham.sector();
    const std::size_t dim = ham.dim();
    auto apply = [&ham](const Vector& x) { return ham.apply({x.data(), static_cast<std::size_t>(x.size())}); };
    if (dim <= settings.dense_threshold && !settings.force_davidson) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(ham.dense());
        res.energy = es.eigenvalues()[0];
        res.state.coeffs = es.eigenvectors().col(0);
    } else {
        EigenPair ep = davidson_lowest(apply, ham.diagonal(), settings.davidson);
        res.energy = ep.value;
        res.state.coeffs = ep.vector;
        res.used_davidson = true;
    }
    // Deterministic global sign: largest-magnitude coefficient positive.
    Eigen::Index imax = 0;
    res.state.coeffs.cwiseAbs().maxCoeff(&imax);
    if (res.state.coeffs[imax] < 0.0) res.state.coeffs *= -1.0;
    res.state.normalize();
    res.energy = res.state.coeffs.dot(apply(res.state.coeffs));
    res.residual = (apply(res.state.coeffs) - res.energy * res.state.coeffs).norm();
    return res;
}

Rdm1 make_rdm1(const CIVector& state) {
    const Sector& s = state.sector;
    if (state.coeffs.size() != static_cast<Eigen::Index>(s.dim())) {
        throw ShapeError("CI vector length does not match its sector");
    }
    const StringSpace alpha(s.n_orb, s.n_alpha), beta(s.n_orb, s.n_beta);
    const std::size_t na = alpha.size(), nb = beta.size();
    const auto& c = state.coeffs;
    Rdm1 rdm{Matrix::Zero(s.n_orb, s.n_orb), Matrix::Zero(s.n_orb, s.n_orb)};
    for (std::size_t ia = 0; ia < na; ++ia)
        for (const auto& mv : alpha.moves(ia)) {
            double acc = 0.0;
            for (std::size_t ib = 0; ib < nb; ++ib)
                acc += c[static_cast<Eigen::Index>(mv.target * nb + ib)] * c[static_cast<Eigen::Index>(ia * nb + ib)];
            rdm.alpha(mv.p, mv.q) += mv.sign * acc;
        }
    for (std::size_t ib = 0; ib < nb; ++ib)
        for (const auto& mv : beta.moves(ib)) {
            double acc = 0.0;
            for (std::size_t ia = 0; ia < na; ++ia)
                acc += c[static_cast<Eigen::Index>(ia * nb + mv.target)] * c[static_cast<Eigen::Index>(ia * nb + ib)];
            rdm.beta(mv.p, mv.q) += mv.sign * acc;
        }
    return rdm;
}

double s_plus_norm2(const Sector& s, std::span<const double> v) {
    if (v.size() != s.dim()) throw ShapeError("CI vector length does not match its sector");
    if (s.n_beta == 0 || s.n_alpha == s.n_orb) return 0.0;
    const auto alpha = enumerate_strings(s.n_orb, s.n_alpha);
    const auto beta = enumerate_strings(s.n_orb, s.n_beta);
    const Sector t{s.n_orb, s.n_alpha + 1, s.n_beta - 1};
    const std::size_t nb = beta.size(), nbt = t.beta_strings();
    Vector out = Vector::Zero(static_cast<Eigen::Index>(t.dim()));
    for (std::size_t ia = 0; ia < alpha.size(); ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib) {
            const double x = v[ia * nb + ib];
            if (x == 0.0) continue;
            const Bitmask a = alpha[ia], b = beta[ib];
            Bitmask movable = b & ~a;
            while (movable) {
                const int p = std::countr_zero(movable);
                movable &= movable - 1;
                const Bitmask below = (Bitmask{1} << p) - 1;
                const int parity = s.n_alpha + std::popcount(b & below) + std::popcount(a & below);
                const Bitmask na_ = a | (Bitmask{1} << p), nb_ = b & ~(Bitmask{1} << p);
                out[static_cast<Eigen::Index>(string_rank(na_) * nbt + string_rank(nb_))] += (parity & 1) ? -x : x;
            }
        }
    return out.squaredNorm();
}

double s_squared_expectation(const CIVector& state) {
    const double sz = 0.5 * (state.sector.n_alpha - state.sector.n_beta);
    const double nrm2 = state.coeffs.squaredNorm();
    return s_plus_norm2(state.sector, {state.coeffs.data(), static_cast<std::size_t>(state.coeffs.size())}) / nrm2 +
           sz * sz + sz;
}

} // namespace lasuscc
