#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lasuscc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kBohrPerAngstrom = 1.0 / 0.52917721092;

/// Dense 4-index tensor of size n^4 with row-major (p,q,r,s) addressing.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

    std::size_t dim() const noexcept { return n_; }
    double& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) noexcept {
        return data_[((p * n_ + q) * n_ + r) * n_ + s];
    }
    double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const noexcept {
        return data_[((p * n_ + q) * n_ + r) * n_ + s];
    }
    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    /// View as an (n^2 x n^2) matrix with compound indices (pq),(rs).
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
    as_pair_matrix() const {
        return {data_.data(), static_cast<Eigen::Index>(n_ * n_), static_cast<Eigen::Index>(n_ * n_)};
    }

    /// Stores v at (pq|rs) and all seven permutation-equivalent positions.
    void set_symmetric(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double v) noexcept;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct Atom {
    std::string element;
    std::array<double, 3> position; // Angstrom
};

struct Geometry {
    std::vector<Atom> atoms;
    int charge = 0;
    int spin_multiplicity = 1;

    int electron_count() const;
};

/// Active-space Hamiltonian. Two-body integrals are in chemist notation (pq|rs).
struct IntegralSet {
    std::size_t n_orb = 0;
    int n_alpha = 0;
    int n_beta = 0;
    double e_core = 0.0;
    Matrix h;
    Tensor4 g;

    static IntegralSet zeros(std::size_t n_orb, int n_alpha, int n_beta);

    /// Throws ValidationError unless h is symmetric, g has 8-fold symmetry and everything is finite.
    void check(double tol = 1e-12) const;
};

/// Raw integrals over contracted Gaussian atomic orbitals.
struct AoIntegrals {
    Matrix overlap;
    Matrix kinetic;
    Matrix nuclear;
    Matrix h_core; // kinetic + nuclear
    Tensor4 eri;   // chemist notation
    double nuclear_repulsion = 0.0;
    int n_electrons = 0;
};

/// Zeroth-order Boys function F0(t).
double boys_f0(double t);

/// STO-3G integrals for a hydrogen-only geometry.
AoIntegrals build_sto3g_hydrogen(const Geometry& geometry);

struct ScfSettings {
    double energy_tol = 1e-10;
    double density_rms_tol = 1e-8;
    int max_iter = 200;
    double damping = 0.0; // fraction of the previous density mixed into the new one
};

struct ScfResult {
    Matrix coefficients;      // AO x MO, S-orthonormal
    Vector orbital_energies;
    Matrix density;           // total (alpha + beta) AO density
    Matrix fock;              // AO Fock matrix at convergence
    double energy = 0.0;      // electronic + nuclear repulsion
    int iterations = 0;
    std::vector<double> energy_trace;
};

/// Closed-shell Roothaan SCF starting from a superposition of atomic densities.
ScfResult rhf(const AoIntegrals& ao, const ScfSettings& settings = {});

/// Inverse square root of a symmetric positive-definite matrix; throws
/// IllConditionedBasisError when the smallest eigenvalue is below min_eig.
Matrix inverse_sqrt(const Matrix& s, double min_eig = 1e-10);

/// Lowdin-orthonormalized AOs grouped by fragment and canonicalized within
/// each fragment by diagonalizing the fragment-diagonal block of `fock`.
/// `fragment_aos[K]` lists the AOs of fragment K; the canonical orbitals of
/// fragment K are written, in ascending orbital energy, into the columns
/// named by the sorted `fragment_aos[K]`. Every AO must belong to exactly one
/// fragment. Returns the AO x MO coefficient matrix.
Matrix localize_per_fragment(const Matrix& overlap, const Matrix& fock,
                             const std::vector<std::vector<int>>& fragment_aos);

/// Four-index transform of AO integrals into the orbital basis C (AO x MO).
/// The first `n_frozen` columns of C are treated as doubly occupied core:
/// their energy goes into e_core and their mean field into h. The remaining
/// columns form the active space, which receives `n_active_electrons`.
IntegralSet ao_to_mo(const AoIntegrals& ao, const Matrix& c, int n_active_electrons,
                     std::size_t n_frozen = 0);

/// Total energy of the closed-shell determinant occupying the first n_occ orbitals.
double determinant_energy(const IntegralSet& ints, int n_occ_alpha, int n_occ_beta);

/// (H2)_k ladder: k parallel molecules of bond length `bond` (Angstrom) along z,
/// midpoints spaced `separation` apart along x.
Geometry hydrogen_dimer_ladder(int k, double separation, double bond = 1.0);

} // namespace lasuscc
