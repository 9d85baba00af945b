#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lasuscc/integrals.hpp"

namespace lasuscc {

/// Occupation bitmask over spatial orbitals; bit p set means orbital p occupied.
using Bitmask = std::uint64_t;

/// All n_occ-electron strings over n_orb orbitals in ascending numeric order
/// (orbital 0 is the least significant bit).
std::vector<Bitmask> enumerate_strings(int n_orb, int n_occ);

/// Position of `mask` in enumerate_strings(n_orb, popcount(mask)).
std::size_t string_rank(Bitmask mask) noexcept;

std::size_t binomial(std::size_t n, std::size_t k) noexcept;

/// Sign (+1/-1) of a_p^dagger a_q acting on `mask`, assuming q occupied and p
/// empty (or p == q). Creation operators are ordered by ascending orbital.
int excitation_sign(Bitmask mask, int p, int q) noexcept;

/// Fixed (n_orb, n_alpha, n_beta) block of Fock space. Determinants are
/// |I_a I_b> = (alpha creators, ascending)(beta creators, ascending)|0>,
/// stored row-major as ia * n_beta_strings + ib.
struct Sector {
    int n_orb = 0;
    int n_alpha = 0;
    int n_beta = 0;

    std::size_t alpha_strings() const noexcept { return binomial(static_cast<std::size_t>(n_orb), static_cast<std::size_t>(n_alpha)); }
    std::size_t beta_strings() const noexcept { return binomial(static_cast<std::size_t>(n_orb), static_cast<std::size_t>(n_beta)); }
    std::size_t dim() const noexcept { return alpha_strings() * beta_strings(); }
    bool operator==(const Sector&) const = default;
};

struct CIVector {
    Sector sector;
    Vector coeffs;

    void normalize();
};

/// Single-replacement table of one string space: for every string I, all
/// (p, q) with a_p^dagger a_q |I> = sign |J> nonzero.
class StringSpace {
public:
    struct Move {
        std::uint16_t p;
        std::uint16_t q;
        std::int8_t sign;
        std::uint32_t target;
    };

    StringSpace(int n_orb, int n_occ);

    int n_orb() const noexcept { return n_orb_; }
    int n_occ() const noexcept { return n_occ_; }
    std::size_t size() const noexcept { return strings_.size(); }
    const std::vector<Bitmask>& strings() const noexcept { return strings_; }
    std::span<const Move> moves(std::size_t i) const noexcept {
        return {moves_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

private:
    int n_orb_;
    int n_occ_;
    std::vector<Bitmask> strings_;
    std::vector<std::size_t> offsets_;
    std::vector<Move> moves_;
};

/// Determinant-basis Hamiltonian on one sector. The one-body part may differ
/// between spins, which embedded fragment problems need.
class CIHamiltonian {
public:
    CIHamiltonian(const IntegralSet& ints, const Sector& sector);
    CIHamiltonian(double e_core, const Matrix& h_alpha, const Matrix& h_beta, const Tensor4& g, const Sector& sector);

    const Sector& sector() const noexcept { return sector_; }
    std::size_t dim() const noexcept { return sector_.dim(); }

    /// sigma = H v via string-driven Slater-Condon rules.
    Vector apply(std::span<const double> v) const;
    Vector diagonal() const;
    Matrix dense() const;

private:
    Sector sector_;
    StringSpace alpha_;
    StringSpace beta_;
    double e_core_;
    Matrix k_alpha_; // h minus the (pr|rq) contraction from normal ordering
    Matrix k_beta_;
    Matrix h_alpha_;
    Matrix h_beta_;
    Matrix pair_g_; // (pq),(rs) matrix of two-body integrals
    const Tensor4* g_;
};

/// w = H v for the Hamiltonian in `ints` restricted to `sector`.
Vector apply_hamiltonian(const IntegralSet& ints, const Sector& sector, std::span<const double> v);

struct DavidsonSettings {
    int max_subspace = 40;
    int max_iterations = 500;
    double residual_tol = 1e-8;
};

struct CasciSettings {
    std::size_t dense_threshold = 2000; // dimension above which Davidson is used
    bool force_davidson = false;
    DavidsonSettings davidson;
};

struct CasciResult {
    double energy = 0.0; // includes e_core
    CIVector state;
    double residual = 0.0;
    bool used_davidson = false;
};

CasciResult casci_ground_state(const IntegralSet& ints, const Sector& sector, const CasciSettings& settings = {});
CasciResult casci_ground_state(const CIHamiltonian& ham, const CasciSettings& settings = {});

struct EigenPair {
    double value = 0.0;
    Vector vector;
    double residual = 0.0;
    std::vector<double> residual_history;
};

/// Lowest eigenpair of a symmetric operator given by `apply`, with diagonal
/// preconditioning. Throws ConvergenceError carrying the residual history.
EigenPair davidson_lowest(const std::function<Vector(const Vector&)>& apply, const Vector& diagonal,
                          const DavidsonSettings& settings);

struct Rdm1 {
    Matrix alpha;
    Matrix beta;
};

/// <a^dagger_p a_q> per spin for a real CI vector.
Rdm1 make_rdm1(const CIVector& state);

/// <S^2> computed as ||S+ psi||^2 + Sz^2 + Sz for a normalized vector.
double s_squared_expectation(const CIVector& state);

/// ||S+ v||^2 for an arbitrary (not necessarily normalized) real vector.
double s_plus_norm2(const Sector& sector, std::span<const double> v);

} // namespace lasuscc
