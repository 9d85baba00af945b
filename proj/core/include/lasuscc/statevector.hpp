#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "lasuscc/fock.hpp"
#include "lasuscc/layout.hpp"
#include "lasuscc/pauli.hpp"

namespace lasuscc {

inline constexpr int kMaxQubits = 24;

/// Dense amplitude vector; basis index bit q is the occupation of qubit q.
class Statevector {
public:
    explicit Statevector(int n_qubits);
    static Statevector basis_state(int n_qubits, std::uint64_t index);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }
    Complex& operator[](std::size_t i) noexcept { return amps_[i]; }
    const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }

    double norm() const noexcept;
    void normalize();
    void set_zero() noexcept;
    /// <this|other>
    Complex inner(const Statevector& other) const;
    void axpy(Complex a, const Statevector& x); // this += a x

private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

/// Placement of the spin orbitals (alpha p -> p, beta p -> n_orb + p) on qubits.
class QubitMap {
public:
    /// Fragment-major: fragment 0 alpha, fragment 0 beta, fragment 1 alpha, ...
    /// each in the fragment's own orbital order.
    explicit QubitMap(const FragmentLayout& layout);
    /// Qubit q = spin orbital q.
    static QubitMap identity(int n_orb);

    int n_orb() const noexcept { return n_orb_; }
    int n_qubits() const noexcept { return 2 * n_orb_; }
    int qubit(int spin_orbital) const noexcept { return qubit_[static_cast<std::size_t>(spin_orbital)]; }
    QubitMask alpha_qubits() const noexcept { return alpha_mask_; }
    QubitMask beta_qubits() const noexcept { return beta_mask_; }

    /// Qubit basis index of determinant |a b> and the sign with
    /// |a b> = sign * |index>.
    std::pair<std::uint64_t, int> to_qubit(Bitmask alpha, Bitmask beta) const;

private:
    QubitMap() = default;
    int n_orb_ = 0;
    std::vector<int> qubit_;
    QubitMask alpha_mask_ = 0;
    QubitMask beta_mask_ = 0;
};

/// state <- exp(i theta P). Throws ValidationError unless P is Hermitian.
void apply_pauli_exp(Statevector& state, const PauliString& p, double theta);
/// out += c P |in>
void apply_pauli_string(const PauliString& p, Complex c, const Statevector& in, Statevector& out);
/// O |psi>
Statevector apply(const PauliSum& op, const Statevector& psi);
/// Real part of <psi|O|psi>; throws HermiticityError when the imaginary part exceeds 1e-8.
double expectation(const Statevector& psi, const PauliSum& op);

/// Determinant-space Hamiltonian acting on qubit statevectors: amplitudes are
/// gathered per (n_alpha, n_beta) sector, acted on with the string-driven
/// sigma routine and scattered back. Sector tables are built on first use.
class QubitHamiltonian {
public:
    QubitHamiltonian(IntegralSet ints, QubitMap map);
    ~QubitHamiltonian();
    QubitHamiltonian(QubitHamiltonian&&) noexcept;
    QubitHamiltonian& operator=(QubitHamiltonian&&) noexcept;

    const IntegralSet& integrals() const noexcept { return ints_; }
    const QubitMap& map() const noexcept { return map_; }

    Statevector apply(const Statevector& psi) const;
    double expectation(const Statevector& psi) const;

private:
    struct SectorBlock;
    const SectorBlock& block(int n_alpha, int n_beta) const;

    IntegralSet ints_;
    QubitMap map_;
    struct Cache;
    std::unique_ptr<Cache> cache_;
};

/// <psi|H|psi> for the Hamiltonian in `ints` on qubits laid out by `map`.
double expectation(const Statevector& psi, const IntegralSet& ints, const QubitMap& map);

/// <S^2> of a state confined to the (n_alpha, n_beta) sector of `map`'s register.
/// Throws ValidationError when psi has weight outside that sector.
double s_squared_expectation(const Statevector& psi, const QubitMap& map, int n_alpha, int n_beta);

/// Jordan-Wigner image of the full Hamiltonian (including e_core) on `map`'s qubits.
PauliSum qubit_hamiltonian(const IntegralSet& ints, const QubitMap& map);

} // namespace lasuscc
