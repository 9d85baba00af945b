#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lasuscc/layout.hpp"
#include "lasuscc/pauli.hpp"
#include "lasuscc/statevector.hpp"

namespace lasuscc {

enum class ExcitationKind { Single, Double };

/// One anti-Hermitian excitation G = tau - tau^dagger. Spin orbitals use the
/// determinant ordering (alpha p -> p, beta p -> n_orb + p).
///   single: tau = a^dagger_c0 a_a0 with c0 > a0
///   double: tau = a^dagger_c0 a^dagger_c1 a_a1 a_a0 with c0 < c1, a0 < a1 and
///           (c0, c1) > (a0, a1) lexicographically
struct Generator {
    ExcitationKind kind = ExcitationKind::Single;
    std::array<int, 2> create{-1, -1};
    std::array<int, 2> annihilate{-1, -1};
    double amplitude = 0.0;
    double gradient = 0.0; // dE/dt at t = 0
    bool selected = false;

    int rank() const noexcept { return kind == ExcitationKind::Single ? 1 : 2; }
    /// e.g. "s 3a<-1a" or "d 2a,5b<-0a,1b"
    std::string label(int n_orb) const;
    /// tau as a ladder-operator product on the spin orbitals (not qubits).
    std::vector<Ladder> tau() const;
    bool operator==(const Generator& o) const noexcept {
        return kind == o.kind && create == o.create && annihilate == o.annihilate;
    }
};

struct ParameterCount {
    std::size_t singles = 0;
    std::size_t doubles = 0;
    std::size_t total() const noexcept { return singles + doubles; }
};

/// Same-spin-composition unordered pairs of distinct spin-orbital pairs over n
/// spatial orbitals: 6 C(C(n,2),2) + 2(n+1) C(n,2).
std::size_t count_doubles_full(std::size_t n);

/// Closed form: singles 2 sum_{K<L} n_K n_L, doubles f(n) - sum_K f(n_K).
ParameterCount count_parameters(const FragmentLayout& layout);

struct GeneratorPool {
    FragmentLayout layout;
    std::vector<Generator> generators; // singles first, then doubles, each in canonical index order
    std::size_t n_singles = 0;
    std::size_t n_doubles = 0;

    std::size_t size() const noexcept { return generators.size(); }
};

/// Every spin-conserving generalized single and double that touches at least two fragments.
GeneratorPool enumerate_pool(const FragmentLayout& layout);

/// exp(t G) = prod_j exp(i t c_j P_j); the P_j of one generator commute.
struct PauliRotation {
    double coefficient;
    PauliString string;
};

/// Jordan-Wigner image of G as commuting rotations on `map`'s qubits.
std::vector<PauliRotation> compile_generator(const Generator& g, const QubitMap& map);

/// Direct action of one generator on qubit basis states. Because tau^2 = 0 for
/// every pool member, G pairs each source state b with a target b' (G|b> = s|b'>,
/// G|b'> = -s|b>), and exp(t G) is a set of independent 2x2 rotations. This is
/// the same operator as the product of the commuting Pauli rotations, evaluated
/// without visiting amplitudes G does not touch.
class ExcitationKernel {
public:
    ExcitationKernel(const Generator& g, const QubitMap& map);

    /// psi <- exp(t G) psi
    void rotate(Statevector& psi, double t) const;
    /// out += G in
    void apply(const Statevector& in, Statevector& out) const;
    /// <bra| G |ket>
    Complex matrix_element(const Statevector& bra, const Statevector& ket) const;

private:
    template <class F>
    void for_each_pair(F&& f) const;

    QubitMask source_;   // bits that must be set in a source state
    QubitMask target_;   // bits set in the matching target state
    QubitMask free_;     // qubits G does not touch
    std::array<Ladder, 4> ops_{}; // tau, rightmost operator first, on qubits
    int n_ops_ = 0;
};

/// G |psi> (linear, not normalized).
Statevector apply_excitation_operator(const Statevector& psi, const Generator& g, const QubitMap& map);
Statevector apply_excitation_operator(const Statevector& psi, const std::vector<PauliRotation>& rotations);

/// <bra| P |ket>
Complex matrix_element(const Statevector& bra, const PauliString& p, const Statevector& ket);

/// Fills gradient = 2 Re <H psi| G psi> for every generator, split over `threads` workers.
void screen_gradients(GeneratorPool& pool, const Statevector& psi, const QubitHamiltonian& h, int threads = 1);

/// Pool indices with |gradient| >= epsilon, by descending |gradient| (ties: pool order).
std::vector<std::size_t> select(const GeneratorPool& pool, double epsilon);
/// The `n` largest-|gradient| generators, same ordering as select().
std::vector<std::size_t> select_top(const GeneratorPool& pool, std::size_t n);
/// Sets the selected flag of exactly the given generators.
void mark_selected(GeneratorPool& pool, const std::vector<std::size_t>& selection);

struct HistogramBin {
    double lower;  // inclusive; 0 for the first bin
    double upper;  // exclusive; +inf for the last bin
    std::size_t count;
};

/// Decade histogram of |gradient|: [0, 10^lowest_exp), then one bin per decade
/// up to 10^highest_exp, then everything above.
std::vector<HistogramBin> gradient_histogram(const GeneratorPool& pool, int lowest_exp = -6, int highest_exp = 0);

} // namespace lasuscc
