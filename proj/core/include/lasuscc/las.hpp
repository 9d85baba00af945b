#pragma once

#include <vector>

#include "lasuscc/fock.hpp"
#include "lasuscc/layout.hpp"
#include "lasuscc/statevector.hpp"

namespace lasuscc {

struct LasSettings {
    double energy_tol = 1e-10;
    double rdm_tol = 1e-8;
    int max_iterations = 100;
    CasciSettings casci;
};

/// Product of fragment CI vectors at fixed orbitals.
struct LasState {
    FragmentLayout layout;
    std::vector<CIVector> fragments;        // in fragment-local orbital order
    std::vector<double> fragment_energies;  // <psi_K| H_K |psi_K>, fragment-internal, no e_core
    double energy = 0.0;                    // total, including e_core and inter-fragment mean field
    bool converged = false;
    int iterations = 0;
    std::vector<double> energy_trace;       // total energy after the initial solve and each sweep
};

/// Fragment-internal Hamiltonian of fragment k in its local orbital order (e_core = 0).
IntegralSet fragment_integrals(const IntegralSet& ints, const FragmentLayout& layout, std::size_t k);

/// Spin-resolved one-body densities of a product state embedded in the full orbital space.
Rdm1 las_rdm1(const IntegralSet& ints, const FragmentLayout& layout, const std::vector<CIVector>& fragments);

/// Energy of a product of fragment states evaluated from fragment-internal
/// expectation values plus the mean-field coupling between fragments.
double las_energy(const IntegralSet& ints, const FragmentLayout& layout, const std::vector<CIVector>& fragments,
                  std::vector<double>* internal = nullptr);

/// Fixed-orbital LASCI: fragment CI problems in the mean field of the other
/// fragments, updated one fragment at a time until self-consistent.
/// Throws ConvergenceError (history = energy trace) after max_iterations sweeps.
LasState lasci(const IntegralSet& ints, const FragmentLayout& layout, const LasSettings& settings = {});

/// The LAS product state on the fragment-major qubit register of `map`.
Statevector assemble_statevector(const LasState& state, const QubitMap& map);
Statevector assemble_statevector(const LasState& state);

} // namespace lasuscc
