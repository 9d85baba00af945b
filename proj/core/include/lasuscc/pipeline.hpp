#pragma once

#include <optional>
#include <string>

#include "lasuscc/integrals.hpp"
#include "lasuscc/job.hpp"
#include "lasuscc/layout.hpp"

namespace lasuscc {

/// Active-space Hamiltonian plus the fragment partition it is meant for.
struct PreparedSystem {
    IntegralSet ints;
    FragmentLayout layout;
    std::optional<double> rhf_energy; // native path only
    int scf_iterations = 0;
    std::string source;               // "geometry" or the FCIDUMP path
};

/// STO-3G hydrogen integrals in fragment-localized orbitals. Fragment K's
/// orbital list names atoms; its canonical orbitals take those same indices.
PreparedSystem native_system(const Geometry& geometry, const FragmentLayout& layout, const ScfSettings& scf = {});

/// Runs whichever integral source the job names.
PreparedSystem prepare_system(const JobConfig& job);

} // namespace lasuscc
