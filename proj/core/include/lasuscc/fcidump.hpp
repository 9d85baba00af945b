#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lasuscc/integrals.hpp"

namespace lasuscc {

// FCIDUMP two-body records are read and written in chemist notation:
//   value i j k l   means   (ij|kl) = value   (1-based orbital indices)
// with `i j 0 0` one-body and `0 0 0 0` the core energy.

struct FcidumpHeader {
    std::size_t norb = 0;
    int nelec = 0;
    int ms2 = 0;
};

IntegralSet read_fcidump(const std::filesystem::path& path);
IntegralSet parse_fcidump(std::istream& in);

/// Reads only the namelist header.
FcidumpHeader read_fcidump_header(const std::filesystem::path& path);

/// Canonical, byte-deterministic output: symmetry-unique two-body records with
/// i>=j, k>=l, (ij)>=(kl), then one-body i>=j, then the core energy. Exact
/// zeros are omitted.
void write_fcidump(const IntegralSet& ints, const std::filesystem::path& path);
std::string format_fcidump(const IntegralSet& ints);

} // namespace lasuscc
