#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lasuscc/ansatz.hpp"

namespace lasuscc {

/// Standard-circuit gate cost of one rank-n excitation: SQG (4n+1) 2^{2n-1}, CNOT (2n-1) 2^{2n}.
std::int64_t sqg_per_excitation(int rank);
std::int64_t cnot_per_excitation(int rank);

struct GateCountEstimate {
    std::int64_t n_sqg = 0;
    std::int64_t n_cnot = 0;
    std::int64_t singles_sqg = 0;
    std::int64_t singles_cnot = 0;
    std::int64_t doubles_sqg = 0;
    std::int64_t doubles_cnot = 0;
};

GateCountEstimate estimate(std::size_t n_singles, std::size_t n_doubles);
GateCountEstimate estimate(const GeneratorPool& pool, const std::vector<std::size_t>& selection);

/// 100 * selected / full. Throws ValidationError when full has no CNOTs.
double percent_cnot(const GateCountEstimate& selected, const GateCountEstimate& full);

/// (singles, doubles) with singles + doubles = n_params reproducing both gate counts,
/// or nothing when no non-negative integer split exists.
std::optional<std::pair<std::int64_t, std::int64_t>> solve_split(std::int64_t n_params, std::int64_t n_sqg,
                                                                  std::int64_t n_cnot);

} // namespace lasuscc
