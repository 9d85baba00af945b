#include "lasuscc/resources.hpp"

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

std::int64_t sqg_per_excitation(int rank) {
    if (rank < 1 || rank > 4) throw ValidationError(fmt::format("unsupported excitation rank {}", rank));
    return (4 * rank + 1) * (std::int64_t{1} << (2 * rank - 1));
}

std::int64_t cnot_per_excitation(int rank) {
    if (rank < 1 || rank > 4) throw ValidationError(fmt::format("unsupported excitation rank {}", rank));
    return (2 * rank - 1) * (std::int64_t{1} << (2 * rank));
}

GateCountEstimate estimate(std::size_t n_singles, std::size_t n_doubles) {
    GateCountEstimate e;
    const auto s = static_cast<std::int64_t>(n_singles), d = static_cast<std::int64_t>(n_doubles);
    e.singles_sqg = s * sqg_per_excitation(1);
    e.singles_cnot = s * cnot_per_excitation(1);
    e.doubles_sqg = d * sqg_per_excitation(2);
    e.doubles_cnot = d * cnot_per_excitation(2);
    e.n_sqg = e.singles_sqg + e.doubles_sqg;
    e.n_cnot = e.singles_cnot + e.doubles_cnot;
    return e;
}

GateCountEstimate estimate(const GeneratorPool& pool, const std::vector<std::size_t>& selection) {
    std::size_t s = 0, d = 0;
    for (std::size_t i : selection) (pool.generators.at(i).kind == ExcitationKind::Single ? s : d)++;
    return estimate(s, d);
}

double percent_cnot(const GateCountEstimate& selected, const GateCountEstimate& full) {
    if (full.n_cnot <= 0) throw ValidationError("reference estimate has no CNOT gates");
    return 100.0 * static_cast<double>(selected.n_cnot) / static_cast<double>(full.n_cnot);
}

std::optional<std::pair<std::int64_t, std::int64_t>> solve_split(std::int64_t n_params, std::int64_t n_sqg,
                                                                  std::int64_t n_cnot) {
    // cnot = c1 s + c2 d with s = n - d  =>  d = (cnot - c1 n) / (c2 - c1)
    const std::int64_t c1 = cnot_per_excitation(1), c2 = cnot_per_excitation(2);
    const std::int64_t num = n_cnot - c1 * n_params;
    if (num < 0 || num % (c2 - c1) != 0) return std::nullopt;
    const std::int64_t d = num / (c2 - c1), s = n_params - d;
    if (s < 0) return std::nullopt;
    if (s * sqg_per_excitation(1) + d * sqg_per_excitation(2) != n_sqg) return std::nullopt;
    return std::pair{s, d};
}

} // namespace lasuscc
