#pragma once

#include <bit>
#include <random>
#include <vector>

#include "lasuscc/fock.hpp"
#include "lasuscc/integrals.hpp"
#include "lasuscc/pipeline.hpp"

namespace lasuscc::fixtures {

inline FragmentLayout pairs_layout(int k) {
    FragmentLayout l;
    for (int i = 0; i < k; ++i) l.fragments.push_back({{2 * i, 2 * i + 1}, 1, 1});
    return l;
}

inline PreparedSystem hydrogen_ladder(int k, double separation = 1.46) {
    return native_system(hydrogen_dimer_ladder(k, separation), pairs_layout(k));
}

/// Random real integrals with full 8-fold symmetry.
inline IntegralSet random_integrals(std::size_t n, int na, int nb, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    IntegralSet ints = IntegralSet::zeros(n, na, nb);
    ints.e_core = u(rng);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q <= p; ++q) {
            const double v = u(rng);
            ints.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = v;
            ints.h(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = v;
        }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q <= p; ++q)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s <= r; ++s)
                    if (p * (p + 1) / 2 + q >= r * (r + 1) / 2 + s) ints.g.set_symmetric(p, q, r, s, 0.5 * u(rng));
    return ints;
}

/// Applies a ladder-operator string (rightmost first) to a Fock-space basis state
/// whose bit k is the occupation of spin orbital k. Returns 0 when annihilated.
inline int apply_ladder(std::uint64_t& state, const std::vector<std::pair<int, bool>>& ops) {
    int sign = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const auto [mode, dagger] = *it;
        const std::uint64_t bit = std::uint64_t{1} << mode;
        if (dagger == static_cast<bool>(state & bit)) return 0;
        if (std::popcount(state & (bit - 1)) & 1) sign = -sign;
        state ^= bit;
    }
    return sign;
}

/// Dense Hamiltonian on the full Fock space of 2n spin orbitals (alpha p -> p,
/// beta p -> n + p), assembled term by term from ladder operators.
inline Matrix fock_space_hamiltonian(const IntegralSet& ints) {
    const int n = static_cast<int>(ints.n_orb);
    const std::size_t dim = std::size_t{1} << (2 * n);
    Matrix h = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) * ints.e_core;
    auto add = [&](const std::vector<std::pair<int, bool>>& ops, double c) {
        for (std::uint64_t b = 0; b < dim; ++b) {
            std::uint64_t out = b;
            const int s = apply_ladder(out, ops);
            if (s) h(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) += s * c;
        }
    };
    for (int s = 0; s < 2; ++s)
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (ints.h(p, q) != 0.0) add({{s * n + p, true}, {s * n + q, false}}, ints.h(p, q));
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r)
                        for (int u = 0; u < n; ++u) {
                            const double g = ints.g(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                                    static_cast<std::size_t>(r), static_cast<std::size_t>(u));
                            if (g != 0.0)
                                add({{s * n + p, true}, {t * n + r, true}, {t * n + u, false}, {s * n + q, false}},
                                    0.5 * g);
                        }
    return h;
}

/// Rows/columns of the Fock-space matrix belonging to one sector, in CI-vector order.
inline Matrix restrict_to_sector(const Matrix& full, const Sector& s) {
    const auto alpha = enumerate_strings(s.n_orb, s.n_alpha);
    const auto beta = enumerate_strings(s.n_orb, s.n_beta);
    std::vector<std::uint64_t> idx;
    for (auto a : alpha)
        for (auto b : beta) idx.push_back(a | (b << s.n_orb));
    const auto d = static_cast<Eigen::Index>(idx.size());
    Matrix out(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            out(i, j) = full(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                             static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    return out;
}

inline Vector random_unit(Eigen::Index n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
    return v / v.norm();
}

} // namespace lasuscc::fixtures
