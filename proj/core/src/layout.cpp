#include "lasuscc/layout.hpp"

#include <numeric>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

std::size_t FragmentLayout::n_orb() const noexcept {
    std::size_t n = 0;
    for (const auto& f : fragments) n += f.size();
    return n;
}

int FragmentLayout::n_alpha() const noexcept {
    int n = 0;
    for (const auto& f : fragments) n += f.n_alpha;
    return n;
}

int FragmentLayout::n_beta() const noexcept {
    int n = 0;
    for (const auto& f : fragments) n += f.n_beta;
    return n;
}

void FragmentLayout::validate(std::size_t n_orb, int n_electrons) const {
    if (fragments.empty()) {
        throw ValidationError("layout has no fragments");
    }
    std::vector<int> owner(n_orb, -1);
    for (std::size_t k = 0; k < fragments.size(); ++k) {
        const auto& f = fragments[k];
        if (f.orbitals.empty()) {
            throw ValidationError(fmt::format("fragment {} has no orbitals", k));
        }
        for (int p : f.orbitals) {
            if (p < 0 || static_cast<std::size_t>(p) >= n_orb) {
                throw ValidationError(fmt::format("fragment {} lists orbital {} outside 0..{}", k, p, n_orb - 1));
            }
            auto& o = owner[static_cast<std::size_t>(p)];
            if (o != -1) {
                throw ValidationError(fmt::format("fragments {} and {} overlap on orbital {}", o, k, p));
            }
            o = static_cast<int>(k);
        }
        if (f.n_alpha < 0 || f.n_beta < 0 || static_cast<std::size_t>(f.n_alpha) > f.size() ||
            static_cast<std::size_t>(f.n_beta) > f.size()) {
            throw ValidationError(fmt::format("fragment {} has ({}, {}) electrons for {} orbitals", k, f.n_alpha,
                                              f.n_beta, f.size()));
        }
    }
    for (std::size_t p = 0; p < n_orb; ++p) {
        if (owner[p] == -1) {
            throw ValidationError(fmt::format("orbital {} is not assigned to any fragment", p));
        }
    }
    if (n_electrons >= 0 && n_electrons != this->n_electrons()) {
        throw ValidationError(fmt::format("fragments hold {} electrons but the system has {}", this->n_electrons(),
                                          n_electrons));
    }
}

std::vector<int> FragmentLayout::fragment_of() const {
    std::vector<int> owner(n_orb(), -1);
    for (std::size_t k = 0; k < fragments.size(); ++k)
        for (int p : fragments[k].orbitals)
            if (p >= 0 && static_cast<std::size_t>(p) < owner.size()) owner[static_cast<std::size_t>(p)] = static_cast<int>(k);
    return owner;
}

FragmentLayout FragmentLayout::permuted(const std::vector<int>& order) const {
    if (order.size() != fragments.size()) {
        throw ValidationError("fragment permutation has the wrong length");
    }
    FragmentLayout out;
    for (int k : order) out.fragments.push_back(fragments.at(static_cast<std::size_t>(k)));
    return out;
}

FragmentLayout FragmentLayout::single(std::size_t n_orb, int n_alpha, int n_beta) {
    Fragment f;
    f.orbitals.resize(n_orb);
    std::iota(f.orbitals.begin(), f.orbitals.end(), 0);
    f.n_alpha = n_alpha;
    f.n_beta = n_beta;
    return FragmentLayout{{f}};
}

} // namespace lasuscc
