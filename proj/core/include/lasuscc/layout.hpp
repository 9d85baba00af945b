#pragma once

#include <cstddef>
#include <vector>

namespace lasuscc {

struct Fragment {
    std::vector<int> orbitals; // spatial orbital indices, in fragment-local order
    int n_alpha = 0;
    int n_beta = 0;

    std::size_t size() const noexcept { return orbitals.size(); }
};

/// Partition of the active spatial orbitals into fragments.
struct FragmentLayout {
    std::vector<Fragment> fragments;

    std::size_t n_orb() const noexcept;
    int n_alpha() const noexcept;
    int n_beta() const noexcept;
    int n_electrons() const noexcept { return n_alpha() + n_beta(); }

    /// Throws ValidationError (naming the offending fragments) unless the
    /// orbital sets are disjoint, cover 0..n_orb-1 and the per-fragment
    /// electron counts fit their orbitals. When n_electrons >= 0 the total
    /// electron count must match it as well.
    void validate(std::size_t n_orb, int n_electrons = -1) const;

    /// fragment_of()[p] is the fragment that owns spatial orbital p.
    std::vector<int> fragment_of() const;

    /// Same fragments in a different order: result.fragments[i] = fragments[order[i]].
    FragmentLayout permuted(const std::vector<int>& order) const;

    /// One fragment over all n_orb orbitals.
    static FragmentLayout single(std::size_t n_orb, int n_alpha, int n_beta);
};

} // namespace lasuscc
