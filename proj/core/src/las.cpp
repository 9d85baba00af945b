#include "lasuscc/las.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

namespace {

using Idx = Eigen::Index;

// Fragment-local block of a full-space spin density.
Matrix local_block(const Matrix& full, const std::vector<int>& orbs) {
    const auto m = static_cast<Idx>(orbs.size());
    Matrix out(m, m);
    for (Idx i = 0; i < m; ++i)
        for (Idx j = 0; j < m; ++j) out(i, j) = full(orbs[static_cast<std::size_t>(i)], orbs[static_cast<std::size_t>(j)]);
    return out;
}

// Mean-field potential felt by fragment k from the densities of all other fragments.
std::pair<Matrix, Matrix> embedding_potential(const IntegralSet& ints, const FragmentLayout& layout, std::size_t k,
                                              const Rdm1& rdm) {
    const auto& mine = layout.fragments[k].orbitals;
    const auto m = static_cast<Idx>(mine.size());
    Matrix va = Matrix::Zero(m, m), vb = Matrix::Zero(m, m);
    for (std::size_t l = 0; l < layout.fragments.size(); ++l) {
        if (l == k) continue;
        const auto& other = layout.fragments[l].orbitals;
        for (Idx i = 0; i < m; ++i)
            for (Idx j = 0; j < m; ++j) {
                const auto p = static_cast<std::size_t>(mine[static_cast<std::size_t>(i)]);
                const auto q = static_cast<std::size_t>(mine[static_cast<std::size_t>(j)]);
                double ja = 0.0, ka = 0.0, kb = 0.0;
                for (int r : other)
                    for (int s : other) {
                        const double da = rdm.alpha(r, s), db = rdm.beta(r, s);
                        const auto ur = static_cast<std::size_t>(r), us = static_cast<std::size_t>(s);
                        ja += ints.g(p, q, ur, us) * (da + db);
                        const double x = ints.g(p, us, ur, q);
                        ka += x * da;
                        kb += x * db;
                    }
                va(i, j) += ja - ka;
                vb(i, j) += ja - kb;
            }
    }
    return {va, vb};
}

Sector fragment_sector(const Fragment& f) {
    return {static_cast<int>(f.size()), f.n_alpha, f.n_beta};
}

} // namespace

IntegralSet fragment_integrals(const IntegralSet& ints, const FragmentLayout& layout, std::size_t k) {
    const Fragment& f = layout.fragments.at(k);
    const std::size_t m = f.size();
    IntegralSet out = IntegralSet::zeros(m, f.n_alpha, f.n_beta);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto p = static_cast<std::size_t>(f.orbitals[i]), q = static_cast<std::size_t>(f.orbitals[j]);
            out.h(static_cast<Idx>(i), static_cast<Idx>(j)) = ints.h(static_cast<Idx>(p), static_cast<Idx>(q));
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b)
                    out.g(i, j, a, b) =
                        ints.g(p, q, static_cast<std::size_t>(f.orbitals[a]), static_cast<std::size_t>(f.orbitals[b]));
        }
    return out;
}

Rdm1 las_rdm1(const IntegralSet& ints, const FragmentLayout& layout, const std::vector<CIVector>& fragments) {
    const auto n = static_cast<Idx>(ints.n_orb);
    Rdm1 full{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (std::size_t k = 0; k < layout.fragments.size(); ++k) {
        const auto& orbs = layout.fragments[k].orbitals;
        const Rdm1 loc = make_rdm1(fragments.at(k));
        for (std::size_t i = 0; i < orbs.size(); ++i)
            for (std::size_t j = 0; j < orbs.size(); ++j) {
                full.alpha(orbs[i], orbs[j]) = loc.alpha(static_cast<Idx>(i), static_cast<Idx>(j));
                full.beta(orbs[i], orbs[j]) = loc.beta(static_cast<Idx>(i), static_cast<Idx>(j));
            }
    }
    return full;
}

double las_energy(const IntegralSet& ints, const FragmentLayout& layout, const std::vector<CIVector>& fragments,
                  std::vector<double>* internal) {
    const Rdm1 rdm = las_rdm1(ints, layout, fragments);
    double e = ints.e_core;
    if (internal) internal->clear();
    for (std::size_t k = 0; k < layout.fragments.size(); ++k) {
        const IntegralSet fi = fragment_integrals(ints, layout, k);
        const CIVector& c = fragments[k];
        const CIHamiltonian h(fi, c.sector);
        const double ek =
            c.coeffs.dot(h.apply({c.coeffs.data(), static_cast<std::size_t>(c.coeffs.size())})) / c.coeffs.squaredNorm();
        if (internal) internal->push_back(ek);
        e += ek;
        // Half of the mean-field coupling of k with everybody else; summing over k counts each pair once.
        const auto [va, vb] = embedding_potential(ints, layout, k, rdm);
        const auto& orbs = layout.fragments[k].orbitals;
        e += 0.5 * ((va.array() * local_block(rdm.alpha, orbs).array()).sum() +
                    (vb.array() * local_block(rdm.beta, orbs).array()).sum());
    }
    return e;
}

LasState lasci(const IntegralSet& ints, const FragmentLayout& layout, const LasSettings& settings) {
    ints.check(1e-10);
    layout.validate(ints.n_orb, ints.n_alpha + ints.n_beta);
    if (layout.n_alpha() != ints.n_alpha || layout.n_beta() != ints.n_beta) {
        throw ValidationError(fmt::format("layout places {}a/{}b electrons, integrals carry {}a/{}b", layout.n_alpha(),
                                          layout.n_beta(), ints.n_alpha, ints.n_beta));
    }
    const std::size_t nf = layout.fragments.size();
    std::vector<IntegralSet> local;
    local.reserve(nf);
    for (std::size_t k = 0; k < nf; ++k) local.push_back(fragment_integrals(ints, layout, k));

    LasState st;
    st.layout = layout;
    st.fragments.resize(nf);
    // Isolated fragments first.
    for (std::size_t k = 0; k < nf; ++k) {
        st.fragments[k] = casci_ground_state(local[k], fragment_sector(layout.fragments[k]), settings.casci).state;
    }
    st.energy = las_energy(ints, layout, st.fragments);
    st.energy_trace.push_back(st.energy);

    for (int it = 1; it <= settings.max_iterations; ++it) {
        double rdm_change = 0.0;
        for (std::size_t k = 0; k < nf; ++k) {
            const Rdm1 rdm = las_rdm1(ints, layout, st.fragments);
            const auto [va, vb] = embedding_potential(ints, layout, k, rdm);
            const IntegralSet& fi = local[k];
            const CIHamiltonian h(0.0, fi.h + va, fi.h + vb, fi.g, fragment_sector(layout.fragments[k]));
            CIVector next = casci_ground_state(h, settings.casci).state;
            const Rdm1 before = make_rdm1(st.fragments[k]);
            const Rdm1 after = make_rdm1(next);
            rdm_change = std::max({rdm_change, (after.alpha - before.alpha).cwiseAbs().maxCoeff(),
                                   (after.beta - before.beta).cwiseAbs().maxCoeff()});
            st.fragments[k] = std::move(next);
        }
        const double e = las_energy(ints, layout, st.fragments);
        const double de = std::abs(e - st.energy);
        st.energy = e;
        st.energy_trace.push_back(e);
        st.iterations = it;
        if (de < settings.energy_tol && rdm_change < settings.rdm_tol) {
            st.converged = true;
            break;
        }
    }
    if (!st.converged) {
        throw ConvergenceError(fmt::format("LASCI not converged after {} sweeps", settings.max_iterations),
                               st.energy_trace);
    }
    st.energy = las_energy(ints, layout, st.fragments, &st.fragment_energies);
    return st;
}

Statevector assemble_statevector(const LasState& state, const QubitMap& map) {
    const FragmentLayout& layout = state.layout;
    if (static_cast<std::size_t>(map.n_orb()) != layout.n_orb()) throw ShapeError("qubit map does not match layout");
    const int n = map.n_orb();
    Statevector psi(map.n_qubits());
    // The product state creates fragment 0's electrons first, each fragment in its
    // local (alpha ascending)(beta ascending) order. Reordering that creator sequence
    // into ascending qubit order gives the sign; on the fragment-major register it is +1.
    struct Partial {
        std::uint64_t index;
        double amp;
    };
    std::vector<Partial> acc{{0, 1.0}};
    for (std::size_t k = 0; k < layout.fragments.size(); ++k) {
        const Fragment& f = layout.fragments[k];
        const CIVector& c = state.fragments.at(k);
        if (c.sector != fragment_sector(f)) throw ShapeError(fmt::format("fragment {} CI vector has the wrong sector", k));
        const auto alpha = enumerate_strings(c.sector.n_orb, f.n_alpha);
        const auto beta = enumerate_strings(c.sector.n_orb, f.n_beta);
        std::vector<Partial> next;
        next.reserve(acc.size() * static_cast<std::size_t>(c.coeffs.size()));
        std::vector<int> seq;
        for (const auto& pa : acc)
            for (std::size_t ia = 0; ia < alpha.size(); ++ia)
                for (std::size_t ib = 0; ib < beta.size(); ++ib) {
                    const double x = c.coeffs[static_cast<Idx>(ia * beta.size() + ib)];
                    if (x == 0.0) continue;
                    seq.clear();
                    for (Bitmask m = alpha[ia]; m; m &= m - 1)
                        seq.push_back(map.qubit(f.orbitals[static_cast<std::size_t>(std::countr_zero(m))]));
                    for (Bitmask m = beta[ib]; m; m &= m - 1)
                        seq.push_back(map.qubit(n + f.orbitals[static_cast<std::size_t>(std::countr_zero(m))]));
                    std::uint64_t idx = pa.index;
                    int inversions = 0;
                    for (int q : seq) {
                        inversions += std::popcount(idx & ~((std::uint64_t{2} << q) - 1));
                        idx |= std::uint64_t{1} << q;
                    }
                    next.push_back({idx, (inversions & 1) ? -pa.amp * x : pa.amp * x});
                }
        acc = std::move(next);
    }
    for (const auto& pa : acc) psi[pa.index] += pa.amp;
    return psi;
}

Statevector assemble_statevector(const LasState& state) { return assemble_statevector(state, QubitMap(state.layout)); }

} // namespace lasuscc
