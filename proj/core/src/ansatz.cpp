#include "lasuscc/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

namespace {

std::size_t choose2(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

std::string so_name(int so, int n_orb) {
    return so < n_orb ? fmt::format("{}a", so) : fmt::format("{}b", so - n_orb);
}

} // namespace

std::string Generator::label(int n_orb) const {
    if (kind == ExcitationKind::Single) {
        return fmt::format("s {}<-{}", so_name(create[0], n_orb), so_name(annihilate[0], n_orb));
    }
    return fmt::format("d {},{}<-{},{}", so_name(create[0], n_orb), so_name(create[1], n_orb),
                       so_name(annihilate[0], n_orb), so_name(annihilate[1], n_orb));
}

std::vector<Ladder> Generator::tau() const {
    if (kind == ExcitationKind::Single) return {{create[0], true}, {annihilate[0], false}};
    return {{create[0], true}, {create[1], true}, {annihilate[1], false}, {annihilate[0], false}};
}

std::size_t count_doubles_full(std::size_t n) {
    const std::size_t m = choose2(n);
    return 6 * choose2(m) + 2 * (n + 1) * m;
}

ParameterCount count_parameters(const FragmentLayout& layout) {
    ParameterCount c;
    const std::size_t n = layout.n_orb();
    std::size_t internal = 0, sum = 0, sum_sq = 0;
    for (const auto& f : layout.fragments) {
        internal += count_doubles_full(f.size());
        sum += f.size();
        sum_sq += f.size() * f.size();
    }
    c.singles = sum * sum - sum_sq; // 2 sum_{K<L} n_K n_L
    c.doubles = count_doubles_full(n) - internal;
    return c;
}

GeneratorPool enumerate_pool(const FragmentLayout& layout) {
    const int n = static_cast<int>(layout.n_orb());
    layout.validate(layout.n_orb());
    const auto frag = layout.fragment_of();
    auto frag_of = [&](int so) { return frag[static_cast<std::size_t>(so % n)]; };

    GeneratorPool pool;
    pool.layout = layout;
    for (int s = 0; s < 2; ++s)
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < p; ++q) {
                if (frag[static_cast<std::size_t>(p)] == frag[static_cast<std::size_t>(q)]) continue;
                Generator g;
                g.kind = ExcitationKind::Single;
                g.create = {s * n + p, -1};
                g.annihilate = {s * n + q, -1};
                pool.generators.push_back(g);
            }
    std::sort(pool.generators.begin(), pool.generators.end(), [](const Generator& a, const Generator& b) {
        return std::tie(a.create[0], a.annihilate[0]) < std::tie(b.create[0], b.annihilate[0]);
    });
    pool.n_singles = pool.generators.size();

    // Spin-orbital pairs a < b, keyed by spin composition (number of beta electrons).
    std::array<std::vector<std::array<int, 2>>, 3> pairs;
    for (int a = 0; a < 2 * n; ++a)
        for (int b = a + 1; b < 2 * n; ++b) pairs[static_cast<std::size_t>((a >= n) + (b >= n))].push_back({a, b});
    std::vector<Generator> doubles;
    for (const auto& list : pairs)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) {
                const auto& c = list[i];
                const auto& a = list[j];
                const int f0 = frag_of(c[0]);
                if (frag_of(c[1]) == f0 && frag_of(a[0]) == f0 && frag_of(a[1]) == f0) continue;
                Generator g;
                g.kind = ExcitationKind::Double;
                g.create = c;
                g.annihilate = a;
                doubles.push_back(g);
            }
    std::sort(doubles.begin(), doubles.end(), [](const Generator& x, const Generator& y) {
        return std::tie(x.create, x.annihilate) < std::tie(y.create, y.annihilate);
    });
    pool.n_doubles = doubles.size();
    pool.generators.insert(pool.generators.end(), doubles.begin(), doubles.end());
    return pool;
}

std::vector<PauliRotation> compile_generator(const Generator& g, const QubitMap& map) {
    auto ops = g.tau();
    for (auto& op : ops) op.mode = map.qubit(op.mode);
    const PauliSum tau = jw_map(ops, 1.0, map.n_qubits());
    const PauliSum gen = tau - tau.adjoint();
    std::vector<PauliRotation> out;
    out.reserve(gen.size());
    for (const auto& t : gen.terms()) {
        if (std::abs(t.coefficient.real()) > 1e-12) {
            throw Error(fmt::format("generator {} is not anti-Hermitian after mapping", g.label(map.n_orb())));
        }
        out.push_back({t.coefficient.imag(), t.string});
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!out[i].string.commutes_with(out[j].string)) {
                throw Error(fmt::format("generator {} maps to non-commuting Pauli terms", g.label(map.n_orb())));
            }
    return out;
}

ExcitationKernel::ExcitationKernel(const Generator& g, const QubitMap& map) {
    const auto tau = g.tau();
    n_ops_ = static_cast<int>(tau.size());
    QubitMask create = 0, annihilate = 0;
    for (int i = 0; i < n_ops_; ++i) {
        const Ladder& op = tau[static_cast<std::size_t>(n_ops_ - 1 - i)];
        const int q = map.qubit(op.mode);
        ops_[static_cast<std::size_t>(i)] = {q, op.dagger};
        (op.dagger ? create : annihilate) |= QubitMask{1} << q;
    }
    if (create == annihilate) throw Error(fmt::format("generator {} is diagonal", g.label(map.n_orb())));
    source_ = annihilate;
    target_ = create;
    const QubitMask all = map.n_qubits() == 64 ? ~QubitMask{0} : (QubitMask{1} << map.n_qubits()) - 1;
    free_ = all & ~(create | annihilate);
}

template <class F>
void ExcitationKernel::for_each_pair(F&& f) const {
    // Enumerate every subset of the untouched qubits; each yields one (source, target) pair.
    QubitMask sub = 0;
    do {
        std::uint64_t state = source_ | sub;
        const std::uint64_t from = state;
        int parity = 0;
        for (int i = 0; i < n_ops_; ++i) {
            const int q = ops_[static_cast<std::size_t>(i)].mode;
            parity += std::popcount(state & ((std::uint64_t{1} << q) - 1));
            if (ops_[static_cast<std::size_t>(i)].dagger) state |= std::uint64_t{1} << q;
            else state &= ~(std::uint64_t{1} << q);
        }
        f(from, state, (parity & 1) ? -1.0 : 1.0);
        sub = (sub - free_) & free_;
    } while (sub != 0);
}

void ExcitationKernel::rotate(Statevector& psi, double t) const {
    if (t == 0.0) return;
    const double c = std::cos(t), s = std::sin(t);
    auto amps = psi.amplitudes();
    for_each_pair([&](std::uint64_t b, std::uint64_t b2, double sign) {
        const Complex a = amps[b], a2 = amps[b2];
        amps[b] = c * a - sign * s * a2;
        amps[b2] = c * a2 + sign * s * a;
    });
}

void ExcitationKernel::apply(const Statevector& in, Statevector& out) const {
    if (in.size() != out.size()) throw ShapeError("statevectors have different qubit counts");
    const auto src = in.amplitudes();
    auto dst = out.amplitudes();
    for_each_pair([&](std::uint64_t b, std::uint64_t b2, double sign) {
        dst[b2] += sign * src[b];
        dst[b] -= sign * src[b2];
    });
}

Complex ExcitationKernel::matrix_element(const Statevector& bra, const Statevector& ket) const {
    if (bra.size() != ket.size()) throw ShapeError("statevectors have different qubit counts");
    const auto l = bra.amplitudes();
    const auto r = ket.amplitudes();
    Complex acc{};
    for_each_pair([&](std::uint64_t b, std::uint64_t b2, double sign) {
        acc += sign * (std::conj(l[b2]) * r[b] - std::conj(l[b]) * r[b2]);
    });
    return acc;
}

Statevector apply_excitation_operator(const Statevector& psi, const std::vector<PauliRotation>& rotations) {
    Statevector out(psi.n_qubits());
    for (const auto& r : rotations) apply_pauli_string(r.string, Complex(0.0, r.coefficient), psi, out);
    return out;
}

Statevector apply_excitation_operator(const Statevector& psi, const Generator& g, const QubitMap& map) {
    Statevector out(psi.n_qubits());
    ExcitationKernel(g, map).apply(psi, out);
    return out;
}

Complex matrix_element(const Statevector& bra, const PauliString& p, const Statevector& ket) {
    if (bra.size() != ket.size()) throw ShapeError("statevectors have different qubit counts");
    static constexpr Complex ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex f = ip[(p.phase + std::popcount(p.x & p.z)) & 3];
    const auto b_amp = bra.amplitudes();
    const auto k_amp = ket.amplitudes();
    Complex acc{};
    for (std::uint64_t b = 0; b < k_amp.size(); ++b) {
        const Complex term = std::conj(b_amp[b ^ p.x]) * k_amp[b];
        acc += (std::popcount(p.z & b) & 1) ? -term : term;
    }
    return f * acc;
}

void screen_gradients(GeneratorPool& pool, const Statevector& psi, const QubitHamiltonian& h, int threads) {
    const Statevector hpsi = h.apply(psi);
    const QubitMap& map = h.map();
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Generator& g = pool.generators[i];
            g.gradient = 2.0 * ExcitationKernel(g, map).matrix_element(hpsi, psi).real();
        }
    };
    const std::size_t n = pool.size();
    const auto nt = static_cast<std::size_t>(std::clamp(threads, 1, 256));
    if (nt == 1 || n < 2 * nt) {
        work(0, n);
        return;
    }
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t b = t * chunk, e = std::min(n, b + chunk);
        if (b < e) workers.emplace_back(work, b, e);
    }
}

namespace {

std::vector<std::size_t> by_gradient(const GeneratorPool& pool) {
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(pool.generators[a].gradient) > std::abs(pool.generators[b].gradient);
    });
    return idx;
}

} // namespace

std::vector<std::size_t> select(const GeneratorPool& pool, double epsilon) {
    if (!(epsilon >= 0.0)) throw ValidationError("selection threshold must be >= 0");
    auto idx = by_gradient(pool);
    std::erase_if(idx, [&](std::size_t i) { return !(std::abs(pool.generators[i].gradient) >= epsilon); });
    return idx;
}

std::vector<std::size_t> select_top(const GeneratorPool& pool, std::size_t n) {
    auto idx = by_gradient(pool);
    if (idx.size() > n) idx.resize(n);
    return idx;
}

void mark_selected(GeneratorPool& pool, const std::vector<std::size_t>& selection) {
    for (auto& g : pool.generators) g.selected = false;
    for (std::size_t i : selection) pool.generators.at(i).selected = true;
}

std::vector<HistogramBin> gradient_histogram(const GeneratorPool& pool, int lowest_exp, int highest_exp) {
    if (highest_exp < lowest_exp) throw ValidationError("histogram range is empty");
    std::vector<HistogramBin> bins;
    bins.push_back({0.0, std::pow(10.0, lowest_exp), 0});
    for (int e = lowest_exp; e < highest_exp; ++e) bins.push_back({std::pow(10.0, e), std::pow(10.0, e + 1), 0});
    bins.push_back({std::pow(10.0, highest_exp), std::numeric_limits<double>::infinity(), 0});
    for (const auto& g : pool.generators) {
        const double a = std::abs(g.gradient);
        for (auto& b : bins)
            if (a >= b.lower && a < b.upper) {
                ++b.count;
                break;
            }
    }
    return bins;
}

} // namespace lasuscc
