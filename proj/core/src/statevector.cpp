#include "lasuscc/statevector.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0 || n_qubits > kMaxQubits) {
        throw ValidationError(fmt::format("{} qubits requested, at most {} supported", n_qubits, kMaxQubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= s.size()) throw ShapeError(fmt::format("basis index {} out of range", index));
    s.amps_[index] = 1.0;
    return s;
}

double Statevector::norm() const noexcept {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

void Statevector::normalize() {
    const double n = norm();
    if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
    for (auto& a : amps_) a /= n;
}

void Statevector::set_zero() noexcept { std::fill(amps_.begin(), amps_.end(), Complex{}); }

Complex Statevector::inner(const Statevector& other) const {
    if (other.size() != size()) throw ShapeError("statevectors have different qubit counts");
    Complex acc{};
    for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
}

void Statevector::axpy(Complex a, const Statevector& x) {
    if (x.size() != size()) throw ShapeError("statevectors have different qubit counts");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += a * x.amps_[i];
}

QubitMap::QubitMap(const FragmentLayout& layout) : n_orb_(static_cast<int>(layout.n_orb())) {
    layout.validate(layout.n_orb());
    if (2 * n_orb_ > 64) throw ValidationError("more than 64 spin orbitals");
    qubit_.assign(static_cast<std::size_t>(2 * n_orb_), -1);
    int next = 0;
    for (const auto& frag : layout.fragments) {
        for (int p : frag.orbitals) qubit_[static_cast<std::size_t>(p)] = next++;
        for (int p : frag.orbitals) qubit_[static_cast<std::size_t>(n_orb_ + p)] = next++;
    }
    for (int p = 0; p < n_orb_; ++p) {
        alpha_mask_ |= QubitMask{1} << qubit(p);
        beta_mask_ |= QubitMask{1} << qubit(n_orb_ + p);
    }
}

QubitMap QubitMap::identity(int n_orb) {
    QubitMap m;
    m.n_orb_ = n_orb;
    m.qubit_.resize(static_cast<std::size_t>(2 * n_orb));
    for (int q = 0; q < 2 * n_orb; ++q) m.qubit_[static_cast<std::size_t>(q)] = q;
    m.alpha_mask_ = n_orb ? (QubitMask{1} << n_orb) - 1 : 0;
    m.beta_mask_ = m.alpha_mask_ << n_orb;
    return m;
}

std::pair<std::uint64_t, int> QubitMap::to_qubit(Bitmask alpha, Bitmask beta) const {
    std::uint64_t index = 0;
    int inversions = 0;
    auto place = [&](Bitmask occ, int offset) {
        while (occ) {
            const int p = std::countr_zero(occ);
            occ &= occ - 1;
            const int q = qubit(offset + p);
            const std::uint64_t above = ~((std::uint64_t{2} << q) - 1);
            inversions += std::popcount(index & above);
            index |= std::uint64_t{1} << q;
        }
    };
    place(alpha, 0);
    place(beta, n_orb_);
    return {index, (inversions & 1) ? -1 : 1};
}

namespace {

// i^{|x&z|} times the string's own phase; P|b> = base * (-1)^{|z&b|} |b^x>.
Complex base_factor(const PauliString& p) {
    static constexpr Complex ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return ip[(p.phase + std::popcount(p.x & p.z)) & 3];
}

inline double parity_sign(std::uint64_t v) noexcept { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

} // namespace

void apply_pauli_exp(Statevector& state, const PauliString& p, double theta) {
    if (!p.hermitian()) throw ValidationError("exp(i theta P) needs a Hermitian Pauli string");
    if (((p.x | p.z) >> state.n_qubits()) != 0) throw ShapeError("Pauli string acts outside the register");
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex f = base_factor(p);
    auto amps = state.amplitudes();
    const std::uint64_t n = amps.size();
    if (p.x == 0) {
        const double sgn = f.real();
        const Complex plus(c, s * sgn), minus(c, -s * sgn);
        for (std::uint64_t b = 0; b < n; ++b) amps[b] *= (std::popcount(p.z & b) & 1) ? minus : plus;
        return;
    }
    const Complex is(0.0, s);
    const int top = 63 - std::countl_zero(p.x);
    const std::uint64_t topbit = std::uint64_t{1} << top;
    for (std::uint64_t b = 0; b < n; ++b) {
        if (b & topbit) continue;
        const std::uint64_t b2 = b ^ p.x;
        const Complex a1 = amps[b], a2 = amps[b2];
        // (P a)_b = f (-1)^{|z&b2|} a_b2 and vice versa.
        amps[b] = c * a1 + is * f * parity_sign(p.z & b2) * a2;
        amps[b2] = c * a2 + is * f * parity_sign(p.z & b) * a1;
    }
}

void apply_pauli_string(const PauliString& p, Complex c, const Statevector& in, Statevector& out) {
    if (in.size() != out.size()) throw ShapeError("statevectors have different qubit counts");
    const Complex f = c * base_factor(p);
    const auto src = in.amplitudes();
    auto dst = out.amplitudes();
    for (std::uint64_t b = 0; b < src.size(); ++b) {
        if (src[b] == Complex{}) continue;
        dst[b ^ p.x] += f * parity_sign(p.z & b) * src[b];
    }
}

Statevector apply(const PauliSum& op, const Statevector& psi) {
    Statevector out(psi.n_qubits());
    for (const auto& t : op.terms()) apply_pauli_string(t.string, t.coefficient, psi, out);
    return out;
}

double expectation(const Statevector& psi, const PauliSum& op) {
    const Complex e = psi.inner(apply(op, psi));
    if (std::abs(e.imag()) > 1e-8) {
        throw HermiticityError(fmt::format("expectation value has imaginary part {:.3e}", e.imag()));
    }
    return e.real();
}

struct QubitHamiltonian::SectorBlock {
    CIHamiltonian ham;
    std::vector<std::uint64_t> index;
    std::vector<double> sign;
};

struct QubitHamiltonian::Cache {
    std::mutex mutex;
    std::map<std::pair<int, int>, std::unique_ptr<SectorBlock>> blocks;
};

QubitHamiltonian::QubitHamiltonian(IntegralSet ints, QubitMap map)
    : ints_(std::move(ints)), map_(std::move(map)), cache_(std::make_unique<Cache>()) {
    if (static_cast<std::size_t>(map_.n_orb()) != ints_.n_orb) {
        throw ShapeError(fmt::format("qubit map covers {} orbitals, integrals have {}", map_.n_orb(), ints_.n_orb));
    }
}

QubitHamiltonian::~QubitHamiltonian() = default;
QubitHamiltonian::QubitHamiltonian(QubitHamiltonian&&) noexcept = default;
QubitHamiltonian& QubitHamiltonian::operator=(QubitHamiltonian&&) noexcept = default;

const QubitHamiltonian::SectorBlock& QubitHamiltonian::block(int n_alpha, int n_beta) const {
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->blocks[{n_alpha, n_beta}];
    if (!slot) {
        const Sector sector{static_cast<int>(ints_.n_orb), n_alpha, n_beta};
        auto blk = std::make_unique<SectorBlock>(SectorBlock{CIHamiltonian(ints_, sector), {}, {}});
        const auto alpha = enumerate_strings(sector.n_orb, n_alpha);
        const auto beta = enumerate_strings(sector.n_orb, n_beta);
        blk->index.reserve(sector.dim());
        blk->sign.reserve(sector.dim());
        for (Bitmask a : alpha)
            for (Bitmask b : beta) {
                const auto [idx, sgn] = map_.to_qubit(a, b);
                blk->index.push_back(idx);
                blk->sign.push_back(sgn);
            }
        slot = std::move(blk);
    }
    return *slot;
}

Statevector QubitHamiltonian::apply(const Statevector& psi) const {
    if (psi.n_qubits() != map_.n_qubits()) {
        throw ShapeError(fmt::format("state has {} qubits, Hamiltonian needs {}", psi.n_qubits(), map_.n_qubits()));
    }
    const auto amps = psi.amplitudes();
    const int n = map_.n_orb();
    std::vector<char> present(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if (amps[b] == Complex{}) continue;
        const int na = std::popcount(b & map_.alpha_qubits()), nb = std::popcount(b & map_.beta_qubits());
        present[static_cast<std::size_t>(na * (n + 1) + nb)] = 1;
    }
    Statevector out(psi.n_qubits());
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb) {
            if (!present[static_cast<std::size_t>(na * (n + 1) + nb)]) continue;
            const SectorBlock& blk = block(na, nb);
            const std::size_t dim = blk.index.size();
            Vector re(static_cast<Eigen::Index>(dim)), im(static_cast<Eigen::Index>(dim));
            bool has_imag = false;
            for (std::size_t i = 0; i < dim; ++i) {
                const Complex a = amps[blk.index[i]] * blk.sign[i];
                re[static_cast<Eigen::Index>(i)] = a.real();
                im[static_cast<Eigen::Index>(i)] = a.imag();
                has_imag |= a.imag() != 0.0;
            }
            const Vector sre = blk.ham.apply({re.data(), dim});
            const Vector sim = has_imag ? blk.ham.apply({im.data(), dim}) : Vector::Zero(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < dim; ++i) {
                const auto k = static_cast<Eigen::Index>(i);
                out[blk.index[i]] = blk.sign[i] * Complex(sre[k], sim[k]);
            }
        }
    return out;
}

double QubitHamiltonian::expectation(const Statevector& psi) const {
    const Complex e = psi.inner(apply(psi));
    if (std::abs(e.imag()) > 1e-8) {
        throw HermiticityError(fmt::format("energy has imaginary part {:.3e}", e.imag()));
    }
    return e.real();
}

double expectation(const Statevector& psi, const IntegralSet& ints, const QubitMap& map) {
    return QubitHamiltonian(ints, map).expectation(psi);
}

double s_squared_expectation(const Statevector& psi, const QubitMap& map, int n_alpha, int n_beta) {
    const Sector sec{map.n_orb(), n_alpha, n_beta};
    const auto alpha = enumerate_strings(sec.n_orb, n_alpha);
    const auto beta = enumerate_strings(sec.n_orb, n_beta);
    Vector re(static_cast<Eigen::Index>(sec.dim()));
    Vector im(re.size());
    std::size_t k = 0;
    for (Bitmask a : alpha)
        for (Bitmask b : beta) {
            const auto [idx, sign] = map.to_qubit(a, b);
            re[static_cast<Eigen::Index>(k)] = sign * psi[idx].real();
            im[static_cast<Eigen::Index>(k)] = sign * psi[idx].imag();
            ++k;
        }
    const double inside = re.squaredNorm() + im.squaredNorm();
    const double total = psi.norm() * psi.norm();
    if (std::abs(total - inside) > 1e-10 * std::max(1.0, total)) {
        throw ValidationError(fmt::format("state has weight {:.3e} outside the ({}, {}) sector", total - inside,
                                          n_alpha, n_beta));
    }
    const double sz = 0.5 * (n_alpha - n_beta);
    const std::span<const double> vr(re.data(), static_cast<std::size_t>(re.size()));
    const std::span<const double> vi(im.data(), static_cast<std::size_t>(im.size()));
    return (s_plus_norm2(sec, vr) + s_plus_norm2(sec, vi)) / inside + sz * sz + sz;
}

PauliSum qubit_hamiltonian(const IntegralSet& ints, const QubitMap& map) {
    const int n = static_cast<int>(ints.n_orb);
    const int nq = map.n_qubits();
    std::vector<PauliTerm> raw;
    auto add = [&](const std::vector<Ladder>& ops, double c) {
        const PauliSum image = jw_map(ops, c, nq);
        raw.insert(raw.end(), image.terms().begin(), image.terms().end());
    };
    raw.push_back({ints.e_core, {}});
    for (int s = 0; s < 2; ++s)
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const double h = ints.h(p, q);
                if (h != 0.0) add({{map.qubit(s * n + p), true}, {map.qubit(s * n + q), false}}, h);
            }
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r)
                        for (int u = 0; u < n; ++u) {
                            const double g = ints.g(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                                    static_cast<std::size_t>(r), static_cast<std::size_t>(u));
                            if (g == 0.0 || (s == t && (p == r || q == u))) continue;
                            add({{map.qubit(s * n + p), true},
                                 {map.qubit(t * n + r), true},
                                 {map.qubit(t * n + u), false},
                                 {map.qubit(s * n + q), false}},
                                0.5 * g);
                        }
    return PauliSum::from_terms(std::move(raw));
}

} // namespace lasuscc
