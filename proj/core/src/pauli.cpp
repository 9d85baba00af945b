#include "lasuscc/pauli.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

bool key_less(const PauliString& a, const PauliString& b) noexcept {
    return a.x != b.x ? a.x < b.x : a.z < b.z;
}

} // namespace

Complex PauliString::phase_factor() const noexcept { return kIPow[phase & 3]; }

std::string PauliString::letters(int n_qubits) const {
    std::string out(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
        const bool xq = (x >> q) & 1, zq = (z >> q) & 1;
        out[static_cast<std::size_t>(q)] = xq ? (zq ? 'Y' : 'X') : (zq ? 'Z' : 'I');
    }
    return out;
}

PauliString PauliString::parse(const std::string& letters) {
    if (letters.size() > 64) throw ValidationError("Pauli string longer than 64 qubits");
    PauliString s;
    for (std::size_t q = 0; q < letters.size(); ++q) {
        const QubitMask bit = QubitMask{1} << q;
        switch (letters[q]) {
        case 'I': break;
        case 'X': s.x |= bit; break;
        case 'Y': s.x |= bit; s.z |= bit; break;
        case 'Z': s.z |= bit; break;
        default: throw ValidationError(fmt::format("bad Pauli letter '{}'", letters[q]));
        }
    }
    return s;
}

bool PauliString::commutes_with(const PauliString& o) const noexcept {
    return ((std::popcount(x & o.z) + std::popcount(z & o.x)) & 1) == 0;
}

PauliString operator*(const PauliString& a, const PauliString& b) noexcept {
    // sigma(x,z) = i^{x z} X^x Z^z and Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1.
    PauliString r;
    r.x = a.x ^ b.x;
    r.z = a.z ^ b.z;
    const int e = a.phase + b.phase + std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
                  2 * std::popcount(a.z & b.x) - std::popcount(r.x & r.z);
    r.phase = ((e % 4) + 4) % 4;
    return r;
}

PauliSum PauliSum::identity(Complex c) { return from_string({}, c); }

PauliSum PauliSum::from_string(const PauliString& s, Complex c) {
    PauliSum out;
    out.terms_.push_back({c * s.phase_factor(), {s.x, s.z, 0}});
    out.canonicalize();
    return out;
}

PauliSum PauliSum::from_terms(std::vector<PauliTerm> terms) {
    PauliSum out;
    for (auto& t : terms) {
        t.coefficient *= t.string.phase_factor();
        t.string.phase = 0;
    }
    out.terms_ = std::move(terms);
    out.canonicalize();
    return out;
}

void PauliSum::canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const PauliTerm& a, const PauliTerm& b) { return key_less(a.string, b.string); });
    std::vector<PauliTerm> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().string == t.string) merged.back().coefficient += t.coefficient;
        else merged.push_back(t);
    }
    std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coefficient) < kPruneThreshold; });
    terms_ = std::move(merged);
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& o) {
    for (const auto& t : o.terms_) terms_.push_back({-t.coefficient, t.string});
    canonicalize();
    return *this;
}

PauliSum& PauliSum::operator*=(Complex c) {
    for (auto& t : terms_) t.coefficient *= c;
    canonicalize();
    return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    PauliSum out;
    out.terms_.reserve(a.size() * b.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            const PauliString p = ta.string * tb.string;
            out.terms_.push_back({ta.coefficient * tb.coefficient * p.phase_factor(), {p.x, p.z, 0}});
        }
    out.canonicalize();
    return out;
}

PauliSum PauliSum::adjoint() const {
    PauliSum out = *this;
    for (auto& t : out.terms_) t.coefficient = std::conj(t.coefficient);
    return out;
}

double PauliSum::distance(const PauliSum& o) const {
    const PauliSum d = *this - o;
    double worst = 0.0;
    for (const auto& t : d.terms_) worst = std::max(worst, std::abs(t.coefficient));
    return worst;
}

bool PauliSum::is_hermitian(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [tol](const PauliTerm& t) { return std::abs(t.coefficient.imag()) <= tol; });
}

PauliSum jw_map(const std::vector<Ladder>& ops, Complex coefficient, int n_qubits) {
    if (n_qubits < 0 || n_qubits > 64) throw ValidationError(fmt::format("unsupported qubit count {}", n_qubits));
    PauliSum out = PauliSum::identity(coefficient);
    for (const auto& op : ops) {
        if (op.mode < 0 || op.mode >= n_qubits) {
            throw ValidationError(fmt::format("mode {} out of range for {} qubits", op.mode, n_qubits));
        }
        const QubitMask below = (QubitMask{1} << op.mode) - 1;
        const QubitMask bit = QubitMask{1} << op.mode;
        PauliSum ladder = PauliSum::from_string({bit, below, 0}, 0.5);                        // Z..Z X
        ladder += PauliSum::from_string({bit, below | bit, 0}, Complex(0, op.dagger ? -0.5 : 0.5)); // Z..Z Y
        out = out * ladder;
    }
    return out;
}

} // namespace lasuscc
