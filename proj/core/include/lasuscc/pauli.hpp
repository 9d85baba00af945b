#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lasuscc {

using Complex = std::complex<double>;
using QubitMask = std::uint64_t;

/// i^phase * prod_q sigma(x_q, z_q), with sigma(1,0)=X, sigma(1,1)=Y, sigma(0,1)=Z.
struct PauliString {
    QubitMask x = 0;
    QubitMask z = 0;
    int phase = 0; // exponent of i, 0..3

    /// Self-adjoint iff the overall phase is real.
    bool hermitian() const noexcept { return (phase & 1) == 0; }
    Complex phase_factor() const noexcept;

    /// Letters from qubit 0 upward, e.g. "XZIY"; identity on n_qubits qubits is "I...I".
    std::string letters(int n_qubits) const;
    static PauliString parse(const std::string& letters); // same convention, phase 0

    bool commutes_with(const PauliString& o) const noexcept;
    bool operator==(const PauliString&) const = default;
};

PauliString operator*(const PauliString& a, const PauliString& b) noexcept;

struct PauliTerm {
    Complex coefficient;
    PauliString string; // phase always 0 inside a PauliSum
};

/// Linear combination of Pauli strings, kept sorted by (x, z) with duplicates
/// merged and near-zero coefficients dropped.
class PauliSum {
public:
    static constexpr double kPruneThreshold = 1e-14;

    PauliSum() = default;
    static PauliSum identity(Complex c = 1.0);
    static PauliSum from_string(const PauliString& s, Complex c = 1.0);
    /// Canonicalizes an arbitrary term list (string phases are folded into the coefficients).
    static PauliSum from_terms(std::vector<PauliTerm> terms);

    const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    PauliSum& operator+=(const PauliSum& o);
    PauliSum& operator-=(const PauliSum& o);
    PauliSum& operator*=(Complex c);
    friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
    friend PauliSum operator*(PauliSum a, Complex c) { return a *= c; }
    friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

    PauliSum adjoint() const;
    /// Largest |coefficient| difference after canonicalization; 0 means equal.
    double distance(const PauliSum& o) const;
    /// True when every coefficient is real to within tol (the sum is Hermitian).
    bool is_hermitian(double tol = 1e-12) const;

private:
    void canonicalize();
    std::vector<PauliTerm> terms_;
};

/// One ladder operator acting on spin-orbital (qubit) `mode`.
struct Ladder {
    int mode;
    bool dagger;
};

/// Jordan-Wigner image of coefficient * (product of ladder operators, left to right).
/// a^dagger_q = Z_0 ... Z_{q-1} (X_q - iY_q)/2.
PauliSum jw_map(const std::vector<Ladder>& ops, Complex coefficient, int n_qubits);

} // namespace lasuscc
