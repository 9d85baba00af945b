#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lasuscc/ansatz.hpp"
#include "lasuscc/optimizer.hpp"
#include "lasuscc/resources.hpp"
#include "lasuscc/statevector.hpp"

namespace lasuscc {

inline constexpr double kHartreeToKcalMol = 627.509;
inline constexpr double kHartreeToWavenumber = 219474.63;

/// First-order Trotterized ansatz prod_k exp(t_k G_k) |reference>, with the
/// selected generators applied in pool order (singles, then doubles).
class TrotterAnsatz {
public:
    /// Pauli: one exp(i t c_j P_j) per Jordan-Wigner term. Pairwise: the equivalent
    /// 2x2 rotations of ExcitationKernel (much cheaper; the default).
    enum class Kernel { Pauli, Pairwise };

    TrotterAnsatz(const GeneratorPool& pool, std::vector<std::size_t> selection, const QubitMap& map,
                  Kernel kernel = Kernel::Pairwise);

    std::size_t size() const noexcept { return order_.size(); }
    /// Pool index of each amplitude, in application order.
    const std::vector<std::size_t>& order() const noexcept { return order_; }
    Kernel kernel() const noexcept { return kernel_; }

    /// <bra| G_k |ket>
    Complex matrix_element(std::size_t k, const Statevector& bra, const Statevector& ket) const;

    /// psi <- exp(t G_k) psi
    void apply(Statevector& psi, std::size_t k, double t) const;
    Statevector prepare(const Statevector& reference, std::span<const double> t) const;

private:
    Kernel kernel_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<PauliRotation>> rotations_;
    std::vector<ExcitationKernel> pairwise_;
};

class VqeProblem {
public:
    VqeProblem(const TrotterAnsatz& ansatz, const Statevector& reference, const QubitHamiltonian& h);

    std::size_t size() const noexcept { return ansatz_->size(); }
    const TrotterAnsatz& ansatz() const noexcept { return *ansatz_; }

    double energy(std::span<const double> t) const;
    /// Energy plus its exact derivative from one forward and one reverse sweep.
    double energy_and_gradient(std::span<const double> t, std::span<double> grad) const;

private:
    const TrotterAnsatz* ansatz_;
    const Statevector* reference_;
    const QubitHamiltonian* h_;
};

struct VqeResult {
    double energy = 0.0;
    double initial_energy = 0.0;
    std::vector<double> amplitudes; // in TrotterAnsatz::order()
    std::vector<std::size_t> order;
    int iterations = 0;
    int evaluations = 0;
    double gradient_norm = 0.0;
    std::vector<double> energy_trace;
    bool converged = false;
    std::string exit_reason;
    double wall_seconds = 0.0;
};

VqeResult minimize(const VqeProblem& problem, std::vector<double> t0, const OptimizerSettings& settings = {});

struct SweepRecord {
    double epsilon = 0.0;
    std::size_t n_params = 0;
    std::size_t n_singles = 0;
    std::size_t n_doubles = 0;
    VqeResult result;
    GateCountEstimate gates;
};

/// One minimization per threshold of a strictly decreasing ladder on a screened
/// pool. With warm_start each run starts from the previous optimum (new
/// amplitudes zero); otherwise every run starts from t = 0.
std::vector<SweepRecord> sweep(const GeneratorPool& pool, const std::vector<double>& ladder, bool warm_start,
                               const Statevector& reference, const QubitHamiltonian& h,
                               const OptimizerSettings& settings = {},
                               const std::function<void(const SweepRecord&)>& on_record = {});

/// Yamaguchi coupling (E_HS - E_LS) / (<S^2>_LS - <S^2>_HS) in cm^-1.
double yamaguchi_j(double e_hs, double e_ls, double s2_hs, double s2_ls);

} // namespace lasuscc
