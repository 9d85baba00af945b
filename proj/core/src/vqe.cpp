#include "lasuscc/vqe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

TrotterAnsatz::TrotterAnsatz(const GeneratorPool& pool, std::vector<std::size_t> selection, const QubitMap& map,
                             Kernel kernel)
    : kernel_(kernel), order_(std::move(selection)) {
    std::sort(order_.begin(), order_.end());
    if (std::adjacent_find(order_.begin(), order_.end()) != order_.end()) {
        throw ValidationError("selection lists a generator twice");
    }
    for (std::size_t i : order_) {
        if (i >= pool.size()) throw ValidationError(fmt::format("generator index {} outside the pool", i));
        if (kernel_ == Kernel::Pauli) rotations_.push_back(compile_generator(pool.generators[i], map));
        else pairwise_.emplace_back(pool.generators[i], map);
    }
}

void TrotterAnsatz::apply(Statevector& psi, std::size_t k, double t) const {
    if (t == 0.0) return;
    if (kernel_ == Kernel::Pairwise) {
        pairwise_[k].rotate(psi, t);
        return;
    }
    for (const auto& r : rotations_[k]) apply_pauli_exp(psi, r.string, t * r.coefficient);
}

Complex TrotterAnsatz::matrix_element(std::size_t k, const Statevector& bra, const Statevector& ket) const {
    if (kernel_ == Kernel::Pairwise) return pairwise_[k].matrix_element(bra, ket);
    Complex acc{};
    for (const auto& r : rotations_[k]) acc += Complex(0.0, r.coefficient) * lasuscc::matrix_element(bra, r.string, ket);
    return acc;
}

Statevector TrotterAnsatz::prepare(const Statevector& reference, std::span<const double> t) const {
    if (t.size() != size()) throw ShapeError(fmt::format("{} amplitudes for {} generators", t.size(), size()));
    Statevector psi = reference;
    for (std::size_t k = 0; k < size(); ++k) apply(psi, k, t[k]);
    return psi;
}

VqeProblem::VqeProblem(const TrotterAnsatz& ansatz, const Statevector& reference, const QubitHamiltonian& h)
    : ansatz_(&ansatz), reference_(&reference), h_(&h) {
    if (reference.n_qubits() != h.map().n_qubits()) throw ShapeError("reference state and Hamiltonian disagree");
}

double VqeProblem::energy(std::span<const double> t) const {
    return h_->expectation(ansatz_->prepare(*reference_, t));
}

double VqeProblem::energy_and_gradient(std::span<const double> t, std::span<double> grad) const {
    if (grad.size() != size()) throw ShapeError("gradient buffer has the wrong length");
    Statevector psi = ansatz_->prepare(*reference_, t);
    Statevector lambda = h_->apply(psi);
    const Complex e = psi.inner(lambda);
    if (std::abs(e.imag()) > 1e-8) throw HermiticityError(fmt::format("energy has imaginary part {:.3e}", e.imag()));
    for (std::size_t k = size(); k-- > 0;) {
        // d/dt_k <psi|H|psi> = 2 Re <lambda_k| G_k |psi_k>
        grad[k] = 2.0 * ansatz_->matrix_element(k, lambda, psi).real();
        ansatz_->apply(psi, k, -t[k]);
        ansatz_->apply(lambda, k, -t[k]);
    }
    return e.real();
}

VqeResult minimize(const VqeProblem& problem, std::vector<double> t0, const OptimizerSettings& settings) {
    if (t0.empty()) t0.assign(problem.size(), 0.0);
    if (t0.size() != problem.size()) {
        throw ShapeError(fmt::format("{} starting amplitudes for {} generators", t0.size(), problem.size()));
    }
    const auto start = std::chrono::steady_clock::now();
    const Objective f = [&problem](std::span<const double> t, std::span<double> g) {
        return problem.energy_and_gradient(t, g);
    };
    const BfgsResult r =
        bfgs(f, Eigen::Map<const Eigen::VectorXd>(t0.data(), static_cast<Eigen::Index>(t0.size())), settings);
    VqeResult out;
    out.energy = r.f;
    out.initial_energy = r.trace.front();
    out.amplitudes.assign(r.x.data(), r.x.data() + r.x.size());
    out.order = problem.ansatz().order();
    out.iterations = r.iterations;
    out.evaluations = r.evaluations;
    out.gradient_norm = r.gradient_norm;
    out.energy_trace = r.trace;
    out.converged = r.converged;
    out.exit_reason = r.exit_reason;
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<SweepRecord> sweep(const GeneratorPool& pool, const std::vector<double>& ladder, bool warm_start,
                               const Statevector& reference, const QubitHamiltonian& h,
                               const OptimizerSettings& settings,
                               const std::function<void(const SweepRecord&)>& on_record) {
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] >= 0.0)) throw ValidationError(fmt::format("ladder entry {} is negative", i));
        if (i > 0 && !(ladder[i] < ladder[i - 1])) throw ValidationError("ladder must be strictly decreasing");
    }
    std::vector<SweepRecord> records;
    std::map<std::size_t, double> previous;
    for (double eps : ladder) {
        const TrotterAnsatz ansatz(pool, select(pool, eps), h.map());
        const VqeProblem problem(ansatz, reference, h);
        std::vector<double> t0(ansatz.size(), 0.0);
        if (warm_start)
            for (std::size_t k = 0; k < ansatz.size(); ++k)
                if (auto it = previous.find(ansatz.order()[k]); it != previous.end()) t0[k] = it->second;
        SweepRecord rec;
        rec.epsilon = eps;
        rec.result = minimize(problem, t0, settings);
        rec.n_params = ansatz.size();
        for (std::size_t i : ansatz.order())
            (pool.generators[i].kind == ExcitationKind::Single ? rec.n_singles : rec.n_doubles)++;
        rec.gates = estimate(rec.n_singles, rec.n_doubles);
        previous.clear();
        for (std::size_t k = 0; k < ansatz.size(); ++k) previous[ansatz.order()[k]] = rec.result.amplitudes[k];
        if (on_record) on_record(rec);
        records.push_back(std::move(rec));
    }
    return records;
}

double yamaguchi_j(double e_hs, double e_ls, double s2_hs, double s2_ls) {
    const double denom = s2_ls - s2_hs;
    if (std::abs(denom) < 1e-12) throw ValidationError("high- and low-spin <S^2> coincide; J is undefined");
    return (e_hs - e_ls) / denom * kHartreeToWavenumber;
}

} // namespace lasuscc
