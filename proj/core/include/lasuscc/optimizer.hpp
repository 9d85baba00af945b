#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lasuscc {

struct OptimizerSettings {
    double gradient_tolerance = 1e-9; // exit when ||g||_inf falls below this
    double energy_tolerance = 1e-12;  // or when an accepted step lowers f by less than this
    int max_iterations = 1000;
};

/// f(x), writing df/dx into the second argument.
using Objective = std::function<double(std::span<const double>, std::span<double>)>;

struct BfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    double gradient_norm = 0.0; // infinity norm at exit
    int iterations = 0;         // accepted steps
    int evaluations = 0;
    bool converged = false;
    std::string exit_reason;
    std::vector<double> trace; // f at the start and after every accepted step
};

/// Quasi-Newton minimization with inverse-Hessian BFGS updates and an Armijo
/// backtracking line search. Running out of iterations is reported through
/// `converged`, not thrown.
BfgsResult bfgs(const Objective& objective, Eigen::VectorXd x0, const OptimizerSettings& settings);

} // namespace lasuscc
