#include "lasuscc/optimizer.hpp"

#include <cmath>

#include "lasuscc/errors.hpp"

namespace lasuscc {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;

} // namespace

BfgsResult bfgs(const Objective& objective, Eigen::VectorXd x0, const OptimizerSettings& settings) {
    if (!(settings.gradient_tolerance > 0.0) || !(settings.energy_tolerance >= 0.0) || settings.max_iterations <= 0) {
        throw ValidationError("optimizer tolerances must be positive and max_iterations > 0");
    }
    const Eigen::Index n = x0.size();
    BfgsResult r;
    r.x = std::move(x0);
    Eigen::VectorXd g(n);
    auto eval = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
        ++r.evaluations;
        return objective({x.data(), static_cast<std::size_t>(n)}, {grad.data(), static_cast<std::size_t>(n)});
    };
    r.f = eval(r.x, g);
    r.trace.push_back(r.f);
    r.gradient_norm = n ? g.cwiseAbs().maxCoeff() : 0.0;
    if (n == 0 || r.gradient_norm < settings.gradient_tolerance) {
        r.converged = true;
        r.exit_reason = "gradient";
        return r;
    }

    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
    bool scaled = false;
    Eigen::VectorXd xn(n), gn(n);
    while (r.iterations < settings.max_iterations) {
        Eigen::VectorXd d = -hinv * g;
        double slope = g.dot(d);
        if (!(slope < 0.0)) {
            hinv.setIdentity();
            scaled = false;
            d = -g;
            slope = -g.squaredNorm();
        }
        // First step along -g: cap the largest component at 1.
        double alpha = scaled ? 1.0 : std::min(1.0, 1.0 / d.cwiseAbs().maxCoeff());
        double fn = 0.0;
        bool accepted = false;
        for (int k = 0; k < kMaxHalvings; ++k) {
            xn = r.x + alpha * d;
            fn = eval(xn, gn);
            if (std::isfinite(fn) && fn <= r.f + kArmijo * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // No representable decrease along a descent direction: f is at its numerical floor.
            r.converged = true;
            r.exit_reason = "line search stalled";
            return r;
        }
        const Eigen::VectorXd s = xn - r.x;
        const Eigen::VectorXd y = gn - g;
        const double decrease = r.f - fn;
        r.x = xn;
        g = gn;
        r.f = fn;
        r.trace.push_back(fn);
        ++r.iterations;
        r.gradient_norm = g.cwiseAbs().maxCoeff();

        const double sy = s.dot(y);
        if (sy > 1e-300 * std::max(1.0, s.squaredNorm())) {
            if (!scaled) {
                hinv *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const Eigen::VectorXd hy = hinv * y;
            const double yhy = y.dot(hy);
            hinv += (rho * rho * yhy + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }

        if (r.gradient_norm < settings.gradient_tolerance) {
            r.converged = true;
            r.exit_reason = "gradient";
            return r;
        }
        if (decrease < settings.energy_tolerance) {
            r.converged = true;
            r.exit_reason = "energy";
            return r;
        }
    }
    r.exit_reason = "iteration limit";
    return r;
}

} // namespace lasuscc
