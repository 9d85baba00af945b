#include <cmath>

#include "lasuscc/integrals.hpp"

namespace lasuscc {

// F0(t) = integral_0^1 exp(-t u^2) du.
// Small t: F0(t) = exp(-t) * sum_k (2t)^k / (2k+1)!!, which has only positive
// terms. Large t: the closed form via erf, where erf(sqrt t) is within an ulp
// of 1 and no cancellation occurs.
double boys_f0(double t) {
    if (t < 0.0) {
        t = 0.0;
    }
    if (t < 12.0) {
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= 2.0 * t / (2.0 * k + 1.0);
            sum += term;
            if (term < 1e-17 * sum) {
                break;
            }
        }
        return std::exp(-t) * sum;
    }
    return 0.5 * std::sqrt(M_PI / t) * std::erf(std::sqrt(t));
}

} // namespace lasuscc
