#pragma once

#include <cassert>
#include <string>

#include "ochaus/errors.hpp"

namespace ochaus {

/// Root-system multiplicities (alpha, beta) of the rank-one Jacobi-Cherednik
/// setting. Requires alpha >= beta >= -1/2 and alpha > -1/2, so rho > 0.
class JacobiParams {
public:
    JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta), rho_(alpha + beta + 1.0) {
        if (!(alpha >= beta) || !(beta >= -0.5) || !(alpha > -0.5)) {
            throw DomainError("JacobiParams: need alpha >= beta >= -1/2 and alpha > -1/2, got alpha=" +
                              std::to_string(alpha) + " beta=" + std::to_string(beta));
        }
        assert(rho_ > 0.0);
    }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double rho() const noexcept { return rho_; }

    /// Exponent of sinh in the weight, 2*alpha + 1.
    double sinh_power() const noexcept { return 2.0 * alpha_ + 1.0; }
    /// Exponent of cosh in the weight, 2*beta + 1.
    double cosh_power() const noexcept { return 2.0 * beta_ + 1.0; }

    /// Parameters shifted by one in both slots, used by the derivative of phi.
    JacobiParams shifted() const { return JacobiParams(alpha_ + 1.0, beta_ + 1.0); }

    friend bool operator==(const JacobiParams& a, const JacobiParams& b) noexcept {
        return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
    }

private:
    double alpha_;
    double beta_;
    double rho_;
};

}  // namespace ochaus
