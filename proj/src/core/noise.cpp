#include "core/noise.hpp"

#include <cmath>
#include <numbers>

#include "core/transfer.hpp"

namespace mit {

double NormalRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Eigen::MatrixXd symmetric_noise(int n, double target_spectral_norm, NormalRng& rng) {
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    Eigen::MatrixXd E = 0.5 * (A + A.transpose());
    const double norm = spectral_norm(E);
    if (norm == 0.0 || target_spectral_norm == 0.0)
        return Eigen::MatrixXd::Zero(n, n);
    return E * (target_spectral_norm / norm);
}

}  // namespace mit
