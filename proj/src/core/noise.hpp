#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace mit {

// Deterministic normal sampler. Box-Muller on top of mt19937_64 so that
// streams are reproducible across standard libraries.
class NormalRng {
public:
    explicit NormalRng(std::uint64_t seed) : engine_(seed) {}

    double uniform();  // [0, 1)
    double normal();   // standard normal

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Symmetric Gaussian-ensemble perturbation scaled to the requested spectral
// norm (exactly; zero matrix when the norm is zero).
Eigen::MatrixXd symmetric_noise(int n, double target_spectral_norm, NormalRng& rng);

}  // namespace mit
