#include "core/filament.hpp"

#include <array>
#include <cmath>

#include "core/constants.hpp"
#include "core/errors.hpp"

namespace mit {

namespace {

constexpr double kQuarterMu0 = kMu0 / (4.0 * std::numbers::pi);

// Second antiderivative of w -> 1/sqrt(w^2 + rho^2); for rho = 0 the
// collinear limit |w|(ln|w| - 1).
double corner_term(double w, double rho) {
    if (rho > 0.0) return w * std::asinh(w / rho) - std::hypot(w, rho);
    const double aw = std::abs(w);
    if (aw == 0.0) return 0.0;
    return aw * (std::log(aw) - 1.0);
}

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};

GaussRule gauss_rule(int order) {
    switch (order) {
        case 4:
            return {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                     0.8611363115940526},
                    {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                     0.3478548451374538}};
        case 8:
            return {{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                     -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
                     0.7966664774136267, 0.9602898564975363},
                    {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                     0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                     0.2223810344533745, 0.1012285362903763}};
        case 16:
            return {{-0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
                     -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
                     -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
                     0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                     0.7554044083550030, 0.8656312023878318, 0.9445750230732326,
                     0.9894009349916499},
                    {0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
                     0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
                     0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
                     0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                     0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
                     0.0271524594117541}};
        default:
            throw ArgumentError("unsupported Gauss order " + std::to_string(order));
    }
}

}  // namespace

double self_partial_inductance(double len, double radius) {
    if (!(radius > 0.0) || !(radius < 0.5 * len))
        throw ArgumentError("invalid wire radius: need 0 < radius < length/2");
    return (kMu0 * len / (2.0 * std::numbers::pi)) * (std::log(2.0 * len / radius) - 1.0);
}

double mutual_parallel_segments(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                                const Eigen::Vector3d& b0, const Eigen::Vector3d& b1) {
    const Eigen::Vector3d da = a1 - a0;
    const Eigen::Vector3d db = b1 - b0;
    const double la = da.norm();
    const double lb = db.norm();
    if (la == 0.0 || lb == 0.0) return 0.0;
    const Eigen::Vector3d u = da / la;
    const double cosang = u.dot(db) / lb;
    if (std::abs(std::abs(cosang) - 1.0) > 1e-9)
        throw ArgumentError("mutual_parallel_segments requires parallel segments");
    const double sign = cosang > 0.0 ? 1.0 : -1.0;

    // Axial coordinates along u with segment A spanning [0, la].
    const double t0 = u.dot(b0 - a0);
    const double t1 = u.dot(b1 - a0);
    const double v1 = std::min(t0, t1);
    const double v2 = std::max(t0, t1);
    const double rho = ((b0 - a0) - t0 * u).norm();

    const double integral = corner_term(la - v1, rho) - corner_term(la - v2, rho) -
                            corner_term(0.0 - v1, rho) + corner_term(0.0 - v2, rho);
    return kQuarterMu0 * sign * integral;
}

double neumann_segments_gauss(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                              const Eigen::Vector3d& b0, const Eigen::Vector3d& b1,
                              int order) {
    const GaussRule g = gauss_rule(order);
    const Eigen::Vector3d da = a1 - a0;
    const Eigen::Vector3d db = b1 - b0;
    const double tangents = da.dot(db);  // la*lb*cos(angle)
    if (tangents == 0.0) return 0.0;

    double sum = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const Eigen::Vector3d pa = a0 + 0.5 * (g.x[i] + 1.0) * da;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const Eigen::Vector3d pb = b0 + 0.5 * (g.x[j] + 1.0) * db;
            sum += g.w[i] * g.w[j] / (pa - pb).norm();
        }
    }
    return kQuarterMu0 * 0.25 * tangents * sum;
}

double mutual_inductance_polylines(const std::vector<Eigen::Vector3d>& a,
                                   const std::vector<Eigen::Vector3d>& b,
                                   int order) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < b.size(); ++j)
            total += neumann_segments_gauss(a[i], a[i + 1], b[j], b[j + 1], order);
    return total;
}

}  // namespace mit
