#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "core/assembly.hpp"
#include "core/geometry.hpp"
#include "core/transfer.hpp"

namespace mit {

enum class LoewnerRelation { leq, geq, equal, incomparable };

std::string to_string(LoewnerRelation r);

// Tolerance-thresholded Loewner comparison of two symmetric matrices.
// relation == leq   iff  min eig(H2 - H1) >= -tol   (H1 below H2)
// relation == geq   iff  min eig(H1 - H2) >= -tol
// equal/incomparable when both/neither hold.
struct LoewnerVerdict {
    double min_eig_diff = 0.0;      // smallest eigenvalue of H2 - H1
    double min_eig_diff_rev = 0.0;  // smallest eigenvalue of H1 - H2
    double tol = 0.0;
    LoewnerRelation relation = LoewnerRelation::incomparable;
};

LoewnerVerdict loewner_compare(const Eigen::MatrixXd& H1, const Eigen::MatrixXd& H2,
                               double tol);

// Numeric verification of the order-calculus identities used by the main
// theorem, on a concrete operator quadruple:
//   (a) inversion reverses the order of SPD operators,
//   (b) adding a common symmetric shift preserves it,
//   (c) congruence B^T (.) B preserves it.
struct LemmaSuiteReport {
    LoewnerRelation input_relation = LoewnerRelation::incomparable;
    double margin_order = 0.0;       // min eig(A2 - A1)
    double margin_inverse = 0.0;     // min eig(A1^-1 - A2^-1)
    double margin_shift = 0.0;       // min eig((A2 + C) - (A1 + C))
    double margin_congruence = 0.0;  // min eig(B^T (A2 - A1) B)
    double tol_order = 0.0, tol_inverse = 0.0, tol_shift = 0.0, tol_congruence = 0.0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

LemmaSuiteReport check_lemma_suite(const Eigen::MatrixXd& A1, const Eigen::MatrixXd& A2,
                                   const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                                   double tol_scale = 1e-10);

// Full-pipeline ordering check for a pair of resistivity maps over a shared
// grid and coil set, at each requested evaluation point.
struct MonotonicityEntry {
    double lambda = 0.0;
    LoewnerVerdict verdict;
    double h_norm = 0.0;  // max of the two spectral norms, sets the tolerance
};

struct MonotonicityReport {
    double lambda1_alpha = 0.0;
    double lambda1_beta = 0.0;
    std::vector<MonotonicityEntry> entries;
    // True when every entry reports the fixed-convention ordering
    // (alpha below beta, or equality).
    bool consistent = false;
};

MonotonicityReport verify_main_theorem(const Scenario& alpha, const Scenario& beta,
                                       const std::vector<double>& lambdas,
                                       double tol_rel = 1e-12,
                                       const AssemblyOptions& opts = {},
                                       int sign_convention = kSignConvention);

}  // namespace mit
