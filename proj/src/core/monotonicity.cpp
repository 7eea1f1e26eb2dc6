#include "core/monotonicity.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "core/errors.hpp"
#include "core/spectral.hpp"

namespace mit {

std::string to_string(LoewnerRelation r) {
    switch (r) {
        case LoewnerRelation::leq: return "LEQ";
        case LoewnerRelation::geq: return "GEQ";
        case LoewnerRelation::equal: return "EQUAL";
        case LoewnerRelation::incomparable: return "INCOMPARABLE";
    }
    return "?";
}

namespace {

void require_symmetric(const Eigen::MatrixXd& H, const char* name) {
    if (H.rows() != H.cols())
        throw ArgumentError(std::string(name) + " must be square");
    const double scale = H.cwiseAbs().maxCoeff();
    const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > 1e-10 * scale)
        throw ArgumentError(std::string(name) + " asymmetric beyond 1e-10 relative");
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (A + A.transpose()),
                                                          Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace

LoewnerVerdict loewner_compare(const Eigen::MatrixXd& H1, const Eigen::MatrixXd& H2,
                               double tol) {
    if (H1.rows() != H2.rows() || H1.cols() != H2.cols())
        throw ArgumentError("loewner_compare: dimension mismatch");
    require_symmetric(H1, "loewner_compare: H1");
    require_symmetric(H2, "loewner_compare: H2");
    if (!(tol >= 0.0)) throw ArgumentError("loewner_compare: tol must be >= 0");

    const Eigen::VectorXd eigs = sym_eigenvalues(H2 - H1);
    LoewnerVerdict v;
    v.min_eig_diff = eigs.minCoeff();
    v.min_eig_diff_rev = -eigs.maxCoeff();
    v.tol = tol;
    const bool leq = v.min_eig_diff >= -tol;
    const bool geq = v.min_eig_diff_rev >= -tol;
    v.relation = leq && geq   ? LoewnerRelation::equal
                 : leq        ? LoewnerRelation::leq
                 : geq        ? LoewnerRelation::geq
                              : LoewnerRelation::incomparable;
    return v;
}

LemmaSuiteReport check_lemma_suite(const Eigen::MatrixXd& A1, const Eigen::MatrixXd& A2,
                                   const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                                   double tol_scale) {
    if (A1.rows() != A2.rows() || A1.rows() != A1.cols() || A2.rows() != A2.cols())
        throw ArgumentError("check_lemma_suite: A1/A2 must be square and conformable");
    if (B.rows() != A1.rows())
        throw ArgumentError("check_lemma_suite: B must map into the space of A1/A2");
    if (C.rows() != A1.rows() || C.cols() != A1.cols())
        throw ArgumentError("check_lemma_suite: C must be conformable with A1/A2");
    require_symmetric(A1, "check_lemma_suite: A1");
    require_symmetric(A2, "check_lemma_suite: A2");
    require_symmetric(C, "check_lemma_suite: C");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(A1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(A2);
    const double n1 = std::max(std::abs(e1.eigenvalues().minCoeff()),
                               std::abs(e1.eigenvalues().maxCoeff()));
    const double n2 = std::max(std::abs(e2.eigenvalues().minCoeff()),
                               std::abs(e2.eigenvalues().maxCoeff()));
    if (e1.eigenvalues().minCoeff() <= 1e-14 * n1 ||
        e2.eigenvalues().minCoeff() <= 1e-14 * n2)
        throw NumericError("check_lemma_suite: singular or non-SPD input");

    LemmaSuiteReport rep;
    const double scale_a = std::max(n1, n2);
    rep.tol_order = tol_scale * scale_a;
    rep.tol_shift = tol_scale * (scale_a + spectral_norm(C));

    const Eigen::VectorXd d = sym_eigenvalues(A2 - A1);
    rep.margin_order = d.minCoeff();
    const bool leq = rep.margin_order >= -rep.tol_order;
    const bool geq = -d.maxCoeff() >= -rep.tol_order;
    rep.input_relation = leq && geq ? LoewnerRelation::equal
                         : leq      ? LoewnerRelation::leq
                         : geq      ? LoewnerRelation::geq
                                    : LoewnerRelation::incomparable;

    const Eigen::MatrixXd inv1 =
        e1.eigenvectors() * e1.eigenvalues().cwiseInverse().asDiagonal() *
        e1.eigenvectors().transpose();
    const Eigen::MatrixXd inv2 =
        e2.eigenvectors() * e2.eigenvalues().cwiseInverse().asDiagonal() *
        e2.eigenvectors().transpose();
    const double scale_inv = std::max(1.0 / e1.eigenvalues().minCoeff(),
                                      1.0 / e2.eigenvalues().minCoeff());
    rep.tol_inverse = tol_scale * scale_inv;
    // (a) order of the inverses is the reverse of the input order.
    rep.margin_inverse = sym_eigenvalues(inv1 - inv2).minCoeff();

    rep.margin_shift = sym_eigenvalues((A2 + C) - (A1 + C)).minCoeff();

    const double scale_b = (B.transpose() * B).cwiseAbs().maxCoeff();
    rep.tol_congruence = tol_scale * scale_a * std::max(scale_b, 1e-300);
    rep.margin_congruence =
        sym_eigenvalues(B.transpose() * (A2 - A1) * B).minCoeff();

    if (rep.input_relation == LoewnerRelation::leq ||
        rep.input_relation == LoewnerRelation::equal) {
        if (rep.margin_inverse < -rep.tol_inverse)
            rep.violations.push_back("(a) inverse order not reversed: margin " +
                                     std::to_string(rep.margin_inverse));
        if (rep.margin_shift < -rep.tol_shift)
            rep.violations.push_back("(b) shift failed to preserve order: margin " +
                                     std::to_string(rep.margin_shift));
        if (rep.margin_congruence < -rep.tol_congruence)
            rep.violations.push_back("(c) congruence failed to preserve order: margin " +
                                     std::to_string(rep.margin_congruence));
    } else if (rep.input_relation == LoewnerRelation::geq) {
        if (sym_eigenvalues(inv2 - inv1).minCoeff() < -rep.tol_inverse)
            rep.violations.push_back("(a) inverse order not reversed (geq case)");
        if (sym_eigenvalues((A1 + C) - (A2 + C)).minCoeff() < -rep.tol_shift)
            rep.violations.push_back("(b) shift failed to preserve order (geq case)");
        if (sym_eigenvalues(B.transpose() * (A1 - A2) * B).minCoeff() < -rep.tol_congruence)
            rep.violations.push_back("(c) congruence failed to preserve order (geq case)");
    } else if (rep.input_relation == LoewnerRelation::incomparable) {
        // Contrapositive of (a): incomparable inputs must give incomparable inverses.
        const Eigen::VectorXd di = sym_eigenvalues(inv1 - inv2);
        const bool inv_leq = -di.maxCoeff() >= -rep.tol_inverse;  // A2^-1 <= A1^-1... reversed
        const bool inv_geq = di.minCoeff() >= -rep.tol_inverse;
        if (inv_leq || inv_geq)
            rep.violations.push_back("(a) incomparable inputs produced ordered inverses");
    }
    return rep;
}

MonotonicityReport verify_main_theorem(const Scenario& alpha, const Scenario& beta,
                                       const std::vector<double>& lambdas,
                                       double tol_rel, const AssemblyOptions& opts,
                                       int sign_convention) {
    if (!(alpha.grid == beta.grid))
        throw ArgumentError("verify_main_theorem: scenarios must share the grid");
    if (alpha.coils.count() != beta.coils.count())
        throw ArgumentError("verify_main_theorem: scenarios must share the coil set");
    validate_scenario(alpha);
    validate_scenario(beta);
    for (std::size_t i = 0; i < alpha.eta.values.size(); ++i)
        if (alpha.eta.values[i] > beta.eta.values[i])
            throw ArgumentError("verify_main_theorem: alpha must be <= beta entrywise");

    // Shared geometry: only the resistance depends on the map.
    AssembledSystem sys = assemble_system(alpha, opts);
    const Eigen::MatrixXd R_beta = assemble_resistance(sys.network, sys.basis, beta.eta);
    const OperatorMatrices mats_beta{sys.matrices.L, R_beta, sys.matrices.M};

    const ModalBasis modal_a = solve_modes(sys.matrices.L, sys.matrices.R);
    const ModalBasis modal_b = solve_modes(sys.matrices.L, R_beta);
    MonotonicityReport report;
    report.lambda1_alpha = validity_domain(modal_a).lambda1;
    report.lambda1_beta = validity_domain(modal_b).lambda1;
    const double joint_pole = std::max(report.lambda1_alpha, report.lambda1_beta);

    report.consistent = true;
    for (double lambda : lambdas) {
        if (!(lambda > joint_pole))
            throw DomainError("verify_main_theorem: lambda = " + std::to_string(lambda) +
                              " at or below the joint pole " + std::to_string(joint_pole));
        const TransferMatrix Ha =
            transfer_direct(sys.matrices, ValidityDomain{report.lambda1_alpha}, lambda,
                            sign_convention);
        const TransferMatrix Hb =
            transfer_direct(mats_beta, ValidityDomain{report.lambda1_beta}, lambda,
                            sign_convention);
        MonotonicityEntry entry;
        entry.lambda = lambda;
        entry.h_norm = std::max(spectral_norm(Ha.H), spectral_norm(Hb.H));
        entry.verdict = loewner_compare(Ha.H, Hb.H, tol_rel * entry.h_norm);
        if (entry.verdict.relation != LoewnerRelation::leq &&
            entry.verdict.relation != LoewnerRelation::equal)
            report.consistent = false;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace mit
