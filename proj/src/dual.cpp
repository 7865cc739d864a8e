#include "relkrr/dual.hpp"

namespace relkrr {

namespace {
Eigen::VectorXd labels(const Dataset& data) {
    Eigen::VectorXd y(data.size());
    for (int i = 0; i < data.size(); ++i)
        y(i) = static_cast<double>(data.examples[i].label);
    return y;
}
}  // namespace

DualSolution dual_solve(const KernelParams& params, const Dataset& data) {
    params.validate();
    Eigen::MatrixXd K = gram_matrix(params, data);
    Eigen::VectorXd y = labels(data);

    if (!params.min_norm()) {
        K.diagonal().array() += 1.0 / params.c;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
        return {params, data, ldlt.solve(y)};
    }

    // Min-norm limit: the Gram matrix may be exactly singular (alpha = 1 with
    // a rank-deficient training layout, or degenerate parameter corners).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
    const auto& ev = eig.eigenvalues();
    double emax = ev.cwiseAbs().maxCoeff();
    double emin = ev.cwiseAbs().minCoeff();
    double cond = emin > 0.0 ? emax / emin : std::numeric_limits<double>::infinity();

    if (cond <= 1e12) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
        return {params, data, ldlt.solve(y)};
    }

    // Minimum-norm least squares through the eigenbasis, dropping the
    // numerically null directions.
    double cutoff = emax * 1e-12;
    Eigen::VectorXd proj = eig.eigenvectors().transpose() * y;
    double residual = 0.0;
    for (int i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) > cutoff)
            proj(i) /= ev(i);
        else {
            residual = std::max(residual, std::abs(proj(i)));
            proj(i) = 0.0;
        }
    }
    // The label vector always has a consistent least-squares solution here;
    // a residual on the null space is legitimate (unattainable labels), so
    // only a fully null system is treated as failure.
    if (emax <= 0.0)
        throw NumericalFailure("dual_solve: Gram matrix is numerically zero", cond);
    return {params, data, eig.eigenvectors() * proj};
}

double DualSolution::predict(ItemPair pair) const {
    return test_kernel_vector(params, data, pair).dot(coefficients);
}

double DualSolution::exception_coeff() const {
    if (data.spec.kind != TaskKind::TIExc)
        throw std::logic_error("exception_coeff: dataset has no exception pair");
    int idx = data.find({data.spec.p, data.spec.q});
    return coefficients(idx);
}

}  // namespace relkrr
