#include "relkrr/encoding.hpp"

#include <cmath>

namespace relkrr {

FourHotMap FourHotMap::from_params(int n, const KernelParams& params) {
    params.validate();
    double r0 = params.kappa_d;
    double r1 = params.kappa_o - params.kappa_d;
    double r2 = params.delta_s() - 2.0 * params.delta_o();
    if (r1 < 0.0 || r2 < -1e-15)
        throw std::invalid_argument("FourHotMap: negative radicand");
    return {n, std::sqrt(r0), std::sqrt(r1), std::sqrt(std::max(0.0, r2))};
}

Eigen::VectorXd four_hot_features(const FourHotMap& map, ItemPair pair) {
    const int n = map.n;
    if (pair.j < 1 || pair.j > n || pair.k < 1 || pair.k > n || pair.j == pair.k)
        throw std::invalid_argument("four_hot_features: invalid pair");
    Eigen::VectorXd z = Eigen::VectorXd::Zero(map.dimension());
    z(pair.j - 1) = map.s1;
    z(n + pair.k - 1) = map.s1;
    z(2 * n + (pair.j - 1) * n + (pair.k - 1)) = map.s2;
    z(2 * n + n * n) = map.s0;
    return z;
}

namespace {
Eigen::MatrixXd design_matrix(const FourHotMap& map, const Dataset& data) {
    Eigen::MatrixXd Z(data.size(), map.dimension());
    for (int i = 0; i < data.size(); ++i)
        Z.row(i) = four_hot_features(map, data.examples[i].pair);
    return Z;
}
}  // namespace

double verify_kernel_equivalence(const FourHotMap& map, const KernelParams& params,
                                 const Dataset& data) {
    Eigen::MatrixXd Z = design_matrix(map, data);
    Eigen::MatrixXd K = gram_matrix(params, data);
    return (Z * Z.transpose() - K).cwiseAbs().maxCoeff();
}

Decomposition ridge_primal(const FourHotMap& map, const Dataset& data, double c) {
    if (!(c > 0.0))
        throw std::invalid_argument("ridge_primal: c must be positive or inf");
    const int n = map.n;
    Eigen::MatrixXd Z = design_matrix(map, data);
    Eigen::VectorXd y(data.size());
    for (int i = 0; i < data.size(); ++i)
        y(i) = static_cast<double>(data.examples[i].label);

    Eigen::VectorXd w;
    if (std::isinf(c)) {
        // Min-norm interpolant of the underdetermined system Z w = y.
        w = Z.completeOrthogonalDecomposition().solve(y);
    } else {
        Eigen::MatrixXd A = Z.transpose() * Z;
        A.diagonal().array() += 1.0 / c;
        w = Eigen::LDLT<Eigen::MatrixXd>(A).solve(Z.transpose() * y);
    }

    Decomposition dec;
    dec.ranks = map.s1 * w.head(n);
    dec.conjunctive.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            dec.conjunctive(j, k) = map.s2 * w(2 * n + j * n + k);
    dec.bias = map.s0 * w(2 * n + n * n);
    return dec;
}

double cost(const Eigen::VectorXd& r, const Eigen::MatrixXd& t, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("cost: alpha must be in (0,1)");
    return 2.0 / (1.0 - alpha) * r.squaredNorm() + 1.0 / alpha * t.squaredNorm();
}

}  // namespace relkrr
