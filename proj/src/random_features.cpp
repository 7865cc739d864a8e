#include "relkrr/random_features.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "relkrr/dual.hpp"

namespace relkrr {

std::string to_string(Nonlinearity s) {
    switch (s) {
        case Nonlinearity::Relu: return "relu";
        case Nonlinearity::Tanh: return "tanh";
        case Nonlinearity::Identity: return "identity";
    }
    return "?";
}

Nonlinearity nonlinearity_from_string(const std::string& s) {
    if (s == "relu") return Nonlinearity::Relu;
    if (s == "tanh") return Nonlinearity::Tanh;
    if (s == "identity") return Nonlinearity::Identity;
    throw std::invalid_argument("unknown nonlinearity: " + s);
}

void FeatureConfig::validate() const {
    if (n < 3) throw std::invalid_argument("FeatureConfig: n must be >= 3");
    if (d < n) throw std::invalid_argument("FeatureConfig: d must be >= n");
    if (h < 1) throw std::invalid_argument("FeatureConfig: h must be >= 1");
    if (weight_var < 0.0)
        throw std::invalid_argument("FeatureConfig: weight_var must be >= 0");
}

namespace {

// Box-Muller over mt19937_64; std::normal_distribution is
// implementation-defined, which would break the determinism contract.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

double apply_sigma(Nonlinearity sigma, double v) {
    switch (sigma) {
        case Nonlinearity::Relu: return v > 0.0 ? v : 0.0;
        case Nonlinearity::Tanh: return std::tanh(v);
        case Nonlinearity::Identity: return v;
    }
    return v;
}

}  // namespace

Eigen::MatrixXd sample_feature_map(const FeatureConfig& cfg) {
    cfg.validate();
    const int n = cfg.n, d = cfg.d, h = cfg.h;
    double sd = std::sqrt(cfg.resolved_weight_var());

    GaussianSource gauss(cfg.seed);
    Eigen::MatrixXd W(h, 2 * d);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < 2 * d; ++j) W(i, j) = sd * gauss.next();

    // One-hot items in the leading n coordinates of each slot, so
    // W * concat(x_j, x_k) = W.col(j-1) + W.col(d + k - 1).
    Eigen::MatrixXd features(n * n, h);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            Eigen::VectorXd pre = W.col(j - 1) + W.col(d + k - 1);
            for (int i = 0; i < h; ++i) pre(i) = apply_sigma(cfg.sigma, pre(i));
            features.row((j - 1) * n + (k - 1)) = pre;
        }
    return features;
}

EmpiricalKernel empirical_kernel_params(const Eigen::MatrixXd& features, int n) {
    if (n < 3)
        throw std::invalid_argument("empirical_kernel_params: need n >= 3");
    if (features.rows() != n * n)
        throw std::invalid_argument("empirical_kernel_params: feature row count != n^2");

    double sum_s = 0.0, sum_o = 0.0, sum_d = 0.0;
    long cnt_s = 0, cnt_o = 0, cnt_d = 0;
    auto row_of = [n](int j, int k) { return (j - 1) * n + (k - 1); };

    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            if (j == k) continue;
            for (int j2 = 1; j2 <= n; ++j2)
                for (int k2 = 1; k2 <= n; ++k2) {
                    if (j2 == k2) continue;
                    double ip =
                        features.row(row_of(j, k)).dot(features.row(row_of(j2, k2)));
                    if (j == j2 && k == k2) {
                        sum_s += ip;
                        ++cnt_s;
                    } else if (j == j2 || k == k2) {
                        sum_o += ip;
                        ++cnt_o;
                    } else {
                        sum_d += ip;
                        ++cnt_d;
                    }
                }
        }
    EmpiricalKernel est;
    est.kappa_s = sum_s / cnt_s;
    est.kappa_o = sum_o / cnt_o;
    est.kappa_d = sum_d / cnt_d;
    est.alpha_hat = 1.0 - 2.0 * (est.kappa_o - est.kappa_d) / (est.kappa_s - est.kappa_d);
    return est;
}

double rf_ridge_predict(const Eigen::MatrixXd& features, const Dataset& data, double c,
                        ItemPair pair) {
    validate_pair(data.spec, pair);
    const int n = data.spec.n;
    const int m = data.size();
    auto row_of = [n](ItemPair p) { return (p.j - 1) * n + (p.k - 1); };

    // Kernel trick on the finite feature map: identical to the primal ridge
    // solution but sized by the training set, not the width.
    Eigen::MatrixXd Phi(m, features.cols());
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        Phi.row(i) = features.row(row_of(data.examples[i].pair));
        y(i) = static_cast<double>(data.examples[i].label);
    }
    Eigen::MatrixXd K = Phi * Phi.transpose();
    Eigen::VectorXd a;
    if (std::isinf(c)) {
        a = K.completeOrthogonalDecomposition().solve(y);
    } else {
        K.diagonal().array() += 1.0 / c;
        a = Eigen::LDLT<Eigen::MatrixXd>(K).solve(y);
    }
    return (Phi * features.row(row_of(pair)).transpose()).dot(a);
}

double rf_ridge_predict(const FeatureConfig& cfg, const Dataset& data, double c,
                        ItemPair pair) {
    return rf_ridge_predict(sample_feature_map(cfg), data, c, pair);
}

WidthSweepRow rf_width_cell(const FeatureConfig& cfg, const TaskSpec& spec, double c) {
    Eigen::MatrixXd features = sample_feature_map(cfg);
    EmpiricalKernel est = empirical_kernel_params(features, cfg.n);
    Dataset data = build_training_set(spec);
    // Sampling noise can push the raw estimate just outside the exchangeable
    // family (kappa_d slightly negative, or alpha_hat slightly outside
    // [0,1], e.g. identity features). Shifting kappa_d to zero leaves dual
    // predictions unchanged (the dual coefficients sum to zero), and the
    // overlap value is clamped into the valid range.
    double delta_s = est.kappa_s - est.kappa_d;
    double delta_o = std::clamp(est.kappa_o - est.kappa_d, 0.0, delta_s / 2.0);
    DualSolution kernel_model = dual_solve({delta_s, delta_o, 0.0, c}, data);

    const int n = cfg.n;
    const int m = data.size();
    Eigen::MatrixXd Phi(m, features.cols());
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        const ItemPair p = data.examples[i].pair;
        Phi.row(i) = features.row((p.j - 1) * n + (p.k - 1));
        y(i) = static_cast<double>(data.examples[i].label);
    }
    Eigen::MatrixXd K = Phi * Phi.transpose();
    Eigen::VectorXd a;
    if (std::isinf(c)) {
        a = K.completeOrthogonalDecomposition().solve(y);
    } else {
        K.diagonal().array() += 1.0 / c;
        a = Eigen::LDLT<Eigen::MatrixXd>(K).solve(y);
    }
    // One matvec yields the finite-width prediction for every ordered pair.
    Eigen::VectorXd rf_pred = features * (Phi.transpose() * a);

    WidthSweepRow row{cfg.h, cfg.seed, est.alpha_hat, 0.0};
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            if (j == k) continue;
            double gap = std::abs(rf_pred((j - 1) * n + (k - 1)) -
                                  kernel_model.predict({j, k}));
            row.max_gap = std::max(row.max_gap, gap);
        }
    return row;
}

}  // namespace relkrr
