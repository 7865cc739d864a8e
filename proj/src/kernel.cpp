#include "relkrr/kernel.hpp"

#include <cmath>

namespace relkrr {

void KernelParams::validate() const {
    if (!(delta_s() > 0.0))
        throw std::invalid_argument("KernelParams: kappa_s - kappa_d must be > 0");
    double d = 2.0 * delta_o();
    if (d < -1e-15 || d > delta_s() * (1.0 + 1e-15))
        throw std::invalid_argument(
            "KernelParams: need 0 <= 2(kappa_o - kappa_d) <= kappa_s - kappa_d");
    if (kappa_d < 0.0)
        throw std::invalid_argument("KernelParams: kappa_d must be >= 0");
    if (!(c > 0.0))
        throw std::invalid_argument("KernelParams: c must be positive or inf");
}

double KernelParams::conjunctivity() const {
    return 1.0 - 2.0 * delta_o() / delta_s();
}

double KernelParams::effective_reg_inv() const {
    if (min_norm()) return 0.0;
    return 1.0 / (c * delta_s());
}

KernelParams KernelParams::from_alpha(double alpha, double creg_inv) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("from_alpha: alpha must be in [0,1]");
    if (creg_inv < 0.0)
        throw std::invalid_argument("from_alpha: creg_inv must be >= 0");
    KernelParams p;
    p.kappa_s = 1.0;
    p.kappa_d = 0.0;
    p.kappa_o = (1.0 - alpha) / 2.0;
    p.c = creg_inv == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / creg_inv;
    return p;
}

nlohmann::json KernelParams::to_json() const {
    nlohmann::json j{{"kappa_s", kappa_s}, {"kappa_o", kappa_o}, {"kappa_d", kappa_d}};
    if (min_norm())
        j["c"] = "inf";
    else
        j["c"] = c;
    return j;
}

KernelParams KernelParams::from_json(const nlohmann::json& j) {
    KernelParams p;
    p.kappa_s = j.at("kappa_s").get<double>();
    p.kappa_o = j.at("kappa_o").get<double>();
    p.kappa_d = j.at("kappa_d").get<double>();
    const auto& c = j.at("c");
    if (c.is_string() && c.get<std::string>() == "inf")
        p.c = std::numeric_limits<double>::infinity();
    else
        p.c = c.get<double>();
    p.validate();
    return p;
}

double pair_kernel(const KernelParams& params, ItemPair a, ItemPair b) {
    // Slot-wise comparison: (1,2) vs (2,1) is distinct, not overlapping.
    if (a.j == b.j && a.k == b.k) return params.kappa_s;
    if (a.j == b.j || a.k == b.k) return params.kappa_o;
    return params.kappa_d;
}

Eigen::MatrixXd gram_matrix(const KernelParams& params, const Dataset& data) {
    if (data.examples.empty())
        throw std::invalid_argument("gram_matrix: empty dataset");
    const int m = data.size();
    Eigen::MatrixXd K(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            double v = pair_kernel(params, data.examples[a].pair, data.examples[b].pair);
            K(a, b) = v;
            K(b, a) = v;
        }
    return K;
}

Eigen::VectorXd test_kernel_vector(const KernelParams& params, const Dataset& data,
                                   ItemPair pair) {
    validate_pair(data.spec, pair);
    Eigen::VectorXd v(data.size());
    for (int a = 0; a < data.size(); ++a)
        v(a) = pair_kernel(params, data.examples[a].pair, pair);
    return v;
}

}  // namespace relkrr
