#include "fpent/multivariate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fpent/numfmt.hpp"
#include "fpent/special.hpp"

namespace fpent {

using special::euler_gamma;
using special::ln2;
using special::pi;

MultivariateGaussian::MultivariateGaussian(Eigen::MatrixXd covariance) : cov_(std::move(covariance)) {
    if (cov_.rows() == 0 || cov_.rows() != cov_.cols())
        throw std::invalid_argument("covariance must be a non-empty square matrix");
    if (!cov_.allFinite()) throw std::invalid_argument("covariance entries must be finite");
    const double tol = 1e-12 * cov_.cwiseAbs().maxCoeff();
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("covariance must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(cov_);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("covariance must be positive definite");
    chol_ = llt.matrixL();
}

MultivariateGaussian MultivariateGaussian::parse(std::string_view text) {
    std::vector<std::vector<double>> rows(1);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',' || text[i] == ';') {
            rows.back().push_back(parse_double(text.substr(start, i - start)));
            if (i < text.size() && text[i] == ';') rows.emplace_back();
            start = i + 1;
        }
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (static_cast<Eigen::Index>(rows[r].size()) != n)
            throw std::invalid_argument("covariance row " + std::to_string(r) + " has " +
                                        std::to_string(rows[r].size()) + " entries, expected " +
                                        std::to_string(n));
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[r][c];
    }
    return MultivariateGaussian(std::move(m));
}

Distribution MultivariateGaussian::marginal(std::size_t i) const {
    const auto k = static_cast<Eigen::Index>(i);
    return Distribution::gaussian(std::sqrt(cov_(k, k)));
}

bool MultivariateGaussian::is_diagonal() const {
    for (Eigen::Index r = 0; r < cov_.rows(); ++r)
        for (Eigen::Index c = 0; c < cov_.cols(); ++c)
            if (r != c && cov_(r, c) != 0.0) return false;
    return true;
}

double MultivariateGaussian::differential_entropy() const {
    const double d = static_cast<double>(dimension());
    // log det from the Cholesky diagonal
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < chol_.rows(); ++i) logdet += 2.0 * std::log(chol_(i, i));
    return 0.5 * (d * std::log(2.0 * pi * std::exp(1.0)) + logdet) / ln2;
}

void MultivariateGaussian::sample(std::mt19937_64& rng, std::span<double> out) const {
    const auto n = cov_.rows();
    if (static_cast<Eigen::Index>(out.size()) != n) throw std::invalid_argument("sample: wrong output size");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
    const Eigen::VectorXd x = chol_ * z;
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = x(i);
}

std::string MultivariateGaussian::to_string() const {
    std::string s = "mvgaussian:cov=";
    for (Eigen::Index r = 0; r < cov_.rows(); ++r) {
        if (r) s += ';';
        for (Eigen::Index c = 0; c < cov_.cols(); ++c) {
            if (c) s += ',';
            s += format_double(cov_(r, c));
        }
    }
    return s;
}

double mvg_approx_entropy_eigen(const MultivariateGaussian& g, int precision) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.covariance(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::invalid_argument("eigendecomposition failed");
    const auto& lambda = solver.eigenvalues();
    const auto& cov = g.covariance();
    double log_ratio = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) log_ratio += std::log2(lambda(i)) - std::log2(cov(i, i));
    const double d = static_cast<double>(g.dimension());
    const double per_dim = precision + 0.5 * std::log2(2.0 * pi * std::exp(1.0)) + euler_gamma / (2.0 * ln2);
    return d * per_dim + 0.5 * log_ratio;
}

double mvg_approx_entropy_det(const MultivariateGaussian& g, int precision) {
    double expected_log_bins = 0.0;
    for (std::size_t i = 0; i < g.dimension(); ++i)
        expected_log_bins += g.marginal(i).expected_log2_abs() - 0.5 + (1.0 - precision);
    return g.differential_entropy() - expected_log_bins;
}

}  // namespace fpent
