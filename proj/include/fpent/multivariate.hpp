#pragma once

#include <random>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "fpent/distributions.hpp"

namespace fpent {

/// Zero-mean multivariate Gaussian with a symmetric positive definite
/// covariance, quantized component-wise.
class MultivariateGaussian {
public:
    explicit MultivariateGaussian(Eigen::MatrixXd covariance);

    /// Row-major entries separated by commas, rows separated by ';', e.g.
    /// "1,0.5;0.5,1".
    static MultivariateGaussian parse(std::string_view text);

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(cov_.rows()); }
    const Eigen::MatrixXd& covariance() const noexcept { return cov_; }
    Distribution marginal(std::size_t i) const;
    bool is_diagonal() const;

    /// Differential entropy in bits.
    double differential_entropy() const;

    void sample(std::mt19937_64& rng, std::span<double> out) const;

    std::string to_string() const;

private:
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd chol_;
};

/// Smooth approximation of the entropy of the component-wise quantized
/// vector, from the covariance eigenvalues and diagonal.
double mvg_approx_entropy_eigen(const MultivariateGaussian& g, int precision);

/// Same quantity assembled from the joint differential entropy (Cholesky
/// determinant) minus the expected smooth log bin sizes of the marginals.
double mvg_approx_entropy_det(const MultivariateGaussian& g, int precision);

}  // namespace fpent
