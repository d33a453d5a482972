#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace stylesearch {

struct GmmConfig {
    int components = 8;       // K
    int max_iters = 200;
    double tol = 1e-6;        // relative log-likelihood improvement threshold
    double reg_covar = 1e-6;  // added to covariance diagonals
    std::uint64_t seed = 0;
    int n_init = 3;           // EM restarts; best final log-likelihood wins
};

// Full-covariance Gaussian mixture. `covariances[k]` already includes the
// reg_covar ridge applied during fitting.
struct GmmModel {
    Eigen::VectorXd weights;                   // K, on the simplex
    Eigen::MatrixXd means;                     // K x q
    std::vector<Eigen::MatrixXd> covariances;  // K matrices, q x q, SPD
    double final_log_likelihood = 0.0;

    // Total log-likelihood after every EM iteration of the winning restart.
    std::vector<double> log_likelihood_path;

    int component_count() const { return static_cast<int>(weights.size()); }
    int dim() const { return static_cast<int>(means.cols()); }
};

/// Fits a mixture by expectation-maximization.
///
/// Initialization draws K distinct data points as means (seeded), starts all
/// covariances at the global sample covariance plus the ridge and weights
/// uniform. A component whose responsibility mass collapses is re-seeded from
/// the point with the lowest maximum responsibility. Requires n >= K.
GmmModel gmm_fit(const Eigen::MatrixXd& data, const GmmConfig& cfg);

// log sum_k w_k N(x; mu_k, cov_k), evaluated with log-sum-exp.
double gmm_log_density(const GmmModel& model, const Eigen::VectorXd& x);

// Posterior membership probabilities; entries in [0,1] summing to 1.
Eigen::VectorXd gmm_posterior(const GmmModel& model, const Eigen::VectorXd& x);

double gmm_posterior_t(const GmmModel& model, const Eigen::VectorXd& x, int t);

} // namespace stylesearch
