#include "gmm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace stylesearch {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
constexpr double kEmptyComponentMass = 1e-10;

void validate_config(const GmmConfig& cfg) {
    if (cfg.components < 1) {
        throw ValidationError("gmm_fit: components must be >= 1");
    }
    if (cfg.max_iters < 1) {
        throw ValidationError("gmm_fit: max_iters must be >= 1");
    }
    if (!(cfg.tol > 0.0)) {
        throw ValidationError("gmm_fit: tol must be > 0");
    }
    if (cfg.reg_covar < 0.0) {
        throw ValidationError("gmm_fit: reg_covar must be >= 0");
    }
    if (cfg.n_init < 1) {
        throw ValidationError("gmm_fit: n_init must be >= 1");
    }
}

double log_sum_exp(const Eigen::VectorXd& v) {
    const double m = v.maxCoeff();
    if (!std::isfinite(m)) {
        return m;
    }
    return m + std::log((v.array() - m).exp().sum());
}

// Cholesky factors of every component, shared by density queries and the
// E-step. Holds copies, so it stays valid independently of the source model.
struct ComponentFactors {
    Eigen::VectorXd log_weights;
    Eigen::MatrixXd means;                              // K x q
    std::vector<Eigen::LLT<Eigen::MatrixXd>> cholesky;  // of each covariance
    std::vector<double> log_det;                        // log|cov_k|

    ComponentFactors(const Eigen::VectorXd& weights, const Eigen::MatrixXd& mu,
                     const std::vector<Eigen::MatrixXd>& covariances)
        : log_weights(weights.array().log()), means(mu) {
        const int k_count = static_cast<int>(weights.size());
        cholesky.reserve(k_count);
        log_det.reserve(k_count);
        for (int k = 0; k < k_count; ++k) {
            Eigen::LLT<Eigen::MatrixXd> llt(covariances[k]);
            if (llt.info() != Eigen::Success) {
                throw std::runtime_error(
                    "gmm: covariance of component " + std::to_string(k) +
                    " is not positive definite; increase reg_covar");
            }
            log_det.push_back(
                2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum());
            cholesky.push_back(std::move(llt));
        }
    }

    // log w_k + log N(x; mu_k, cov_k) for every k.
    Eigen::VectorXd weighted_log_densities(const Eigen::VectorXd& x) const {
        const int k_count = static_cast<int>(log_weights.size());
        const int q = static_cast<int>(means.cols());
        Eigen::VectorXd out(k_count);
        for (int k = 0; k < k_count; ++k) {
            const Eigen::VectorXd centered = x - means.row(k).transpose();
            const double quad =
                cholesky[k].matrixL().solve(centered).squaredNorm();
            out(k) = log_weights(k) -
                     0.5 * (q * kLog2Pi + log_det[k] + quad);
        }
        return out;
    }
};

void require_query(const GmmModel& model, const Eigen::VectorXd& x, const char* op) {
    if (x.size() != model.dim()) {
        throw DimensionError(std::string(op) + ": vector length " + std::to_string(x.size()) +
                             " does not match model dimension " + std::to_string(model.dim()));
    }
    if (!x.allFinite()) {
        throw ValidationError(std::string(op) + ": query contains non-finite entries");
    }
}

Eigen::VectorXd posterior_from_log(const Eigen::VectorXd& weighted_log) {
    const double lse = log_sum_exp(weighted_log);
    if (!std::isfinite(lse)) {
        // Every density overflowed/underflowed past log-space range; fall back
        // to the uninformative answer rather than NaN.
        return Eigen::VectorXd::Constant(weighted_log.size(),
                                         1.0 / static_cast<double>(weighted_log.size()));
    }
    return (weighted_log.array() - lse).exp();
}

// Biased (1/n) covariance, matching the EM M-step normalization.
Eigen::MatrixXd mle_covariance(const Eigen::MatrixXd& data, double reg_covar) {
    const Eigen::RowVectorXd mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - mean;
    Eigen::MatrixXd cov =
        (centered.transpose() * centered) / static_cast<double>(data.rows());
    cov.diagonal().array() += reg_covar;
    return cov;
}

GmmModel run_em(const Eigen::MatrixXd& data, const GmmConfig& cfg, RandomStream& init_stream) {
    const int n = static_cast<int>(data.rows());
    const int q = static_cast<int>(data.cols());
    const int k_count = cfg.components;

    // Means start at K distinct data points.
    std::vector<int> chosen;
    std::vector<bool> used(n, false);
    while (static_cast<int>(chosen.size()) < k_count) {
        const int idx = static_cast<int>(init_stream.next_index(n));
        if (!used[idx]) {
            used[idx] = true;
            chosen.push_back(idx);
        }
    }

    GmmModel model;
    model.weights = Eigen::VectorXd::Constant(k_count, 1.0 / k_count);
    model.means.resize(k_count, q);
    for (int k = 0; k < k_count; ++k) {
        model.means.row(k) = data.row(chosen[k]);
    }
    const Eigen::MatrixXd global_cov = mle_covariance(data, cfg.reg_covar);
    model.covariances.assign(k_count, global_cov);

    Eigen::MatrixXd resp(n, k_count);
    double prev_ll = -std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        // E-step.
        ComponentFactors factors(model.weights, model.means, model.covariances);
        double ll = 0.0;
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd weighted_log =
                factors.weighted_log_densities(data.row(i).transpose());
            const double lse = log_sum_exp(weighted_log);
            ll += lse;
            resp.row(i) = (weighted_log.array() - lse).exp();
        }
        model.log_likelihood_path.push_back(ll);
        model.final_log_likelihood = ll;

        if (iter > 0) {
            const double improvement = ll - prev_ll;
            const double scale = std::abs(prev_ll);
            const double relative = scale > 0.0 ? improvement / scale : improvement;
            if (relative < cfg.tol) {
                break;
            }
        }
        prev_ll = ll;

        // M-step.
        Eigen::VectorXd mass = resp.colwise().sum().transpose();
        std::vector<bool> collapsed(k_count, false);
        for (int k = 0; k < k_count; ++k) {
            collapsed[k] = mass(k) < kEmptyComponentMass;
        }

        for (int k = 0; k < k_count; ++k) {
            if (collapsed[k]) {
                continue;
            }
            model.means.row(k) = (resp.col(k).transpose() * data) / mass(k);
            const Eigen::MatrixXd centered = data.rowwise() - model.means.row(k);
            Eigen::MatrixXd cov =
                (centered.transpose() * (resp.col(k).asDiagonal() * centered)) / mass(k);
            cov = 0.5 * (cov + cov.transpose());
            cov.diagonal().array() += cfg.reg_covar;
            model.covariances[k] = cov;
            model.weights(k) = mass(k) / n;
        }

        // Collapsed components restart from the worst-explained points.
        std::vector<bool> point_taken(n, false);
        for (int k = 0; k < k_count; ++k) {
            if (!collapsed[k]) {
                continue;
            }
            int worst = -1;
            double worst_max = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                if (point_taken[i]) {
                    continue;
                }
                const double max_resp = resp.row(i).maxCoeff();
                if (max_resp < worst_max) {
                    worst_max = max_resp;
                    worst = i;
                }
            }
            point_taken[worst] = true;
            model.means.row(k) = data.row(worst);
            model.covariances[k] = global_cov;
            model.weights(k) = 1.0 / n;
        }
        model.weights /= model.weights.sum();
    }

    return model;
}

} // namespace

GmmModel gmm_fit(const Eigen::MatrixXd& data, const GmmConfig& cfg) {
    validate_config(cfg);
    if (!data.allFinite()) {
        throw ValidationError("gmm_fit: data contains non-finite entries");
    }
    if (data.rows() < cfg.components) {
        throw ValidationError("gmm_fit: need at least K=" + std::to_string(cfg.components) +
                              " samples, got " + std::to_string(data.rows()));
    }

    RandomStream init_stream(derive_stream_seed(cfg.seed, "gmm-init"));
    GmmModel best;
    bool have_best = false;
    for (int restart = 0; restart < cfg.n_init; ++restart) {
        GmmModel candidate = run_em(data, cfg, init_stream);
        if (!have_best || candidate.final_log_likelihood > best.final_log_likelihood) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    return best;
}

double gmm_log_density(const GmmModel& model, const Eigen::VectorXd& x) {
    require_query(model, x, "gmm_log_density");
    ComponentFactors factors(model.weights, model.means, model.covariances);
    return log_sum_exp(factors.weighted_log_densities(x));
}

Eigen::VectorXd gmm_posterior(const GmmModel& model, const Eigen::VectorXd& x) {
    require_query(model, x, "gmm_posterior");
    ComponentFactors factors(model.weights, model.means, model.covariances);
    return posterior_from_log(factors.weighted_log_densities(x));
}

double gmm_posterior_t(const GmmModel& model, const Eigen::VectorXd& x, int t) {
    if (t < 0 || t >= model.component_count()) {
        throw ValidationError("gmm_posterior_t: component index " + std::to_string(t) +
                              " out of range [0, " + std::to_string(model.component_count()) +
                              ")");
    }
    return gmm_posterior(model, x)(t);
}

} // namespace stylesearch
