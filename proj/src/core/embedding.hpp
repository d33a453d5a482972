#pragma once

#include <Eigen/Dense>

namespace stylesearch {

// Zero-mean standardization fitted on a data matrix (rows are samples).
struct Scaler {
    Eigen::VectorXd means;

    int dim() const { return static_cast<int>(means.size()); }
};

// Principal component basis retaining at least target_ratio of the total
// variance. Rows of `components` are orthonormal principal directions sorted
// by decreasing explained variance; each row's largest-magnitude entry is
// positive so fits are reproducible.
struct PcaModel {
    Eigen::MatrixXd components;          // q x d
    Eigen::VectorXd explained_variance;  // length q, nonincreasing, > 0
    double total_variance = 0.0;
    double target_ratio = 1.0;

    int dim_in() const { return static_cast<int>(components.cols()); }
    int dim_out() const { return static_cast<int>(components.rows()); }
    double retained_ratio() const {
        return explained_variance.sum() / total_variance;
    }
};

Scaler scaler_fit(const Eigen::MatrixXd& data);

Eigen::VectorXd scaler_apply(const Scaler& scaler, const Eigen::VectorXd& x);

// Centers every row of `data` with the scaler.
Eigen::MatrixXd scaler_apply_rows(const Scaler& scaler, const Eigen::MatrixXd& data);

// Fits on an already centered matrix (column means checked against 1e-6).
// q is the smallest count of leading directions whose variance share reaches
// target_ratio; zero-variance directions are never retained.
PcaModel pca_fit(const Eigen::MatrixXd& centered, double target_ratio);

Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& x);

} // namespace stylesearch
