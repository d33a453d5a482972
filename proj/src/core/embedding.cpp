#include "embedding.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace stylesearch {

namespace {

void require_fit_data(const Eigen::MatrixXd& data, const char* op) {
    if (data.rows() < 2) {
        throw ValidationError(std::string(op) + ": need at least 2 samples, got " +
                              std::to_string(data.rows()));
    }
    if (!data.allFinite()) {
        throw ValidationError(std::string(op) + ": data contains non-finite entries");
    }
}

} // namespace

Scaler scaler_fit(const Eigen::MatrixXd& data) {
    require_fit_data(data, "scaler_fit");
    return Scaler{data.colwise().mean().transpose()};
}

Eigen::VectorXd scaler_apply(const Scaler& scaler, const Eigen::VectorXd& x) {
    if (x.size() != scaler.means.size()) {
        throw DimensionError("scaler_apply: vector length " + std::to_string(x.size()) +
                             " does not match scaler dimension " +
                             std::to_string(scaler.means.size()));
    }
    return x - scaler.means;
}

Eigen::MatrixXd scaler_apply_rows(const Scaler& scaler, const Eigen::MatrixXd& data) {
    if (data.cols() != scaler.means.size()) {
        throw DimensionError("scaler_apply_rows: matrix has " + std::to_string(data.cols()) +
                             " columns, scaler expects " + std::to_string(scaler.means.size()));
    }
    return data.rowwise() - scaler.means.transpose();
}

PcaModel pca_fit(const Eigen::MatrixXd& centered, double target_ratio) {
    require_fit_data(centered, "pca_fit");
    if (!(target_ratio > 0.0 && target_ratio <= 1.0)) {
        throw ValidationError("pca_fit: target_ratio must lie in (0, 1], got " +
                              std::to_string(target_ratio));
    }
    const double mean_bound = centered.colwise().mean().cwiseAbs().maxCoeff();
    if (mean_bound > 1e-6) {
        throw ValidationError("pca_fit: input is not centered (max |column mean| = " +
                              std::to_string(mean_bound) + ")");
    }

    const auto n = centered.rows();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    Eigen::VectorXd variances = sigma.array().square() / static_cast<double>(n - 1);
    const double total_variance = variances.sum();
    if (!(total_variance > 0.0)) {
        throw ValidationError("pca_fit: data has zero total variance");
    }

    // Directions with numerically zero singular values are dropped even when
    // target_ratio is 1; they would make downstream covariances singular.
    const double sigma_floor = sigma(0) * 1e-12;
    int rank = 0;
    while (rank < sigma.size() && sigma(rank) > sigma_floor) {
        ++rank;
    }

    const double needed = target_ratio * total_variance;
    int q = 0;
    double cumulative = 0.0;
    while (q < rank) {
        cumulative += variances(q);
        ++q;
        if (cumulative >= needed) {
            break;
        }
    }

    PcaModel model;
    model.components = svd.matrixV().leftCols(q).transpose();
    model.explained_variance = variances.head(q);
    model.total_variance = total_variance;
    model.target_ratio = target_ratio;

    // Sign convention: largest-magnitude entry of each component positive.
    for (int i = 0; i < q; ++i) {
        Eigen::Index peak = 0;
        model.components.row(i).cwiseAbs().maxCoeff(&peak);
        if (model.components(i, peak) < 0.0) {
            model.components.row(i) *= -1.0;
        }
    }
    return model;
}

Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.components.cols()) {
        throw DimensionError("pca_transform: vector length " + std::to_string(x.size()) +
                             " does not match model input dimension " +
                             std::to_string(model.components.cols()));
    }
    return model.components * x;
}

} // namespace stylesearch
