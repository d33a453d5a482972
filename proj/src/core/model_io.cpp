#include "model_io.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "textio.hpp"

namespace stylesearch {

namespace {

constexpr int kFormatVersion = 1;

void append_row(std::string& out, const double* values, int count) {
    for (int i = 0; i < count; ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += format_double(values[i]);
    }
    out += '\n';
}

void append_matrix(std::string& out, const Eigen::MatrixXd& m) {
    std::vector<double> row(m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row[c] = m(r, c);
        }
        append_row(out, row.data(), static_cast<int>(m.cols()));
    }
}

// Whitespace-token reader with positional error reporting.
class TokenReader {
public:
    TokenReader(const std::string& text, std::string origin)
        : stream_(text), origin_(std::move(origin)) {}

    std::string next(const char* expected) {
        std::string token;
        if (!(stream_ >> token)) {
            throw ValidationError(origin_ + ": truncated model file, expected " +
                                  std::string(expected));
        }
        return token;
    }

    void expect_label(const char* label) {
        const std::string token = next(label);
        if (token != label) {
            throw ValidationError(origin_ + ": expected block '" + label + "', got '" +
                                  token + "'");
        }
    }

    double next_double(const char* what) { return parse_double(next(what), origin_); }

    long long next_int(const char* what) { return parse_int(next(what), origin_); }

    bool at_end() {
        std::string token;
        return !(stream_ >> token);
    }

private:
    std::istringstream stream_;
    std::string origin_;
};

Eigen::MatrixXd read_matrix(TokenReader& reader, Eigen::Index rows, Eigen::Index cols,
                            const char* what) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = reader.next_double(what);
        }
    }
    return m;
}

} // namespace

std::string serialize_style_model(const StyleModel& model) {
    const int d = model.embed_dim();
    const int q = model.reduced_dim();
    const int k_count = model.component_count();

    std::string out;
    out += "format_version " + std::to_string(kFormatVersion) + "\n";
    out += "d " + std::to_string(d) + "\n";
    out += "q " + std::to_string(q) + "\n";
    out += "K " + std::to_string(k_count) + "\n";
    out += "target_ratio " + format_double(model.pca.target_ratio) + "\n";
    out += "pca_total_variance " + format_double(model.pca.total_variance) + "\n";

    out += "scaler_means\n";
    append_row(out, model.scaler.means.data(), d);
    out += "pca_components\n";
    append_matrix(out, model.pca.components);
    out += "pca_explained_variance\n";
    append_row(out, model.pca.explained_variance.data(), q);
    out += "gmm_weights\n";
    append_row(out, model.gmm.weights.data(), k_count);
    out += "gmm_means\n";
    append_matrix(out, model.gmm.means);
    out += "gmm_covariances\n";
    for (int k = 0; k < k_count; ++k) {
        append_matrix(out, model.gmm.covariances[k]);
    }
    return out;
}

void save_style_model(const StyleModel& model, const std::filesystem::path& path) {
    write_text_file(path, serialize_style_model(model));
}

StyleModel parse_style_model(const std::string& text, const std::string& origin) {
    TokenReader reader(text, origin);

    reader.expect_label("format_version");
    const long long version = reader.next_int("format version");
    if (version != kFormatVersion) {
        throw ValidationError(origin + ": unsupported format_version " +
                              std::to_string(version));
    }
    reader.expect_label("d");
    const auto d = reader.next_int("embedding dimension");
    reader.expect_label("q");
    const auto q = reader.next_int("reduced dimension");
    reader.expect_label("K");
    const auto k_count = reader.next_int("component count");
    if (d < 1 || q < 1 || q > d || k_count < 1) {
        throw ValidationError(origin + ": invalid dimensions (d=" + std::to_string(d) +
                              ", q=" + std::to_string(q) + ", K=" + std::to_string(k_count) +
                              ")");
    }
    reader.expect_label("target_ratio");
    const double target_ratio = reader.next_double("target ratio");
    reader.expect_label("pca_total_variance");
    const double total_variance = reader.next_double("total variance");

    StyleModel model;
    reader.expect_label("scaler_means");
    model.scaler.means = read_matrix(reader, d, 1, "scaler mean");
    reader.expect_label("pca_components");
    model.pca.components = read_matrix(reader, q, d, "pca component");
    reader.expect_label("pca_explained_variance");
    model.pca.explained_variance = read_matrix(reader, q, 1, "explained variance");
    model.pca.target_ratio = target_ratio;
    model.pca.total_variance = total_variance;

    reader.expect_label("gmm_weights");
    model.gmm.weights = read_matrix(reader, k_count, 1, "gmm weight");
    reader.expect_label("gmm_means");
    model.gmm.means = read_matrix(reader, k_count, q, "gmm mean");
    reader.expect_label("gmm_covariances");
    model.gmm.covariances.reserve(k_count);
    for (long long k = 0; k < k_count; ++k) {
        model.gmm.covariances.push_back(read_matrix(reader, q, q, "gmm covariance"));
    }
    if (!reader.at_end()) {
        throw ValidationError(origin + ": trailing content after gmm_covariances block");
    }

    bool finite = model.scaler.means.allFinite() && model.pca.components.allFinite() &&
                  model.pca.explained_variance.allFinite() && model.gmm.weights.allFinite() &&
                  model.gmm.means.allFinite();
    for (const auto& cov : model.gmm.covariances) {
        finite = finite && cov.allFinite();
    }
    if (!finite) {
        throw ValidationError(origin + ": model contains non-finite values");
    }
    if (std::abs(model.gmm.weights.sum() - 1.0) > 1e-6 || model.gmm.weights.minCoeff() < 0.0) {
        throw ValidationError(origin + ": gmm weights are not a probability vector");
    }
    if (model.pca.explained_variance.minCoeff() <= 0.0) {
        throw ValidationError(origin + ": explained variances must be positive");
    }
    return model;
}

StyleModel load_style_model(const std::filesystem::path& path) {
    return parse_style_model(read_text_file(path), path.string());
}

} // namespace stylesearch
