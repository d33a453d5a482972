#pragma once

#include <filesystem>
#include <string>

#include "phenotype.hpp"

namespace stylesearch {

// Versioned UTF-8 text schema: header lines (format_version, d, q, K,
// target_ratio, pca_total_variance) followed by labeled numeric blocks
// (scaler_means, pca_components, pca_explained_variance, gmm_weights,
// gmm_means, gmm_covariances), all values at 17 significant digits. Writing
// the same model twice yields identical bytes.
std::string serialize_style_model(const StyleModel& model);

void save_style_model(const StyleModel& model, const std::filesystem::path& path);

StyleModel load_style_model(const std::filesystem::path& path);

StyleModel parse_style_model(const std::string& text, const std::string& origin);

} // namespace stylesearch
