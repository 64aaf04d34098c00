#pragma once

// File formats: dataset CSV (header x1,...,xd,y), center CSV (one point per
// row in chain order, no header) and the JSON model envelope.

#include "cfnet/learner.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace cfnet::io {

void write_dataset_csv(const SampleSet& samples, std::ostream& out);
SampleSet read_dataset_csv(std::istream& in);
void save_dataset(const SampleSet& samples, const std::filesystem::path& path);
SampleSet load_dataset(const std::filesystem::path& path);

void write_centers_csv(const geometry::CenterChain& chain, std::ostream& out);
geometry::CenterChain read_centers_csv(std::istream& in);

struct ModelMetadata {
    std::optional<std::uint64_t> seed;
    std::optional<double> train_rmse;
};

/// {family, dimension, activation, params, w, order, centers, coeffs,
/// metadata} for cfn; the elm and krr envelopes carry their own parameter
/// blocks under the same family/dimension/metadata keys.
std::string model_to_json(const AnyModel& model, const ModelMetadata& meta = {});
AnyModel model_from_json(const std::string& text, ModelMetadata* meta = nullptr);

void save_model(const AnyModel& model, const ModelMetadata& meta, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path, ModelMetadata* meta = nullptr);

} // namespace cfnet::io
