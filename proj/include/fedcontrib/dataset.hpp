#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <utility>
#include <vector>

#include "fedcontrib/types.hpp"

namespace fedcontrib {

/// Feature rows in [0,1], integer class labels in [0, num_classes).
struct LabeledDataset {
    Matrix features;         // n x dim
    Eigen::VectorXi labels;  // n
    int num_classes = 0;

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }
    bool empty() const { return size() == 0; }

    void validate() const;
    LabeledDataset subset(const std::vector<Eigen::Index>& indices) const;
};

/// A client's data budget and the class labels it may hold.
struct ClientSpec {
    int id = 0;
    std::int64_t num_samples = 0;
    std::set<int> class_set;

    int variety() const { return static_cast<int>(class_set.size()); }
};

// Gaussian blobs around per-class centers drawn uniformly in [0.2, 0.8]^dim,
// clamped to [0,1]. Exactly per_class samples per class, grouped by class.
LabeledDataset generate_synthetic(int num_classes, int dim, int per_class, double spread,
                                  std::uint64_t seed);

// Moves the last holdout_per_class samples of every class into a validation set.
std::pair<LabeledDataset, LabeledDataset> split_holdout(const LabeledDataset& data,
                                                        int holdout_per_class);

// IDX container format (big-endian magics 0x00000803 / 0x00000801);
// pixel bytes are scaled to [0,1] by /255 and flattened row-major.
LabeledDataset load_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path);

// Inverse of load_idx up to u8 quantization; images written as dim x 1 pixels.
void write_idx(const LabeledDataset& data, const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path);

// Index draw behind partition_noniid, exposed so callers can check overlap.
// Each client receives exactly spec.num_samples pool indices, restricted to its
// class set; draws are disjoint across clients unless allow_overlap.
std::vector<std::vector<Eigen::Index>> partition_indices(const LabeledDataset& pool,
                                                         const std::vector<ClientSpec>& specs,
                                                         std::uint64_t seed,
                                                         bool allow_overlap = false);

std::vector<LabeledDataset> partition_noniid(const LabeledDataset& pool,
                                             const std::vector<ClientSpec>& specs,
                                             std::uint64_t seed, bool allow_overlap = false);

}  // namespace fedcontrib
