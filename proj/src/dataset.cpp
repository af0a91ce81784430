#include "fedcontrib/dataset.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "fedcontrib/rng.hpp"

namespace fedcontrib {

void LabeledDataset::validate() const {
    if (labels.size() != features.rows()) {
        throw ShapeError("dataset has " + std::to_string(features.rows()) + " feature rows but " +
                         std::to_string(labels.size()) + " labels");
    }
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= num_classes) {
            throw ContractViolation("label " + std::to_string(labels[i]) + " at row " +
                                    std::to_string(i) + " outside [0, " +
                                    std::to_string(num_classes) + ")");
        }
    }
}

LabeledDataset LabeledDataset::subset(const std::vector<Eigen::Index>& indices) const {
    LabeledDataset out;
    out.num_classes = num_classes;
    out.features.resize(static_cast<Eigen::Index>(indices.size()), dim());
    out.labels.resize(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t r = 0; r < indices.size(); ++r) {
        out.features.row(static_cast<Eigen::Index>(r)) = features.row(indices[r]);
        out.labels[static_cast<Eigen::Index>(r)] = labels[indices[r]];
    }
    return out;
}

LabeledDataset generate_synthetic(int num_classes, int dim, int per_class, double spread,
                                  std::uint64_t seed) {
    if (num_classes < 2) throw ConfigError("generate_synthetic: num_classes must be >= 2");
    if (dim < 2) throw ConfigError("generate_synthetic: dim must be >= 2");
    if (per_class < 1) throw ConfigError("generate_synthetic: per_class must be >= 1");
    if (!(spread > 0.0)) throw ConfigError("generate_synthetic: spread must be > 0");

    Rng rng(seed);
    Matrix centers(num_classes, dim);
    for (int k = 0; k < num_classes; ++k) {
        for (int d = 0; d < dim; ++d) centers(k, d) = rng.uniform(0.2, 0.8);
    }

    LabeledDataset data;
    data.num_classes = num_classes;
    data.features.resize(static_cast<Eigen::Index>(num_classes) * per_class, dim);
    data.labels.resize(data.features.rows());
    Eigen::Index row = 0;
    for (int k = 0; k < num_classes; ++k) {
        for (int s = 0; s < per_class; ++s, ++row) {
            for (int d = 0; d < dim; ++d) {
                data.features(row, d) =
                    std::clamp(centers(k, d) + rng.normal(0.0, spread), 0.0, 1.0);
            }
            data.labels[row] = k;
        }
    }
    return data;
}

std::pair<LabeledDataset, LabeledDataset> split_holdout(const LabeledDataset& data,
                                                        int holdout_per_class) {
    if (holdout_per_class < 1) throw ConfigError("split_holdout: holdout_per_class must be >= 1");
    data.validate();

    std::vector<std::vector<Eigen::Index>> by_class(static_cast<std::size_t>(data.num_classes));
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);
    }

    std::vector<Eigen::Index> train_idx;
    std::vector<Eigen::Index> holdout_idx;
    for (int k = 0; k < data.num_classes; ++k) {
        const auto& members = by_class[static_cast<std::size_t>(k)];
        if (static_cast<int>(members.size()) <= holdout_per_class) {
            throw ConfigError("split_holdout: class " + std::to_string(k) + " has only " +
                              std::to_string(members.size()) + " samples, cannot hold out " +
                              std::to_string(holdout_per_class));
        }
        const std::size_t cut = members.size() - static_cast<std::size_t>(holdout_per_class);
        train_idx.insert(train_idx.end(), members.begin(), members.begin() + cut);
        holdout_idx.insert(holdout_idx.end(), members.begin() + cut, members.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(holdout_idx.begin(), holdout_idx.end());
    return {data.subset(train_idx), data.subset(holdout_idx)};
}

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_be32(std::ifstream& in, const std::string& what) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    if (in.gcount() != 4) throw ParseError("truncated file: could not read " + what);
    return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
           (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
}

std::string hex32(std::uint32_t v) {
    std::ostringstream out;
    out << "0x" << std::hex << v;
    return out.str();
}

}  // namespace

LabeledDataset load_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path) {
    std::ifstream images(images_path, std::ios::binary);
    if (!images) throw ParseError("cannot open image file: " + images_path.string());
    std::ifstream labels(labels_path, std::ios::binary);
    if (!labels) throw ParseError("cannot open label file: " + labels_path.string());

    const std::uint32_t image_magic = read_be32(images, "image magic");
    if (image_magic != kImageMagic) {
        throw ParseError("bad image magic: got " + hex32(image_magic) + ", want " +
                         hex32(kImageMagic));
    }
    const std::uint32_t image_count = read_be32(images, "image count");
    const std::uint32_t rows = read_be32(images, "image rows");
    const std::uint32_t cols = read_be32(images, "image cols");

    const std::uint32_t label_magic = read_be32(labels, "label magic");
    if (label_magic != kLabelMagic) {
        throw ParseError("bad label magic: got " + hex32(label_magic) + ", want " +
                         hex32(kLabelMagic));
    }
    const std::uint32_t label_count = read_be32(labels, "label count");
    if (label_count != image_count) {
        throw ParseError("count mismatch between image file (" + std::to_string(image_count) +
                         ") and label file (" + std::to_string(label_count) + ")");
    }

    const std::size_t pixel_count =
        static_cast<std::size_t>(image_count) * rows * cols;
    std::vector<unsigned char> pixels(pixel_count);
    images.read(reinterpret_cast<char*>(pixels.data()),
                static_cast<std::streamsize>(pixel_count));
    if (static_cast<std::size_t>(images.gcount()) != pixel_count) {
        throw ParseError("truncated image data: expected " + std::to_string(pixel_count) +
                         " pixel bytes, got " + std::to_string(images.gcount()));
    }

    std::vector<unsigned char> label_bytes(image_count);
    labels.read(reinterpret_cast<char*>(label_bytes.data()),
                static_cast<std::streamsize>(image_count));
    if (static_cast<std::size_t>(labels.gcount()) != image_count) {
        throw ParseError("truncated label data: expected " + std::to_string(image_count) +
                         " label bytes, got " + std::to_string(labels.gcount()));
    }

    LabeledDataset data;
    const Eigen::Index dim = static_cast<Eigen::Index>(rows) * cols;
    data.features.resize(static_cast<Eigen::Index>(image_count), dim);
    data.labels.resize(static_cast<Eigen::Index>(image_count));
    for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
        for (Eigen::Index d = 0; d < dim; ++d) {
            data.features(i, d) =
                static_cast<double>(pixels[static_cast<std::size_t>(i) * dim + d]) / 255.0;
        }
        data.labels[i] = static_cast<int>(label_bytes[static_cast<std::size_t>(i)]);
    }
    data.num_classes = data.labels.size() > 0 ? data.labels.maxCoeff() + 1 : 0;
    return data;
}

namespace {

void write_be32(std::ofstream& out, std::uint32_t v) {
    const unsigned char bytes[4] = {static_cast<unsigned char>(v >> 24),
                                    static_cast<unsigned char>(v >> 16),
                                    static_cast<unsigned char>(v >> 8),
                                    static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

}  // namespace

void write_idx(const LabeledDataset& data, const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path) {
    data.validate();
    std::ofstream images(images_path, std::ios::binary);
    if (!images) throw ParseError("cannot write image file: " + images_path.string());
    write_be32(images, kImageMagic);
    write_be32(images, static_cast<std::uint32_t>(data.size()));
    write_be32(images, static_cast<std::uint32_t>(data.dim()));
    write_be32(images, 1);
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        for (Eigen::Index d = 0; d < data.dim(); ++d) {
            const double v = std::clamp(data.features(i, d), 0.0, 1.0) * 255.0;
            const auto byte = static_cast<unsigned char>(std::lround(v));
            images.write(reinterpret_cast<const char*>(&byte), 1);
        }
    }

    std::ofstream labels(labels_path, std::ios::binary);
    if (!labels) throw ParseError("cannot write label file: " + labels_path.string());
    write_be32(labels, kLabelMagic);
    write_be32(labels, static_cast<std::uint32_t>(data.size()));
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        const auto byte = static_cast<unsigned char>(data.labels[i]);
        labels.write(reinterpret_cast<const char*>(&byte), 1);
    }
}

namespace {

std::string class_set_text(const std::set<int>& classes) {
    std::string out = "{";
    for (auto it = classes.begin(); it != classes.end(); ++it) {
        if (it != classes.begin()) out += ",";
        out += std::to_string(*it);
    }
    return out + "}";
}

}  // namespace

std::vector<std::vector<Eigen::Index>> partition_indices(const LabeledDataset& pool,
                                                         const std::vector<ClientSpec>& specs,
                                                         std::uint64_t seed, bool allow_overlap) {
    pool.validate();
    for (const auto& spec : specs) {
        if (spec.class_set.empty()) {
            throw ConfigError("client " + std::to_string(spec.id) + " has an empty class set");
        }
        for (int cls : spec.class_set) {
            if (cls < 0 || cls >= pool.num_classes) {
                throw ConfigError("client " + std::to_string(spec.id) + " requests class " +
                                  std::to_string(cls) + " outside the pool's [0, " +
                                  std::to_string(pool.num_classes) + ")");
            }
        }
    }

    std::vector<char> used(static_cast<std::size_t>(pool.size()), 0);
    Rng rng(seed);
    std::vector<std::vector<Eigen::Index>> assignments;
    assignments.reserve(specs.size());

    for (const auto& spec : specs) {
        std::vector<Eigen::Index> candidates;
        for (Eigen::Index i = 0; i < pool.size(); ++i) {
            if (!spec.class_set.count(pool.labels[i])) continue;
            if (!allow_overlap && used[static_cast<std::size_t>(i)]) continue;
            candidates.push_back(i);
        }
        if (static_cast<std::int64_t>(candidates.size()) < spec.num_samples) {
            throw CapacityError("client " + std::to_string(spec.id) + ": requested " +
                                std::to_string(spec.num_samples) + " samples from classes " +
                                class_set_text(spec.class_set) + ", pool has only " +
                                std::to_string(candidates.size()) + " available");
        }
        // partial Fisher-Yates: uniform draw without replacement
        const auto want = static_cast<std::size_t>(spec.num_samples);
        for (std::size_t t = 0; t < want; ++t) {
            const std::size_t j = t + static_cast<std::size_t>(rng.below(candidates.size() - t));
            std::swap(candidates[t], candidates[j]);
        }
        candidates.resize(want);
        std::sort(candidates.begin(), candidates.end());
        if (!allow_overlap) {
            for (Eigen::Index i : candidates) used[static_cast<std::size_t>(i)] = 1;
        }
        assignments.push_back(std::move(candidates));
    }
    return assignments;
}

std::vector<LabeledDataset> partition_noniid(const LabeledDataset& pool,
                                             const std::vector<ClientSpec>& specs,
                                             std::uint64_t seed, bool allow_overlap) {
    const auto assignments = partition_indices(pool, specs, seed, allow_overlap);
    std::vector<LabeledDataset> out;
    out.reserve(assignments.size());
    for (const auto& indices : assignments) out.push_back(pool.subset(indices));
    return out;
}

}  // namespace fedcontrib
