#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "landscape/fitcloud.hpp"
#include "landscape/fitmap.hpp"
#include "landscape/problems.hpp"
#include "landscape/sampling.hpp"

namespace landscape {

namespace fs = std::filesystem;

using ProblemKey = ProblemRef;

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultGlobalSeed = 20220101;

enum class Representation { MapPca, MapPcaFunc, MapMc, MapRmc, Cloud, Ela };

std::string_view representation_name(Representation r);  // "map_pca", ..., "cloud", "ela"
Representation parse_representation(std::string_view name);
std::optional<MapMethod> map_method_of(Representation r);

enum class Split { Train, Validation, Test };
std::string_view split_name(Split s);
Split parse_split(std::string_view name);

/// Inclusive instance-id ranges of the three splits.
struct SplitRanges {
  int train_lo = 1, train_hi = 100;
  int validation_lo = 101, validation_hi = 125;
  int test_lo = 126, test_hi = 150;

  static SplitRanges canonical() { return {}; }
  /// 4:1:1 partition of [lo, hi], the canonical ratio on a shorter range.
  static SplitRanges proportional(int lo, int hi);
  friend bool operator==(const SplitRanges&, const SplitRanges&) = default;
};

/// Throws OutOfProtocol for ids outside every range.
Split assign_split(int instance_id, const SplitRanges& ranges = SplitRanges::canonical());

/// Order-sensitive 64-bit mix of the key fields and the global seed.
std::uint64_t derive_seed(const ProblemKey& key, std::uint64_t global_seed);

struct DatasetConfig {
  std::vector<FunctionId> suite{kSupportedFunctions.begin(), kSupportedFunctions.end()};
  std::vector<int> dims{2, 3};
  int instance_lo = 1;
  int instance_hi = 60;
  int repetitions = 2;
  Representation representation = Representation::Ela;
  /// 0 selects the representation default: maps 1000, clouds 500, ELA 250 * d.
  std::size_t sample_size = 0;
  CloudConfig cloud{};
  std::uint64_t global_seed = kDefaultGlobalSeed;
  SplitRanges splits = SplitRanges::proportional(1, 60);

  /// 6 functions, dims {2, 3}, instances 1..60, 2 repetitions.
  static DatasetConfig desk(Representation r);
  std::size_t sample_size_for(int dim) const;
  std::vector<ProblemKey> keys() const;
  std::size_t key_count() const;
};

/// JSON form used in the manifest "config" block and by the CLI --config file.
nlohmann::ordered_json config_to_json(const DatasetConfig& config);
/// Inverse of config_to_json. Throws nlohmann::json exceptions on malformed input.
DatasetConfig config_from_json(const nlohmann::ordered_json& j);

std::size_t planned_key_count(std::size_t functions, std::size_t dims, int instance_lo, int instance_hi,
                              int repetitions);

struct FileRecord {
  std::string path;  // relative to the dataset root
  std::string sha256;

  friend bool operator==(const FileRecord&, const FileRecord&) = default;
};

struct ManifestEntry {
  ProblemKey key;
  Split split = Split::Train;
  std::uint64_t seed = 0;
  std::vector<FileRecord> files;  // primary artifact first

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
  int schema_version = kManifestSchemaVersion;
  DatasetConfig config;
  bool complete = false;
  std::vector<ManifestEntry> entries;
};

std::string serialize_manifest(const DatasetManifest& manifest);
DatasetManifest parse_manifest(const std::string& text);
DatasetManifest read_manifest(const fs::path& path);

struct BuildOptions {
  unsigned jobs = 1;
  /// Keys per manifest checkpoint.
  std::size_t checkpoint_every = 64;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Writes artifacts plus `<root>/manifest.json`. Keys already recorded in an
/// existing manifest with matching config and file hashes are reused.
DatasetManifest build_dataset(const DatasetConfig& config, const fs::path& root, const BuildOptions& options = {});

/// Throws IoError when a listed file is absent or its hash differs.
void verify_manifest(const DatasetManifest& manifest, const fs::path& root);

using LabelSource = std::function<PropertyLabels(FunctionId)>;

struct SplitData {
  std::vector<ProblemKey> keys;
  std::vector<std::string> columns;
  Matrix rows;
  std::vector<PropertyLabels> labels;
};

struct LoadedDataset {
  std::vector<std::string> columns;
  std::vector<std::string> eliminated;  // ELA columns dropped for Missing values
  std::vector<ManifestEntry> entries;
  Matrix rows;
  std::vector<PropertyLabels> labels;

  /// Throws EmptySplit.
  SplitData split(Split s) const;
};

/// Loads and flattens every artifact; ELA columns Missing in any row are dropped.
LoadedDataset load_dataset(const DatasetManifest& manifest, const fs::path& root, const LabelSource& labels_of = labels);
SplitData load_split(const DatasetManifest& manifest, const fs::path& root, Split split,
                     const LabelSource& labels_of = labels);

}  // namespace landscape
