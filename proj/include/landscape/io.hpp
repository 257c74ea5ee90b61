#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "landscape/elafeat.hpp"
#include "landscape/fitcloud.hpp"
#include "landscape/fitmap.hpp"
#include "landscape/sampling.hpp"

namespace landscape::io {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Shortest round-trip decimal text.
std::string format_double(double v);
double parse_double(std::string_view text);

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_file(const fs::path& path);

std::vector<std::uint8_t> read_bytes(const fs::path& path);
/// Writes via a temporary file and rename. Throws IoError.
void write_bytes(const fs::path& path, std::span<const std::uint8_t> bytes);
void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

json to_json(const ProblemRef& ref);
ProblemRef problem_ref_from_json(const json& j);

// 8-bit grayscale: occupied -> round(value * 254), background -> 255.
std::vector<std::uint8_t> encode_pgm(const FitnessMap& map, std::size_t channel = 0);
FitnessMap decode_pgm(std::span<const std::uint8_t> bytes, MapMethod method = MapMethod::Pca);
void write_pgm(const fs::path& path, const FitnessMap& map, std::size_t channel = 0);
FitnessMap read_pgm(const fs::path& path, MapMethod method = MapMethod::Pca);

enum class FillPolicy { White, Zero };
std::string_view fill_policy_name(FillPolicy f);

/// Little-endian float32, row-major.
std::vector<std::uint8_t> encode_f32(std::span<const double> values);
std::vector<float> decode_f32(std::span<const std::uint8_t> bytes);

struct WrittenFiles {
  std::vector<fs::path> files;  // data files first, sidecar last
};

/// `<stem>.f32` (channel-last values, unoccupied = fill), `<stem>.mask.u8`
/// (occupancy) and `<stem>.json` sidecar.
WrittenFiles write_map_tensor(const fs::path& stem, const FitnessMap& map, FillPolicy fill, const ProblemRef& ref,
                              std::uint64_t seed);
FitnessMap read_map_tensor(const fs::path& stem);

/// `<stem>.f32` (n x width) and `<stem>.json` sidecar.
WrittenFiles write_cloud_tensor(const fs::path& stem, const CloudEmbedding& cloud, const CloudConfig& config,
                                const ProblemRef& ref, std::uint64_t seed);
/// Returns the embedded matrix (float precision) from a cloud tensor.
Matrix read_cloud_tensor(const fs::path& stem);

struct FeatureRow {
  ProblemRef ref;
  FeatureVector features;
};

/// Header: function,dim,instance,repetition then feature names. Missing = empty cell.
std::string features_csv(std::span<const FeatureRow> rows);
std::vector<FeatureRow> parse_features_csv(const std::string& text);

/// Header x1..xd,y then one row per point.
std::string sample_csv(const Sample& sample);
json sample_sidecar(const Sample& sample);

}  // namespace landscape::io
