#include "landscape/io.hpp"

#include <openssl/evp.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "landscape/error.hpp"

namespace landscape::io {

namespace {

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
  return fs::path(stem.string() + suffix);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::uint8_t> to_bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error(Errc::IoError, "malformed number '" + std::string(text) + "'");
  return v;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::IoError, "SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_bytes(path)); }

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

void write_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = with_suffix(path, ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::IoError, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::IoError, "cannot move " + tmp.string() + " into place: " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  const auto bytes = to_bytes(text);
  write_bytes(path, bytes);
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

json to_json(const ProblemRef& ref) {
  return json{{"function", function_name(ref.function_id)},
              {"dim", ref.dim},
              {"instance", ref.instance_id},
              {"repetition", ref.repetition}};
}

ProblemRef problem_ref_from_json(const json& j) {
  try {
    return {parse_function_id(j.at("function").get<std::string>()), j.at("dim").get<int>(),
            j.at("instance").get<int>(), j.at("repetition").get<int>()};
  } catch (const json::exception& e) {
    throw Error(Errc::IoError, std::string("malformed problem_ref: ") + e.what());
  }
}

std::vector<std::uint8_t> encode_pgm(const FitnessMap& map, std::size_t channel) {
  const std::size_t res = map.resolution();
  const std::string header = "P5\n" + std::to_string(res) + " " + std::to_string(res) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + res * res);
  for (std::size_t r = 0; r < res; ++r)
    for (std::size_t c = 0; c < res; ++c) {
      if (!map.occupied(r, c, channel)) {
        out.push_back(255);
        continue;
      }
      const double v = std::clamp(map.value(r, c, channel), 0.0, 1.0);
      out.push_back(static_cast<std::uint8_t>(std::lround(v * 254.0)));
    }
  return out;
}

FitnessMap decode_pgm(std::span<const std::uint8_t> bytes, MapMethod method) {
  // Header tokens: magic, width, height, maxval, then one whitespace byte.
  std::size_t pos = 0;
  std::vector<std::string> tokens;
  while (tokens.size() < 4 && pos < bytes.size()) {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    std::string tok;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) tok.push_back(static_cast<char>(bytes[pos++]));
    if (!tok.empty()) tokens.push_back(tok);
  }
  ++pos;
  if (tokens.size() != 4 || tokens[0] != "P5" || tokens[3] != "255" || tokens[1] != tokens[2])
    throw Error(Errc::IoError, "unsupported PGM header");
  const std::size_t res = std::stoul(tokens[1]);
  if (bytes.size() < pos + res * res) throw Error(Errc::IoError, "truncated PGM data");
  FitnessMap map(res, 1, method);
  for (std::size_t i = 0; i < res * res; ++i) {
    const std::uint8_t b = bytes[pos + i];
    if (b != 255) map.set(i / res, i % res, 0, b / 254.0);
  }
  return map;
}

void write_pgm(const fs::path& path, const FitnessMap& map, std::size_t channel) {
  write_bytes(path, encode_pgm(map, channel));
}

FitnessMap read_pgm(const fs::path& path, MapMethod method) { return decode_pgm(read_bytes(path), method); }

std::string_view fill_policy_name(FillPolicy f) { return f == FillPolicy::White ? "white" : "zero"; }

std::vector<std::uint8_t> encode_f32(std::span<const double> values) {
  std::vector<std::uint8_t> out;
  out.reserve(values.size() * 4);
  for (double v : values) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
  return out;
}

std::vector<float> decode_f32(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 4 != 0) throw Error(Errc::IoError, "float32 tensor size is not a multiple of 4");
  std::vector<float> out(bytes.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes[4 * i + b]) << (8 * b);
    out[i] = std::bit_cast<float>(bits);
  }
  return out;
}

WrittenFiles write_map_tensor(const fs::path& stem, const FitnessMap& map, FillPolicy fill, const ProblemRef& ref,
                              std::uint64_t seed) {
  std::vector<double> values(map.values().begin(), map.values().end());
  const double fill_value = fill == FillPolicy::White ? 1.0 : 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!map.occupancy()[i]) values[i] = fill_value;

  WrittenFiles out;
  out.files = {with_suffix(stem, ".f32"), with_suffix(stem, ".mask.u8"), with_suffix(stem, ".json")};
  write_bytes(out.files[0], encode_f32(values));
  write_bytes(out.files[1], map.occupancy());
  const json sidecar{{"kind", "fitness_map"},
                     {"resolution", map.resolution()},
                     {"channels", map.channels()},
                     {"occupied_channels", map.occupied_channel_count()},
                     {"method", map_method_name(map.method())},
                     {"layout", "row-major, channel-last, float32 little-endian"},
                     {"fill_policy", fill_policy_name(fill)},
                     {"occupancy_file", out.files[1].filename().string()},
                     {"problem_ref", to_json(ref)},
                     {"seed", seed}};
  write_text(out.files[2], sidecar.dump(2) + "\n");
  return out;
}

FitnessMap read_map_tensor(const fs::path& stem) {
  json sidecar;
  try {
    sidecar = json::parse(read_text(with_suffix(stem, ".json")));
  } catch (const json::exception& e) {
    throw Error(Errc::IoError, "malformed sidecar for " + stem.string() + ": " + e.what());
  }
  const auto res = sidecar.at("resolution").get<std::size_t>();
  const auto channels = sidecar.at("channels").get<std::size_t>();
  const auto values = decode_f32(read_bytes(with_suffix(stem, ".f32")));
  const auto mask = read_bytes(with_suffix(stem, ".mask.u8"));
  if (values.size() != res * res * channels || mask.size() != values.size())
    throw Error(Errc::IoError, "tensor size disagrees with sidecar for " + stem.string());
  FitnessMap map(res, channels, parse_map_method(sidecar.at("method").get<std::string>()));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (mask[i]) map.set(i / channels / res, (i / channels) % res, i % channels, values[i]);
  return map;
}

WrittenFiles write_cloud_tensor(const fs::path& stem, const CloudEmbedding& cloud, const CloudConfig& config,
                                const ProblemRef& ref, std::uint64_t seed) {
  WrittenFiles out;
  out.files = {with_suffix(stem, ".f32"), with_suffix(stem, ".json")};
  write_bytes(out.files[0], encode_f32(cloud.embedded.data()));
  const json sidecar{{"kind", "fitness_cloud"},
                     {"n", cloud.n_points},
                     {"k", config.k},
                     {"p", norm_name(config.p)},
                     {"delta_max", config.delta_max},
                     {"d_max", config.d_max},
                     {"width", config.width()},
                     {"indicator", cloud.indicator},
                     {"layout", "row-major, float32 little-endian"},
                     {"problem_ref", to_json(ref)},
                     {"seed", seed}};
  write_text(out.files[1], sidecar.dump(2) + "\n");
  return out;
}

Matrix read_cloud_tensor(const fs::path& stem) {
  json sidecar;
  try {
    sidecar = json::parse(read_text(with_suffix(stem, ".json")));
  } catch (const json::exception& e) {
    throw Error(Errc::IoError, "malformed sidecar for " + stem.string() + ": " + e.what());
  }
  const auto n = sidecar.at("n").get<std::size_t>();
  const auto width = sidecar.at("width").get<std::size_t>();
  const auto values = decode_f32(read_bytes(with_suffix(stem, ".f32")));
  if (values.size() != n * width) throw Error(Errc::IoError, "tensor size disagrees with sidecar for " + stem.string());
  Matrix m(n, width);
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

std::string features_csv(std::span<const FeatureRow> rows) {
  std::ostringstream out;
  out << "function,dim,instance,repetition";
  for (const auto& name : rows.empty() ? feature_names() : rows.front().features.names) out << ',' << name;
  out << '\n';
  for (const auto& row : rows) {
    out << function_name(row.ref.function_id) << ',' << row.ref.dim << ',' << row.ref.instance_id << ','
        << row.ref.repetition;
    for (const auto& v : row.features.values) {
      out << ',';
      if (v) out << format_double(*v);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<FeatureRow> parse_features_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::IoError, "empty features CSV");
  const auto header = split_csv_line(line);
  if (header.size() < 4) throw Error(Errc::IoError, "features CSV header too short");
  const std::vector<std::string> names(header.begin() + 4, header.end());
  std::vector<FeatureRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw Error(Errc::IoError, "features CSV row has wrong arity");
    FeatureRow row;
    row.ref = {parse_function_id(cells[0]), std::stoi(cells[1]), std::stoi(cells[2]), std::stoi(cells[3])};
    row.features.names = names;
    for (std::size_t i = 4; i < cells.size(); ++i)
      row.features.values.push_back(cells[i].empty() ? FeatureValue{} : FeatureValue{parse_double(cells[i])});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sample_csv(const Sample& sample) {
  std::ostringstream out;
  for (std::size_t j = 0; j < sample.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "y\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (double v : sample.x.row(i)) out << format_double(v) << ',';
    out << format_double(sample.y[i]) << '\n';
  }
  return out.str();
}

json sample_sidecar(const Sample& sample) {
  return json{{"kind", "sample"},
              {"n", sample.size()},
              {"dim", sample.dim()},
              {"lower", sample.bounds.lower},
              {"upper", sample.bounds.upper},
              {"problem_ref", to_json(sample.problem_ref)},
              {"seed", sample.seed}};
}

}  // namespace landscape::io
