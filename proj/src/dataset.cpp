#include "landscape/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "landscape/elafeat.hpp"
#include "landscape/error.hpp"
#include "landscape/evalharness.hpp"
#include "landscape/io.hpp"
#include "landscape/rng.hpp"

namespace landscape {

namespace {

using io::json;

constexpr std::uint64_t kSeedDomain = 0x64617461736574ULL;

std::string pad3(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", v);
  return buf;
}

std::string artifact_stem(const DatasetConfig& config, const ProblemKey& key) {
  return std::string(representation_name(config.representation)) + "/" + function_name(key.function_id) + "/d" +
         std::to_string(key.dim) + "/i" + pad3(key.instance_id) + "_r" + std::to_string(key.repetition);
}

std::string key_label(const ProblemKey& key) {
  return function_name(key.function_id) + " d=" + std::to_string(key.dim) + " i=" + std::to_string(key.instance_id) +
         " r=" + std::to_string(key.repetition);
}

ManifestEntry build_entry(const DatasetConfig& config, const fs::path& root, const ProblemKey& key) {
  ManifestEntry entry;
  entry.key = key;
  entry.split = assign_split(key.instance_id, config.splits);
  entry.seed = derive_seed(key, config.global_seed);

  const ProblemInstance problem = make_problem(key.function_id, key.dim, key.instance_id);
  const Sample sample = draw_sample(problem, config.sample_size_for(key.dim), entry.seed, key.repetition);
  const std::string stem = artifact_stem(config, key);

  std::vector<fs::path> written;
  if (const auto method = map_method_of(config.representation)) {
    const FitnessMap map = build_map(sample, *method);
    if (*method == MapMethod::Mc) {
      for (const auto& f : io::write_map_tensor(root / stem, map, io::FillPolicy::White, key, entry.seed).files)
        written.push_back(f);
    } else {
      written.push_back(root / (stem + ".pgm"));
      io::write_pgm(written.back(), map);
    }
  } else if (config.representation == Representation::Cloud) {
    const CloudEmbedding cloud = embed_cloud(sample, config.cloud);
    for (const auto& f : io::write_cloud_tensor(root / stem, cloud, config.cloud, key, entry.seed).files)
      written.push_back(f);
  } else {
    const std::vector<io::FeatureRow> rows{{key, feature_vector(sample)}};
    written.push_back(root / (stem + ".csv"));
    io::write_text(written.back(), io::features_csv(rows));
  }
  for (const auto& path : written)
    entry.files.push_back({fs::relative(path, root).generic_string(), io::sha256_file(path)});
  return entry;
}

bool entry_intact(const ManifestEntry& entry, const fs::path& root) {
  for (const auto& f : entry.files) {
    const fs::path p = root / f.path;
    if (!fs::exists(p) || io::sha256_file(p) != f.sha256) return false;
  }
  return !entry.files.empty();
}

void write_manifest(const DatasetManifest& manifest, const fs::path& root) {
  io::write_text(root / "manifest.json", serialize_manifest(manifest));
}

}  // namespace

json config_to_json(const DatasetConfig& c) {
  json suite = json::array();
  for (FunctionId f : c.suite) suite.push_back(function_name(f));
  json out{{"representation", representation_name(c.representation)},
           {"suite", suite},
           {"dims", c.dims},
           {"instance_range", {c.instance_lo, c.instance_hi}},
           {"repetitions", c.repetitions},
           {"sample_size", {{"n", c.sample_size},
                            {"policy", "n = 0 selects maps 1000, clouds 500, ela 250*d"}}},
           {"seeds", {{"global_seed", c.global_seed},
                      {"rule", "splitmix64 chain over (function, dim, instance, repetition, global_seed)"}}},
           {"splits",
            {{"train", {c.splits.train_lo, c.splits.train_hi}},
             {"validation", {c.splits.validation_lo, c.splits.validation_hi}},
             {"test", {c.splits.test_lo, c.splits.test_hi}}}}};
  if (c.representation == Representation::Cloud)
    out["cloud"] = {{"k", c.cloud.k}, {"p", norm_name(c.cloud.p)}, {"delta_max", c.cloud.delta_max},
                    {"d_max", c.cloud.d_max}};
  return out;
}

DatasetConfig config_from_json(const json& j) {
  DatasetConfig c;
  c.representation = parse_representation(j.at("representation").get<std::string>());
  c.suite.clear();
  for (const auto& f : j.at("suite")) c.suite.push_back(parse_function_id(f.get<std::string>()));
  c.dims = j.at("dims").get<std::vector<int>>();
  c.instance_lo = j.at("instance_range").at(0).get<int>();
  c.instance_hi = j.at("instance_range").at(1).get<int>();
  c.repetitions = j.at("repetitions").get<int>();
  c.sample_size = j.at("sample_size").at("n").get<std::size_t>();
  c.global_seed = j.at("seeds").at("global_seed").get<std::uint64_t>();
  const auto& s = j.at("splits");
  c.splits = {s.at("train").at(0).get<int>(),      s.at("train").at(1).get<int>(),
              s.at("validation").at(0).get<int>(), s.at("validation").at(1).get<int>(),
              s.at("test").at(0).get<int>(),       s.at("test").at(1).get<int>()};
  if (j.contains("cloud")) {
    const auto& cl = j.at("cloud");
    c.cloud.k = cl.at("k").get<std::size_t>();
    c.cloud.p = parse_norm(cl.at("p").get<std::string>());
    c.cloud.delta_max = cl.at("delta_max").get<double>();
    c.cloud.d_max = cl.at("d_max").get<std::size_t>();
  }
  return c;
}

std::string_view representation_name(Representation r) {
  switch (r) {
    case Representation::MapPca: return "map_pca";
    case Representation::MapPcaFunc: return "map_pcafunc";
    case Representation::MapMc: return "map_mc";
    case Representation::MapRmc: return "map_rmc";
    case Representation::Cloud: return "cloud";
    case Representation::Ela: return "ela";
  }
  return "";
}

Representation parse_representation(std::string_view name) {
  for (Representation r : {Representation::MapPca, Representation::MapPcaFunc, Representation::MapMc,
                           Representation::MapRmc, Representation::Cloud, Representation::Ela})
    if (representation_name(r) == name) return r;
  throw Error(Errc::InvalidArgument, "unknown representation '" + std::string(name) + "'");
}

std::optional<MapMethod> map_method_of(Representation r) {
  switch (r) {
    case Representation::MapPca: return MapMethod::Pca;
    case Representation::MapPcaFunc: return MapMethod::PcaFunc;
    case Representation::MapMc: return MapMethod::Mc;
    case Representation::MapRmc: return MapMethod::Rmc;
    default: return std::nullopt;
  }
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
  }
  return "";
}

Split parse_split(std::string_view name) {
  for (Split s : {Split::Train, Split::Validation, Split::Test})
    if (split_name(s) == name) return s;
  throw Error(Errc::InvalidArgument, "unknown split '" + std::string(name) + "'");
}

SplitRanges SplitRanges::proportional(int lo, int hi) {
  const int count = hi - lo + 1;
  if (count < 6) throw Error(Errc::InvalidArgument, "split range needs at least 6 instances");
  const int train = count * 4 / 6;
  const int validation = (count - train) / 2;
  return {lo, lo + train - 1, lo + train, lo + train + validation - 1, lo + train + validation, hi};
}

Split assign_split(int instance_id, const SplitRanges& r) {
  if (instance_id >= r.train_lo && instance_id <= r.train_hi) return Split::Train;
  if (instance_id >= r.validation_lo && instance_id <= r.validation_hi) return Split::Validation;
  if (instance_id >= r.test_lo && instance_id <= r.test_hi) return Split::Test;
  throw Error(Errc::OutOfProtocol, "instance id " + std::to_string(instance_id) + " is outside every split range");
}

std::uint64_t derive_seed(const ProblemKey& key, std::uint64_t global_seed) {
  std::uint64_t h = hash_combine64(kSeedDomain, global_seed);
  h = hash_combine64(h, static_cast<std::uint64_t>(function_number(key.function_id)));
  h = hash_combine64(h, static_cast<std::uint64_t>(key.dim));
  h = hash_combine64(h, static_cast<std::uint64_t>(key.instance_id));
  return hash_combine64(h, static_cast<std::uint64_t>(key.repetition));
}

DatasetConfig DatasetConfig::desk(Representation r) {
  DatasetConfig c;
  c.representation = r;
  return c;
}

std::size_t DatasetConfig::sample_size_for(int dim) const {
  if (sample_size > 0) return sample_size;
  switch (representation) {
    case Representation::Cloud: return 500;
    case Representation::Ela: return 250 * static_cast<std::size_t>(dim);
    default: return 1000;
  }
}

std::vector<ProblemKey> DatasetConfig::keys() const {
  if (instance_lo > instance_hi || repetitions < 1)
    throw Error(Errc::InvalidArgument, "empty instance range or repetition count");
  std::vector<ProblemKey> out;
  out.reserve(key_count());
  for (FunctionId f : suite)
    for (int d : dims)
      for (int i = instance_lo; i <= instance_hi; ++i)
        for (int r = 1; r <= repetitions; ++r) out.push_back({f, d, i, r});
  return out;
}

std::size_t DatasetConfig::key_count() const {
  return planned_key_count(suite.size(), dims.size(), instance_lo, instance_hi, repetitions);
}

std::size_t planned_key_count(std::size_t functions, std::size_t dims, int instance_lo, int instance_hi,
                              int repetitions) {
  if (instance_hi < instance_lo || repetitions < 1) return 0;
  return functions * dims * static_cast<std::size_t>(instance_hi - instance_lo + 1) *
         static_cast<std::size_t>(repetitions);
}

std::string serialize_manifest(const DatasetManifest& m) {
  json entries = json::array();
  for (const auto& e : m.entries) {
    json files = json::array();
    for (const auto& f : e.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}});
    entries.push_back({{"key", io::to_json(e.key)}, {"split", split_name(e.split)}, {"seed", e.seed}, {"files", files}});
  }
  const json doc{{"schema_version", m.schema_version},
                 {"status", m.complete ? "complete" : "partial"},
                 {"config", config_to_json(m.config)},
                 {"entry_count", m.entries.size()},
                 {"entries", entries}};
  return doc.dump(2) + "\n";
}

DatasetManifest parse_manifest(const std::string& text) {
  try {
    const json doc = json::parse(text);
    DatasetManifest m;
    m.schema_version = doc.at("schema_version").get<int>();
    if (m.schema_version != kManifestSchemaVersion)
      throw Error(Errc::IoError, "unsupported manifest schema version " + std::to_string(m.schema_version));
    m.complete = doc.at("status").get<std::string>() == "complete";
    m.config = config_from_json(doc.at("config"));
    for (const auto& e : doc.at("entries")) {
      ManifestEntry entry;
      entry.key = io::problem_ref_from_json(e.at("key"));
      entry.split = parse_split(e.at("split").get<std::string>());
      entry.seed = e.at("seed").get<std::uint64_t>();
      for (const auto& f : e.at("files"))
        entry.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
      m.entries.push_back(std::move(entry));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(Errc::IoError, std::string("malformed manifest: ") + e.what());
  }
}

DatasetManifest read_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw Error(Errc::IoError, "manifest not found: " + path.string());
  return parse_manifest(io::read_text(path));
}

DatasetManifest build_dataset(const DatasetConfig& config, const fs::path& root, const BuildOptions& options) {
  const auto keys = config.keys();
  for (const auto& key : keys) assign_split(key.instance_id, config.splits);

  std::map<std::tuple<int, int, int, int>, ManifestEntry> reusable;
  const fs::path manifest_path = root / "manifest.json";
  if (fs::exists(manifest_path)) {
    try {
      const DatasetManifest previous = read_manifest(manifest_path);
      if (config_to_json(previous.config) == config_to_json(config))
        for (const auto& e : previous.entries)
          reusable.emplace(std::make_tuple(function_number(e.key.function_id), e.key.dim, e.key.instance_id,
                                           e.key.repetition),
                           e);
    } catch (const Error&) {
      // Unreadable manifest: rebuild everything.
    }
  }

  DatasetManifest manifest;
  manifest.config = config;
  std::vector<std::optional<ManifestEntry>> results(keys.size());
  const std::size_t chunk = std::max<std::size_t>(1, options.checkpoint_every);
  const unsigned jobs = std::max(1u, options.jobs);

  for (std::size_t begin = 0; begin < keys.size(); begin += chunk) {
    const std::size_t end = std::min(keys.size(), begin + chunk);
    std::atomic<std::size_t> next{begin};
    std::vector<std::exception_ptr> failures(end - begin);
    const auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        const auto& key = keys[i];
        try {
          const auto it = reusable.find(
              std::make_tuple(function_number(key.function_id), key.dim, key.instance_id, key.repetition));
          if (it != reusable.end() && entry_intact(it->second, root)) results[i] = it->second;
          else results[i] = build_entry(config, root, key);
        } catch (...) {
          failures[i - begin] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> workers;
    for (unsigned w = 1; w < jobs; ++w) workers.emplace_back(work);
    work();
    for (auto& t : workers) t.join();

    for (std::size_t i = begin; i < end; ++i) {
      if (!failures[i - begin]) continue;
      try {
        std::rethrow_exception(failures[i - begin]);
      } catch (const std::exception& e) {
        throw Error(Errc::IoError, "building " + key_label(keys[i]) + " failed: " + e.what());
      }
    }
    for (std::size_t i = begin; i < end; ++i) manifest.entries.push_back(*results[i]);
    manifest.complete = end == keys.size();
    write_manifest(manifest, root);
    if (options.progress) options.progress(end, keys.size());
  }

  if (config.representation == Representation::Ela) {
    std::vector<io::FeatureRow> rows;
    for (const auto& e : manifest.entries) {
      auto parsed = io::parse_features_csv(io::read_text(root / e.files.front().path));
      rows.insert(rows.end(), parsed.begin(), parsed.end());
    }
    io::write_text(root / "features.csv", io::features_csv(rows));
  }
  return manifest;
}

void verify_manifest(const DatasetManifest& manifest, const fs::path& root) {
  for (const auto& e : manifest.entries)
    for (const auto& f : e.files) {
      const fs::path p = root / f.path;
      if (!fs::exists(p)) throw Error(Errc::IoError, "missing artifact " + f.path + " for " + key_label(e.key));
      if (io::sha256_file(p) != f.sha256)
        throw Error(Errc::IoError, "hash mismatch for " + f.path + " (" + key_label(e.key) + ")");
    }
}

SplitData LoadedDataset::split(Split s) const {
  SplitData out;
  out.columns = columns;
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].split == s) picked.push_back(i);
  if (picked.empty()) throw Error(Errc::EmptySplit, "split '" + std::string(split_name(s)) + "' has no rows");
  out.rows = Matrix(picked.size(), rows.cols());
  for (std::size_t r = 0; r < picked.size(); ++r) {
    std::copy(rows.row(picked[r]).begin(), rows.row(picked[r]).end(), out.rows.row(r).begin());
    out.keys.push_back(entries[picked[r]].key);
    out.labels.push_back(labels[picked[r]]);
  }
  return out;
}

LoadedDataset load_dataset(const DatasetManifest& manifest, const fs::path& root, const LabelSource& labels_of) {
  LoadedDataset out;
  out.entries = manifest.entries;
  if (manifest.entries.empty()) throw Error(Errc::EmptySplit, "manifest has no entries");

  const Representation rep = manifest.config.representation;
  std::vector<std::vector<double>> flat;
  flat.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    if (e.files.empty()) throw Error(Errc::IoError, "manifest entry without files for " + key_label(e.key));
    const fs::path primary = root / e.files.front().path;
    if (!fs::exists(primary)) throw Error(Errc::IoError, "missing artifact " + primary.string());
    if (rep == Representation::Ela) {
      const auto rows = io::parse_features_csv(io::read_text(primary));
      if (rows.size() != 1) throw Error(Errc::IoError, "expected one feature row in " + primary.string());
      if (out.columns.empty()) out.columns = rows.front().features.names;
      flat.push_back(flatten_features(rows.front().features));
    } else if (rep == Representation::Cloud) {
      fs::path stem = primary;
      stem.replace_extension();
      flat.push_back(flatten_cloud(io::read_cloud_tensor(stem)));
    } else if (rep == Representation::MapMc) {
      fs::path stem = primary;
      stem.replace_extension();
      flat.push_back(flatten_map(io::read_map_tensor(stem)));
    } else {
      flat.push_back(flatten_map(io::read_pgm(primary, *map_method_of(rep))));
    }
    out.labels.push_back(labels_of(e.key.function_id));
  }

  const std::size_t width = flat.front().size();
  for (const auto& row : flat)
    if (row.size() != width) throw Error(Errc::IoError, "artifacts flatten to rows of different length");
  if (out.columns.empty())
    for (std::size_t c = 0; c < width; ++c) out.columns.push_back("v" + std::to_string(c));

  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < width; ++c) {
    const bool missing_anywhere =
        std::any_of(flat.begin(), flat.end(), [c](const auto& row) { return !std::isfinite(row[c]); });
    if (missing_anywhere) out.eliminated.push_back(out.columns[c]);
    else keep.push_back(c);
  }
  std::vector<std::string> kept_names;
  for (std::size_t c : keep) kept_names.push_back(out.columns[c]);
  out.columns = std::move(kept_names);
  out.rows = Matrix(flat.size(), keep.size());
  for (std::size_t r = 0; r < flat.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) out.rows(r, c) = flat[r][keep[c]];
  return out;
}

SplitData load_split(const DatasetManifest& manifest, const fs::path& root, Split split, const LabelSource& labels_of) {
  return load_dataset(manifest, root, labels_of).split(split);
}

}  // namespace landscape
