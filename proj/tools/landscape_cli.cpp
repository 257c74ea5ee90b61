// Command-line entry point: sample, map, cloud, features, dataset, eval, inspect.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error (diagnostic on stderr).

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "landscape/dataset.hpp"
#include "landscape/elafeat.hpp"
#include "landscape/error.hpp"
#include "landscape/evalharness.hpp"
#include "landscape/fitcloud.hpp"
#include "landscape/fitmap.hpp"
#include "landscape/io.hpp"
#include "landscape/kernels.hpp"
#include "landscape/problems.hpp"
#include "landscape/sampling.hpp"

namespace {

using namespace landscape;
using io::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

/// Raised for usage problems detected after CLI11 parsing (bad config file keys,
/// malformed LANDSCAPE_SEED, unknown enum values).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = kDefaultGlobalSeed;
};

struct KeyOptions {
  std::string function = "F1";
  int dim = 2;
  int instance = 1;
  int repetition = 0;
  std::size_t n = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON file whose keys are long flag names; flags override file values");
  sub->add_option("--out", c.out, "Output directory; relative input paths resolve against it")
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Global seed (falls back to LANDSCAPE_SEED, then 20220101)");
}

void add_key(CLI::App* sub, KeyOptions& k, const std::string& n_help) {
  sub->add_option("--function", k.function, "Benchmark function: F1, F3, F8, F16, F20 or F24")->capture_default_str();
  sub->add_option("--dim", k.dim, "Search-space dimension")->capture_default_str();
  sub->add_option("--instance", k.instance, "Instance id (0 = untransformed)")->capture_default_str();
  sub->add_option("--repetition", k.repetition, "Sampling repetition index")->capture_default_str();
  sub->add_option("--n", k.n, n_help);
}

std::vector<std::string> json_to_results(const json& v) {
  std::vector<std::string> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      auto inner = json_to_results(e);
      out.insert(out.end(), inner.begin(), inner.end());
    }
  } else if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_boolean()) {
    out.push_back(v.get<bool>() ? "true" : "false");
  } else {
    out.push_back(v.dump());
  }
  return out;
}

/// Applies a JSON config file to options not given on the command line.
void apply_config_file(CLI::App* sub, const fs::path& path) {
  if (!fs::exists(path)) throw UsageError("config file not found: " + path.string());
  json doc;
  try {
    doc = json::parse(io::read_text(path));
  } catch (const json::exception& e) {
    throw UsageError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") throw UsageError("config files cannot nest --config");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("unknown key '" + key + "' in config file for '" + sub->get_name() + "'");
    if (opt->count() > 0) continue;
    opt->add_result(json_to_results(value));
    try {
      opt->run_callback();
    } catch (const CLI::ParseError& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

void resolve_seed(const CLI::App* sub, Common& c) {
  if (sub->get_option("--seed")->count() > 0) return;
  const char* env = std::getenv("LANDSCAPE_SEED");
  if (env == nullptr || *env == '\0') return;
  const std::string text(env);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw UsageError("LANDSCAPE_SEED must be a decimal 64-bit integer, got '" + text + "'");
  c.seed = v;
}

fs::path resolve_path(const Common& c, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : fs::path(c.out) / path;
}

ProblemKey resolve_key(const KeyOptions& k) {
  return {parse_function_id(k.function), k.dim, k.instance, k.repetition};
}

json key_json(const KeyOptions& k, std::size_t n) {
  return {{"function", function_name(parse_function_id(k.function))},
          {"dim", k.dim},
          {"instance", k.instance},
          {"repetition", k.repetition},
          {"n", n}};
}

void write_resolved(const Common& c, const std::string& subcommand, json options) {
  const json doc{{"subcommand", subcommand}, {"global_seed", c.seed}, {"options", std::move(options)}};
  io::write_text(fs::path(c.out) / "resolved_config.json", doc.dump(2) + "\n");
}

Sample sample_for(const KeyOptions& k, std::size_t n, std::uint64_t global_seed) {
  const ProblemKey key = resolve_key(k);
  const ProblemInstance problem = make_problem(key.function_id, key.dim, key.instance_id);
  return draw_sample(problem, n, derive_seed(key, global_seed), key.repetition);
}

std::size_t default_n(const KeyOptions& k, std::size_t fallback) { return k.n > 0 ? k.n : fallback; }

// --- subcommands -----------------------------------------------------------

int run_sample(Common& c, const KeyOptions& k) {
  const std::size_t n = default_n(k, 250 * static_cast<std::size_t>(std::max(k.dim, 1)));
  const Sample s = sample_for(k, n, c.seed);
  write_resolved(c, "sample", key_json(k, n));
  io::write_text(fs::path(c.out) / "sample.csv", io::sample_csv(s));
  io::write_text(fs::path(c.out) / "sample.json", io::sample_sidecar(s).dump(2) + "\n");
  std::cout << "sample: " << s.size() << " points in d=" << s.dim() << " -> " << (fs::path(c.out) / "sample.csv").string()
            << "\n";
  return kExitOk;
}

int run_map(Common& c, const KeyOptions& k, const std::string& method_name, std::string format,
            std::size_t resolution) {
  const MapMethod method = parse_map_method(method_name);
  if (format != "auto" && format != "pgm" && format != "tensor")
    throw UsageError("--format must be auto, pgm or tensor");
  if (method == MapMethod::Mc && format == "pgm") throw UsageError("--method mc has 45 channels; use --format tensor");
  if (format == "auto") format = method == MapMethod::Mc ? "tensor" : "pgm";
  const std::size_t n = default_n(k, 1000);
  const Sample s = sample_for(k, n, c.seed);
  const FitnessMap map = build_map(s, method, resolution);
  json resolved = key_json(k, n);
  resolved["method"] = map_method_name(method);
  resolved["format"] = format;
  resolved["resolution"] = resolution;
  write_resolved(c, "map", resolved);

  const fs::path stem = fs::path(c.out) / ("map_" + std::string(map_method_name(method)));
  fs::path primary;
  if (format == "pgm") {
    primary = stem;
    primary += ".pgm";
    io::write_pgm(primary, map);
  } else {
    primary = io::write_map_tensor(stem, map, io::FillPolicy::White, s.problem_ref, s.seed).files.front();
  }
  std::cout << "map: method=" << map_method_name(method) << " resolution=" << map.resolution()
            << " channels=" << map.channels() << " occupied_channels=" << map.occupied_channel_count() << " -> "
            << primary.string() << "\n";
  return kExitOk;
}

int run_cloud(Common& c, const KeyOptions& k, const CloudConfig& config, const std::string& p_text) {
  CloudConfig resolved_config = config;
  resolved_config.p = parse_norm(p_text);
  const std::size_t n = default_n(k, 500);
  const Sample s = sample_for(k, n, c.seed);
  const CloudEmbedding cloud = embed_cloud(s, resolved_config);
  json resolved = key_json(k, n);
  resolved["k"] = resolved_config.k;
  resolved["p"] = norm_name(resolved_config.p);
  resolved["delta_max"] = resolved_config.delta_max;
  resolved["d_max"] = resolved_config.d_max;
  write_resolved(c, "cloud", resolved);
  const auto files = io::write_cloud_tensor(fs::path(c.out) / "cloud", cloud, resolved_config, s.problem_ref, s.seed);
  std::cout << "cloud: rows=" << cloud.embedded.rows() << " width=" << cloud.embedded.cols() << " -> "
            << files.files.front().string() << "\n";
  return kExitOk;
}

int run_features(Common& c, const KeyOptions& k) {
  const std::size_t n = default_n(k, 250 * static_cast<std::size_t>(std::max(k.dim, 1)));
  const Sample s = sample_for(k, n, c.seed);
  const std::vector<io::FeatureRow> rows{{s.problem_ref, feature_vector(s)}};
  write_resolved(c, "features", key_json(k, n));
  const fs::path path = fs::path(c.out) / "features.csv";
  io::write_text(path, io::features_csv(rows));
  std::size_t missing = 0;
  for (const auto& v : rows.front().features.values) missing += v ? 0 : 1;
  std::cout << "features: " << rows.front().features.size() << " values (" << missing << " missing) -> "
            << path.string() << "\n";
  return kExitOk;
}

struct DatasetOptions {
  std::string representation = "ela";
  std::vector<std::string> suite;
  std::vector<int> dims;
  std::vector<int> instances;  // lo hi
  int repetitions = 0;
  std::size_t n = 0;
  unsigned jobs = 1;
  std::size_t k = 5;
  std::string p = "inf";
  double delta_max = 1.5;
};

int run_dataset(Common& c, const DatasetOptions& o) {
  DatasetConfig config = DatasetConfig::desk(parse_representation(o.representation));
  if (!o.suite.empty()) {
    config.suite.clear();
    for (const auto& f : o.suite) config.suite.push_back(parse_function_id(f));
  }
  if (!o.dims.empty()) config.dims = o.dims;
  if (!o.instances.empty()) {
    if (o.instances.size() != 2 || o.instances[0] > o.instances[1])
      throw UsageError("--instances takes two ids LO HI with LO <= HI");
    config.instance_lo = o.instances[0];
    config.instance_hi = o.instances[1];
    config.splits = SplitRanges::proportional(config.instance_lo, config.instance_hi);
  }
  if (o.repetitions > 0) config.repetitions = o.repetitions;
  config.sample_size = o.n;
  config.global_seed = c.seed;
  config.cloud.k = o.k;
  config.cloud.p = parse_norm(o.p);
  config.cloud.delta_max = o.delta_max;

  json resolved = config_to_json(config);
  resolved["jobs"] = o.jobs;
  write_resolved(c, "dataset", resolved);

  BuildOptions options;
  options.jobs = o.jobs;
  options.progress = [](std::size_t done, std::size_t total) {
    std::cerr << "\rdataset: " << done << "/" << total << std::flush;
    if (done == total) std::cerr << "\n";
  };
  const DatasetManifest manifest = build_dataset(config, c.out, options);
  const fs::path manifest_path = fs::path(c.out) / "manifest.json";
  std::cout << "dataset: " << manifest.entries.size() << " entries, manifest sha256 "
            << io::sha256_file(manifest_path) << " -> " << manifest_path.string() << "\n";
  return kExitOk;
}

int run_eval(Common& c, const std::string& dataset, const std::string& classifier) {
  ProtocolOptions options;
  if (classifier == "knn") options.kinds = {BaseKind::Knn};
  else if (classifier == "logistic") options.kinds = {BaseKind::Logistic};
  else if (classifier != "all") throw UsageError("--classifier must be knn, logistic or all");

  const fs::path root = dataset.empty() ? fs::path(c.out) : resolve_path(c, dataset);
  const DatasetManifest manifest = read_manifest(root / "manifest.json");
  if (!manifest.complete) throw Error(Errc::IoError, "dataset at " + root.string() + " is incomplete; rerun `dataset`");
  const MetricsReport report = evaluate_protocol(manifest, root, options);

  write_resolved(c, "eval", {{"dataset", root.generic_string()}, {"classifier", classifier}});
  io::write_text(fs::path(c.out) / "report.csv", report.to_csv());
  io::write_text(fs::path(c.out) / "report.txt", report.to_table());
  std::cout << report.to_table();
  return kExitOk;
}

void inspect_manifest(const DatasetManifest& m, const fs::path& root, bool verify) {
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& e : m.entries) ++counts[static_cast<int>(e.split)];
  std::cout << "manifest: schema_version=" << m.schema_version
            << " representation=" << representation_name(m.config.representation)
            << " complete=" << (m.complete ? "true" : "false") << "\n"
            << "entries: " << m.entries.size() << " of " << m.config.key_count() << " planned\n"
            << "splits: train=" << counts[0] << " validation=" << counts[1] << " test=" << counts[2] << "\n";
  if (verify) {
    verify_manifest(m, root);
    std::cout << "verify: all artifact hashes match\n";
  }
}

int run_inspect(Common& c, const std::string& target, bool verify) {
  fs::path path = resolve_path(c, target);
  if (fs::is_directory(path)) path /= "manifest.json";
  if (!fs::exists(path)) throw Error(Errc::IoError, "nothing to inspect at " + path.string());
  const std::string ext = path.extension().string();
  if (path.filename() == "manifest.json") {
    inspect_manifest(read_manifest(path), path.parent_path(), verify);
  } else if (ext == ".pgm") {
    const FitnessMap map = io::read_pgm(path);
    std::cout << "pgm: resolution=" << map.resolution() << " occupied_pixels=" << map.occupied_count(0) << "\n";
  } else if (ext == ".csv") {
    const std::string text = io::read_text(path);
    std::size_t lines = 0;
    for (char ch : text) lines += ch == '\n';
    const std::string header = text.substr(0, text.find('\n'));
    const std::size_t cols = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    std::cout << "csv: rows=" << (lines > 0 ? lines - 1 : 0) << " columns=" << cols << "\n";
  } else if (ext == ".json" || ext == ".f32" || ext == ".u8") {
    fs::path sidecar = path;
    while (sidecar.has_extension()) sidecar.replace_extension();
    sidecar += ".json";
    const json doc = json::parse(io::read_text(sidecar));
    if (doc.contains("schema_version")) inspect_manifest(parse_manifest(doc.dump()), path.parent_path(), verify);
    else std::cout << doc.dump(2) << "\n";
  } else {
    throw Error(Errc::IoError, "unrecognised artifact type: " + path.string());
  }
  write_resolved(c, "inspect", {{"path", path.generic_string()}, {"verify", verify}});
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Fitness-landscape representations, datasets and property-classification evaluation"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Common common;
  KeyOptions key;

  auto* sample = app.add_subcommand("sample", "Draw a seeded Latin hypercube sample and evaluate it");
  add_common(sample, common);
  add_key(sample, key, "Sample size (default 250*d)");

  std::string method = "pca", format = "auto";
  std::size_t resolution = kMapResolution;
  auto* map = app.add_subcommand("map", "Build a fitness map from a fresh sample");
  add_common(map, common);
  add_key(map, key, "Sample size (default 1000)");
  map->add_option("--method", method, "pca | pcafunc | mc | rmc")->capture_default_str();
  map->add_option("--format", format, "auto | pgm | tensor (auto: pgm, or tensor for mc)")->capture_default_str();
  map->add_option("--resolution", resolution, "Raster side length")->capture_default_str();

  CloudConfig cloud_config;
  std::string p_text = "inf";
  auto* cloud = app.add_subcommand("cloud", "Build a fitness-cloud embedding from a fresh sample");
  add_common(cloud, common);
  add_key(cloud, key, "Sample size (default 500)");
  cloud->add_option("--k", cloud_config.k, "Neighbourhood size including the point itself")->capture_default_str();
  cloud->add_option("--p", p_text, "Distance norm: 1 | 2 | inf")->capture_default_str();
  cloud->add_option("--delta-max", cloud_config.delta_max, "Neighbour distance cap")->capture_default_str();
  cloud->add_option("--d-max", cloud_config.d_max, "Padded dimension of the embedding")->capture_default_str();

  auto* features = app.add_subcommand("features", "Compute the ELA feature vector of a fresh sample (CSV)");
  add_common(features, common);
  add_key(features, key, "Sample size (default 250*d)");

  DatasetOptions ds;
  auto* dataset = app.add_subcommand("dataset", "Build a dataset and its manifest (defaults: desk configuration)");
  add_common(dataset, common);
  dataset->add_option("--representation", ds.representation, "map_pca | map_pcafunc | map_mc | map_rmc | cloud | ela")
      ->capture_default_str();
  dataset->add_option("--suite", ds.suite, "Functions, e.g. F1,F3 (default: all six)")->delimiter(',');
  dataset->add_option("--dims", ds.dims, "Dimensions (default 2,3)")->delimiter(',');
  dataset->add_option("--instances", ds.instances, "Instance range LO,HI (default 1,60)")->delimiter(',');
  dataset->add_option("--reps", ds.repetitions, "Repetitions per instance (default 2)");
  dataset->add_option("--n", ds.n, "Sample size (0 = representation default)");
  dataset->add_option("--jobs", ds.jobs, "Worker threads; output is independent of this")->capture_default_str();
  dataset->add_option("--k", ds.k, "Cloud neighbourhood size")->capture_default_str();
  dataset->add_option("--p", ds.p, "Cloud norm: 1 | 2 | inf")->capture_default_str();
  dataset->add_option("--delta-max", ds.delta_max, "Cloud neighbour distance cap")->capture_default_str();

  std::string eval_dataset, classifier = "all";
  auto* eval = app.add_subcommand("eval", "Run the train/validation/test protocol and write report.csv/report.txt");
  add_common(eval, common);
  eval->add_option("--dataset", eval_dataset, "Dataset directory (default: --out)");
  eval->add_option("--classifier", classifier, "knn | logistic | all")->capture_default_str();

  std::string inspect_path = ".";
  bool verify = false;
  auto* inspect = app.add_subcommand("inspect", "Summarise a manifest or artifact");
  add_common(inspect, common);
  inspect->add_option("--path", inspect_path, "Dataset directory, manifest or artifact")->capture_default_str();
  inspect->add_flag("--verify", verify, "Recompute artifact hashes of a manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* active = &app;
    for (const auto* s : app.get_subcommands()) active = s;
    std::cerr << active->help();
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (!common.config.empty()) apply_config_file(active, common.config);
    resolve_seed(active, common);
    if (active != inspect && active != eval) fs::create_directories(common.out);
    else if (!fs::exists(common.out)) fs::create_directories(common.out);

    if (active == sample) return run_sample(common, key);
    if (active == map) return run_map(common, key, method, format, resolution);
    if (active == cloud) return run_cloud(common, key, cloud_config, p_text);
    if (active == features) return run_features(common, key);
    if (active == dataset) return run_dataset(common, ds);
    if (active == eval) return run_eval(common, eval_dataset, classifier);
    return run_inspect(common, inspect_path, verify);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const Error& e) {
    // Unknown enum spellings in flags are usage errors; everything else is runtime.
    if (e.code() == Errc::UnsupportedFunction || e.code() == Errc::InvalidNorm || e.code() == Errc::InvalidArgument) {
      std::cerr << "error: " << e.what() << "\n\n" << active->help();
      return kExitUsage;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
