#include <cmath>
#include <cstring>

#include "helpers.hpp"
#include "landscape/io.hpp"

using namespace landscape;
namespace fs = std::filesystem;

TEST_CASE("shortest round-trip number text") {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double v = rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.uniform(-20.0, 20.0));
    CHECK(io::parse_double(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.1) == "0.1");
  CHECK_THROWS_CODE(io::parse_double("1.5x"), Errc::IoError);
}

TEST_CASE("SHA-256 known vectors") {
  const std::string abc = "abc";
  CHECK(io::sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size())) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex({}) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("atomic file writes create parent directories") {
  testing::TempDir dir("io_write");
  const fs::path p = dir.path() / "a" / "b" / "file.txt";
  io::write_text(p, "hello\n");
  CHECK(io::read_text(p) == "hello\n");
  io::write_text(p, "again");
  CHECK(io::read_text(p) == "again");
  CHECK(std::distance(fs::directory_iterator(p.parent_path()), fs::directory_iterator{}) == 1);
  CHECK_THROWS_CODE(io::read_bytes(dir.path() / "missing"), Errc::IoError);
}

TEST_CASE("problem reference JSON") {
  const ProblemRef ref{FunctionId::F20, 3, 41, 1};
  const auto j = io::to_json(ref);
  CHECK(j.dump() == R"({"function":"F20","dim":3,"instance":41,"repetition":1})");
  CHECK(io::problem_ref_from_json(j) == ref);
  CHECK_THROWS_CODE(io::problem_ref_from_json(io::json{{"function", "F3"}}), Errc::IoError);
}

TEST_CASE("PGM encoding") {
  FitnessMap m(4, 1, MapMethod::Pca);
  m.set(0, 0, 0, 0.0);
  m.set(1, 2, 0, 0.5);
  m.set(3, 3, 0, 1.0);
  const auto bytes = io::encode_pgm(m);
  const std::string header = "P5\n4 4\n255\n";
  REQUIRE(bytes.size() == header.size() + 16);
  CHECK(std::memcmp(bytes.data(), header.data(), header.size()) == 0);
  const std::uint8_t* px = bytes.data() + header.size();
  CHECK(px[0] == 0);
  CHECK(px[1 * 4 + 2] == 127);
  CHECK(px[15] == 254);
  CHECK(px[5] == 255);
  const FitnessMap back = io::decode_pgm(bytes);
  CHECK(back.occupied_count(0) == 3);
  CHECK(back.occupied(1, 2));
  CHECK(back.value(1, 2) == doctest::Approx(127.0 / 254.0));
  CHECK(!back.occupied(0, 1));
  CHECK(io::encode_pgm(back) == bytes);
  CHECK_THROWS_CODE(io::decode_pgm(std::vector<std::uint8_t>{'P', '2'}), Errc::IoError);
}

TEST_CASE("float32 tensors") {
  const std::vector<double> v{0.0, -1.5, 3.25, 1e-3};
  const auto bytes = io::encode_f32(v);
  CHECK(bytes.size() == 16);
  CHECK(bytes[4] == 0x00);
  CHECK(bytes[7] == 0xBF);  // -1.5f = 0xBFC00000, little-endian
  const auto back = io::decode_f32(bytes);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == static_cast<float>(v[i]));
}

TEST_CASE("map and cloud tensor round trips") {
  testing::TempDir dir("io_tensor");
  const Sample s = draw_sample(make_problem(FunctionId::F3, 4, 1), 300, 5);
  const FitnessMap mc = build_map(s, MapMethod::Mc);
  const auto files = io::write_map_tensor(dir.path() / "m", mc, io::FillPolicy::White, s.problem_ref, s.seed);
  REQUIRE(files.files.size() == 3);
  CHECK(files.files[0].filename() == "m.f32");
  CHECK(files.files[2].filename() == "m.json");
  CHECK(fs::file_size(files.files[0]) == 224 * 224 * 45 * 4);
  const FitnessMap back = io::read_map_tensor(dir.path() / "m");
  CHECK(back.channels() == 45);
  CHECK(back.occupied_channel_count() == 6);
  for (std::size_t i = 0; i < mc.values().size(); ++i) {
    REQUIRE(back.occupancy()[i] == mc.occupancy()[i]);
    REQUIRE(back.values()[i] == static_cast<double>(static_cast<float>(mc.values()[i])));
  }

  const CloudConfig config;
  const CloudEmbedding cloud = embed_cloud(s, config);
  io::write_cloud_tensor(dir.path() / "c", cloud, config, s.problem_ref, s.seed);
  const Matrix e = io::read_cloud_tensor(dir.path() / "c");
  REQUIRE(e.rows() == 300);
  REQUIRE(e.cols() == 65);
  for (std::size_t i = 0; i < e.data().size(); ++i)
    REQUIRE(e.data()[i] == static_cast<double>(static_cast<float>(cloud.embedded.data()[i])));
  const auto sidecar = io::json::parse(io::read_text(dir.path() / "c.json"));
  CHECK(sidecar.at("width").get<int>() == 65);
}

TEST_CASE("feature CSV round trip with missing cells") {
  const Sample s = draw_sample(make_problem(FunctionId::F8, 2, 3), 500, 5);
  io::FeatureRow row{s.problem_ref, feature_vector(s)};
  row.features.values[3] = std::nullopt;
  const std::vector<io::FeatureRow> rows{row, row};
  const std::string text = io::features_csv(rows);
  CHECK(text.rfind("function,dim,instance,repetition,meta.lin_simple.adj_r2,", 0) == 0);
  const auto parsed = io::parse_features_csv(text);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].ref == row.ref);
  CHECK(parsed[0].features == row.features);
  CHECK(io::features_csv(parsed) == text);
}

TEST_CASE("sample CSV") {
  const Sample s = draw_sample(make_problem(FunctionId::F1, 2, 0), 10, 1);
  const std::string text = io::sample_csv(s);
  CHECK(text.rfind("x1,x2,y\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);
  CHECK(io::sample_sidecar(s).at("n").get<int>() == 10);
}
