#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "flylsh/data.hpp"

using namespace flylsh;
using namespace flylsh::data;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("flylsh_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::uint8_t> idx_fixture() {
  // 3 items of 2x2 ubyte "images"
  std::vector<std::uint8_t> bytes = {0, 0, 0x08, 3};
  auto push_be = [&](std::uint32_t v) {
    bytes.push_back(static_cast<std::uint8_t>(v >> 24));
    bytes.push_back(static_cast<std::uint8_t>(v >> 16));
    bytes.push_back(static_cast<std::uint8_t>(v >> 8));
    bytes.push_back(static_cast<std::uint8_t>(v));
  };
  push_be(3);
  push_be(2);
  push_be(2);
  for (std::uint8_t v : {0, 51, 102, 153, 204, 255, 10, 20, 30, 40, 50, 60}) bytes.push_back(v);
  return bytes;
}

}  // namespace

TEST_CASE("fvecs records round trip") {
  const std::vector<std::vector<float>> records = {{1.5f, -2.25f, 0.0f}, {4.0f, 5.0f, 6.5f}};
  const auto bytes = encode_fvecs(records);
  CHECK(parse_fvecs(bytes) == records);

  SUBCASE("truncated record reports the byte offset") {
    auto cut = bytes;
    cut.resize(bytes.size() - 2);
    CHECK_THROWS_WITH_AS(parse_fvecs(cut), doctest::Contains("byte 16"), FormatError);
  }

  SUBCASE("garbage dimension header") {
    std::vector<std::uint8_t> bad = {0xff, 0xff, 0xff, 0xff};
    CHECK_THROWS_AS(parse_fvecs(bad), FormatError);
  }
}

TEST_CASE("idx (MNIST-style) parsing") {
  const auto bytes = idx_fixture();
  const auto records = parse_idx(bytes);
  CHECK(records.size() == 3);
  CHECK(records[0].size() == 4);
  CHECK(records[0][1] == doctest::Approx(51.0f / 255.0f));
  CHECK(records[1][1] == doctest::Approx(1.0f));
  CHECK(records[2][3] == doctest::Approx(60.0f / 255.0f));

  SUBCASE("bad magic or dtype is rejected") {
    auto bad = bytes;
    bad[2] = 0x0D;
    CHECK_THROWS_AS(parse_idx(bad), FormatError);
  }

  SUBCASE("size mismatch is rejected") {
    auto cut = bytes;
    cut.pop_back();
    CHECK_THROWS_AS(parse_idx(cut), FormatError);
  }
}

TEST_CASE("text (GloVe-style) parsing drops the leading token") {
  const std::string text = "apple 0.5 -1.0 2.0\nbanana 1.0 2.0 3.0\n\n";
  const auto records =
      parse_text({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  CHECK(records.size() == 2);
  CHECK(records[0] == std::vector<float>{0.5f, -1.0f, 2.0f});

  const std::string bad = "apple 0.5 oops\n";
  CHECK_THROWS_AS(parse_text({reinterpret_cast<const std::uint8_t*>(bad.data()), bad.size()}),
                  FormatError);
}

TEST_CASE("csv parsing") {
  const std::string csv = "1.0,2.0,3.0\r\n4.5, 5.5 ,6.5\n";
  const auto records = parse_csv({reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()});
  CHECK(records.size() == 2);
  CHECK(records[0] == std::vector<float>{1.0f, 2.0f, 3.0f});
  CHECK(records[1][1] == doctest::Approx(5.5f));

  const std::string bad = "1.0,two,3.0\n";
  CHECK_THROWS_WITH_AS(parse_csv({reinterpret_cast<const std::uint8_t*>(bad.data()), bad.size()}),
                       doctest::Contains("line 1"), FormatError);
}

TEST_CASE("gzip round trip and detection") {
  std::vector<std::uint8_t> payload(1000);
  for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = static_cast<std::uint8_t>(i % 7);
  const auto compressed = gzip_compress(payload);
  CHECK(is_gzip(compressed));
  CHECK_FALSE(is_gzip(payload));
  CHECK(gzip_decompress(compressed) == payload);
}

TEST_CASE("load applies expected_dim, limit, shuffle and centering") {
  TempDir dir;
  const std::vector<std::vector<float>> records = {
      {1.0f, 2.0f}, {3.0f, 4.0f}, {5.0f, 6.0f}, {7.0f, 8.0f}};
  write_file(dir.file("a.fvecs"), encode_fvecs(records));

  DatasetSpec spec;
  spec.name = "fixture";
  spec.source = dir.file("a.fvecs");
  spec.format = Format::fvecs;

  SUBCASE("plain load centers per vector by default") {
    const Dataset ds = load(spec);
    CHECK(ds.name == "fixture");
    CHECK(ds.dim == 2);
    CHECK(ds.size() == 4);
    CHECK(ds.centered);
    for (const auto& item : ds.items) CHECK(is_zero_sum(item));
  }

  SUBCASE("loading twice is bit-identical") {
    const Dataset a = load(spec);
    const Dataset b = load(spec);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.items[i].values == b.items[i].values);
  }

  SUBCASE("limit keeps the first records") {
    spec.limit = 2;
    spec.center = false;
    const Dataset ds = load(spec);
    CHECK(ds.size() == 2);
    CHECK(ds.items[0].values[0] == doctest::Approx(1.0));
    CHECK(ds.items[1].values[0] == doctest::Approx(3.0));
  }

  SUBCASE("seeded shuffle before truncation is reproducible") {
    spec.shuffle_seed = 99;
    spec.limit = 3;
    spec.center = false;
    const Dataset a = load(spec);
    const Dataset b = load(spec);
    CHECK(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.items[i].values == b.items[i].values);
  }

  SUBCASE("expected_dim mismatch is a format error") {
    spec.expected_dim = 3;
    CHECK_THROWS_AS(load(spec), FormatError);
  }

  SUBCASE("missing file is a format error") {
    spec.source = dir.file("missing.fvecs");
    CHECK_THROWS_AS(load(spec), FormatError);
  }

  SUBCASE("gzip-compressed variant loads identically") {
    const auto plain = load(spec);
    write_file(dir.file("a.fvecs.gz"), gzip_compress(encode_fvecs(records)));
    spec.source = dir.file("a.fvecs.gz");
    const auto gz = load(spec);
    for (std::size_t i = 0; i < plain.size(); ++i) {
      CHECK(gz.items[i].values == plain.items[i].values);
    }
  }
}

TEST_CASE("write_fvecs then load round trips") {
  TempDir dir;
  Dataset ds = gen_random(20, 6, RngSeed{3});
  // keep raw float-representable values by writing before centering
  write_fvecs(ds, dir.file("r.fvecs"));

  DatasetSpec spec;
  spec.source = dir.file("r.fvecs");
  spec.format = Format::fvecs;
  spec.center = false;
  const Dataset back = load(spec);
  CHECK(back.size() == 20);
  for (std::size_t i = 0; i < back.size(); ++i) {
    for (std::size_t c = 0; c < 6; ++c) {
      CHECK(back.items[i].values[c] ==
            doctest::Approx(static_cast<float>(ds.items[i].values[c])));
    }
  }

  // byte-exact file round trip: write(load(f)) == f
  Dataset reread = back;
  write_fvecs(reread, dir.file("r2.fvecs"));
  CHECK(read_file(dir.file("r.fvecs")) == read_file(dir.file("r2.fvecs")));
}

TEST_CASE("gen_random is deterministic with U(0,1) entries") {
  const Dataset a = gen_random(8000, 128, RngSeed{11});
  const Dataset b = gen_random(8000, 128, RngSeed{11});
  for (std::size_t i = 0; i < 50; ++i) CHECK(a.items[i].values == b.items[i].values);

  double sum = 0.0;
  bool in_range = true;
  for (const auto& item : a.items) {
    for (double v : item.values) {
      in_range = in_range && v >= 0.0 && v < 1.0;
      sum += v;
    }
  }
  CHECK(in_range);
  const double mean = sum / (8000.0 * 128.0);
  CHECK(mean >= 0.49);
  CHECK(mean <= 0.51);

  CHECK_THROWS_AS(gen_random(0, 4, RngSeed{1}), ParameterError);
}

TEST_CASE("random spec goes through the same pipeline") {
  DatasetSpec spec;
  spec.format = Format::random;
  spec.random_n = 50;
  spec.random_d = 16;
  spec.random_seed = 4;
  const Dataset ds = load(spec);
  CHECK(ds.name == "random");
  CHECK(ds.size() == 50);
  CHECK(ds.dim == 16);
  CHECK(ds.centered);
  for (const auto& item : ds.items) CHECK(is_zero_sum(item));
}
