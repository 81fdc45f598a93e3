#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flylsh/rng.hpp"
#include "flylsh/types.hpp"

namespace flylsh::data {

enum class Format { fvecs, idx, text, csv, random };

std::string to_string(Format format);
Format format_from_string(const std::string& name);

/// Where a dataset comes from and how to preprocess it. Gzip-compressed
/// files are detected by their magic bytes for every format.
struct DatasetSpec {
  std::string name;
  std::string source;              ///< file path; unused for Format::random
  Format format = Format::random;
  std::optional<std::size_t> limit;          ///< keep the first `limit` records
  std::optional<std::uint64_t> shuffle_seed;  ///< seeded shuffle before truncation
  std::optional<std::size_t> expected_dim;
  bool center = true;
  CenterMode center_mode = CenterMode::per_vector;
  // Format::random parameters
  std::size_t random_n = 10000;
  std::size_t random_d = 128;
  std::uint64_t random_seed = 1;
};

/// Loads, optionally shuffles/truncates, validates and centers a dataset.
Dataset load(const DatasetSpec& spec);

/// n vectors of d i.i.d. U(0,1) entries (before any centering).
Dataset gen_random(std::size_t n, std::size_t d, RngSeed seed);

// Raw record codecs (used by load() and by fixtures/round-trip checks).
std::vector<std::vector<float>> parse_fvecs(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_fvecs(const std::vector<std::vector<float>>& records);
std::vector<std::vector<float>> parse_idx(std::span<const std::uint8_t> bytes);
std::vector<std::vector<float>> parse_text(std::span<const std::uint8_t> bytes);
std::vector<std::vector<float>> parse_csv(std::span<const std::uint8_t> bytes);

/// Writes the dataset's values as fvecs records (float32).
void write_fvecs(const Dataset& dataset, const std::string& path);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

bool is_gzip(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> gzip_decompress(std::span<const std::uint8_t> bytes);

}  // namespace flylsh::data
