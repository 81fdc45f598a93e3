#include "flylsh/data.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <numeric>

namespace flylsh::data {

namespace {

float read_f32_le(const std::uint8_t* p) {
  std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                    (static_cast<std::uint32_t>(p[2]) << 16) |
                    (static_cast<std::uint32_t>(p[3]) << 24);
  float f;
  std::memcpy(&f, &u, 4);
  return f;
}

std::int32_t read_i32_le(const std::uint8_t* p) {
  std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                    (static_cast<std::uint32_t>(p[2]) << 16) |
                    (static_cast<std::uint32_t>(p[3]) << 24);
  std::int32_t v;
  std::memcpy(&v, &u, 4);
  return v;
}

std::uint32_t read_u32_be(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

float parse_float_token(std::string_view token, std::size_t line_no) {
  float value = 0.0f;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" +
                      std::string(token) + "' as a number");
  }
  return value;
}

}  // namespace

std::string to_string(Format format) {
  switch (format) {
    case Format::fvecs: return "fvecs";
    case Format::idx: return "idx";
    case Format::text: return "text";
    case Format::csv: return "csv";
    case Format::random: return "random";
  }
  throw ParameterError("to_string: unknown data format");
}

Format format_from_string(const std::string& name) {
  if (name == "fvecs") return Format::fvecs;
  if (name == "idx") return Format::idx;
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "random") return Format::random;
  throw ConfigError("unknown data format: " + name);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open file for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + path);
}

bool is_gzip(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> bytes) {
  z_stream strm{};
  if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw FormatError("gzip: deflateInit2 failed");
  }
  std::vector<std::uint8_t> out(deflateBound(&strm, bytes.size()));
  strm.next_in = const_cast<Bytef*>(bytes.data());
  strm.avail_in = static_cast<uInt>(bytes.size());
  strm.next_out = out.data();
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&strm, Z_FINISH);
  deflateEnd(&strm);
  if (rc != Z_STREAM_END) throw FormatError("gzip: deflate failed");
  out.resize(out.size() - strm.avail_out);
  return out;
}

std::vector<std::uint8_t> gzip_decompress(std::span<const std::uint8_t> bytes) {
  z_stream strm{};
  if (inflateInit2(&strm, 15 + 32) != Z_OK) throw FormatError("gzip: inflateInit2 failed");
  std::vector<std::uint8_t> out;
  out.resize(std::max<std::size_t>(bytes.size() * 4, 1 << 16));
  strm.next_in = const_cast<Bytef*>(bytes.data());
  strm.avail_in = static_cast<uInt>(bytes.size());
  std::size_t written = 0;
  for (;;) {
    strm.next_out = out.data() + written;
    strm.avail_out = static_cast<uInt>(out.size() - written);
    const int rc = inflate(&strm, Z_NO_FLUSH);
    written = out.size() - strm.avail_out;
    if (rc == Z_STREAM_END) break;
    if (rc == Z_OK || rc == Z_BUF_ERROR) {
      if (strm.avail_out == 0) {
        out.resize(out.size() * 2);
        continue;
      }
      if (rc == Z_BUF_ERROR) {
        inflateEnd(&strm);
        throw FormatError("gzip: truncated stream");
      }
      continue;
    }
    inflateEnd(&strm);
    throw FormatError("gzip: inflate failed");
  }
  inflateEnd(&strm);
  out.resize(written);
  return out;
}

std::vector<std::vector<float>> parse_fvecs(std::span<const std::uint8_t> bytes) {
  std::vector<std::vector<float>> records;
  std::size_t off = 0;
  while (off < bytes.size()) {
    if (off + 4 > bytes.size()) {
      throw FormatError("fvecs: truncated record header at byte " + std::to_string(off));
    }
    const std::int32_t dim = read_i32_le(bytes.data() + off);
    if (dim <= 0) {
      throw FormatError("fvecs: non-positive dimension at byte " + std::to_string(off));
    }
    const std::size_t need = 4 + 4 * static_cast<std::size_t>(dim);
    if (off + need > bytes.size()) {
      throw FormatError("fvecs: truncated record at byte " + std::to_string(off));
    }
    std::vector<float> rec(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < rec.size(); ++i) {
      rec[i] = read_f32_le(bytes.data() + off + 4 + 4 * i);
    }
    records.push_back(std::move(rec));
    off += need;
  }
  return records;
}

std::vector<std::uint8_t> encode_fvecs(const std::vector<std::vector<float>>& records) {
  std::vector<std::uint8_t> out;
  for (const auto& rec : records) {
    const auto dim = static_cast<std::int32_t>(rec.size());
    std::uint32_t u;
    std::memcpy(&u, &dim, 4);
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(u >> (8 * b)));
    for (float v : rec) {
      std::uint32_t fu;
      std::memcpy(&fu, &v, 4);
      for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(fu >> (8 * b)));
    }
  }
  return out;
}

std::vector<std::vector<float>> parse_idx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw FormatError("idx: file too short for magic");
  if (bytes[0] != 0 || bytes[1] != 0) throw FormatError("idx: bad magic");
  if (bytes[2] != 0x08) throw FormatError("idx: only unsigned-byte data is supported");
  const std::size_t ndims = bytes[3];
  if (ndims < 2) throw FormatError("idx: need at least two dimensions (items x features)");
  if (bytes.size() < 4 + 4 * ndims) throw FormatError("idx: truncated dimension header");
  std::vector<std::size_t> dims(ndims);
  for (std::size_t i = 0; i < ndims; ++i) dims[i] = read_u32_be(bytes.data() + 4 + 4 * i);
  const std::size_t n = dims[0];
  std::size_t d = 1;
  for (std::size_t i = 1; i < ndims; ++i) d *= dims[i];
  const std::size_t off = 4 + 4 * ndims;
  if (bytes.size() != off + n * d) {
    throw FormatError("idx: payload size mismatch at byte " + std::to_string(bytes.size()));
  }
  std::vector<std::vector<float>> records(n);
  for (std::size_t i = 0; i < n; ++i) {
    records[i].resize(d);
    for (std::size_t c = 0; c < d; ++c) {
      records[i][c] = static_cast<float>(bytes[off + i * d + c]) / 255.0f;
    }
  }
  return records;
}

std::vector<std::vector<float>> parse_text(std::span<const std::uint8_t> bytes) {
  // GloVe-style: one record per line, leading token (the word) dropped.
  std::vector<std::vector<float>> records;
  std::string_view all(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < all.size()) {
    std::size_t nl = all.find('\n', pos);
    if (nl == std::string_view::npos) nl = all.size();
    const std::string_view line = all.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) {
      throw FormatError("text line " + std::to_string(line_no) + ": no values after the token");
    }
    std::vector<float> rec;
    rec.reserve(tokens.size() - 1);
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      rec.push_back(parse_float_token(tokens[t], line_no));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<std::vector<float>> parse_csv(std::span<const std::uint8_t> bytes) {
  std::vector<std::vector<float>> records;
  std::string_view all(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < all.size()) {
    std::size_t nl = all.find('\n', pos);
    if (nl == std::string_view::npos) nl = all.size();
    std::string_view line = all.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<float> rec;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) comma = line.size();
      std::string_view tok = line.substr(start, comma - start);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      rec.push_back(parse_float_token(tok, line_no));
      start = comma + 1;
      if (comma == line.size()) break;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_fvecs(const Dataset& dataset, const std::string& path) {
  std::vector<std::vector<float>> records(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    records[i].reserve(dataset.dim);
    for (double v : dataset.items[i].values) records[i].push_back(static_cast<float>(v));
  }
  auto bytes = encode_fvecs(records);
  if (path.size() > 3 && path.substr(path.size() - 3) == ".gz") {
    bytes = gzip_compress(bytes);
  }
  write_file(path, bytes);
}

Dataset gen_random(std::size_t n, std::size_t d, RngSeed seed) {
  if (n == 0 || d == 0) throw ParameterError("gen_random: n and d must be positive");
  Dataset dataset;
  dataset.name = "random";
  dataset.dim = d;
  dataset.items.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, StreamDomain::random_data, i);
    auto& values = dataset.items[i].values;
    values.resize(d);
    for (double& v : values) v = rng.uniform01();
  }
  return dataset;
}

Dataset load(const DatasetSpec& spec) {
  Dataset dataset;
  if (spec.format == Format::random) {
    dataset = gen_random(spec.random_n, spec.random_d, RngSeed{spec.random_seed});
  } else {
    auto bytes = read_file(spec.source);
    if (is_gzip(bytes)) bytes = gzip_decompress(bytes);
    std::vector<std::vector<float>> records;
    switch (spec.format) {
      case Format::fvecs: records = parse_fvecs(bytes); break;
      case Format::idx: records = parse_idx(bytes); break;
      case Format::text: records = parse_text(bytes); break;
      case Format::csv: records = parse_csv(bytes); break;
      case Format::random: break;
    }
    if (records.empty()) throw FormatError(spec.source + ": no records");
    dataset.dim = records[0].size();
    dataset.items.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].size() != dataset.dim) {
        throw FormatError(spec.source + ": record " + std::to_string(i) +
                          " has dimension " + std::to_string(records[i].size()) +
                          ", expected " + std::to_string(dataset.dim));
      }
      Vector v;
      v.values.assign(records[i].begin(), records[i].end());
      dataset.items.push_back(std::move(v));
    }
  }
  dataset.name = spec.name.empty() ? to_string(spec.format) : spec.name;

  if (spec.expected_dim && dataset.dim != *spec.expected_dim) {
    throw FormatError(dataset.name + ": dimension " + std::to_string(dataset.dim) +
                      " does not match expected " + std::to_string(*spec.expected_dim));
  }
  if (spec.shuffle_seed) {
    std::vector<std::uint32_t> order(dataset.size());
    std::iota(order.begin(), order.end(), 0u);
    Rng rng = Rng::stream(RngSeed{*spec.shuffle_seed}, StreamDomain::misc, 0);
    rng.shuffle(order);
    std::vector<Vector> shuffled;
    shuffled.reserve(dataset.size());
    for (std::uint32_t idx : order) shuffled.push_back(std::move(dataset.items[idx]));
    dataset.items = std::move(shuffled);
  }
  if (spec.limit && dataset.size() > *spec.limit) {
    dataset.items.resize(*spec.limit);
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    validate_finite(dataset.items[i], dataset.name + ": item " + std::to_string(i));
  }
  if (spec.center) center_dataset(dataset, spec.center_mode);
  return dataset;
}

}  // namespace flylsh::data
