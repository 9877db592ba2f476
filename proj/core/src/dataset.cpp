#include "rbpdn/dataset.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "dataset binary IO assumes a little-endian host");

namespace rbpdn {

namespace {

// Uniform double in the open interval (0, 1) from the raw engine output.
// Avoids std::uniform_real_distribution so streams are identical across
// standard library implementations.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

constexpr char kMagic[4] = {'C', 'S', 'C', 'D'};

template <typename T>
void write_raw(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw std::runtime_error("dataset: truncated file");
  return value;
}

}  // namespace

void Dataset::validate() const {
  if (W.rows() != y.size()) {
    throw std::invalid_argument("dataset: label count does not match rows");
  }
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    if (std::abs(W.row(i).norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("dataset: row " + std::to_string(i) +
                                  " is not unit-normalized");
    }
    if (y(i) != 1.0 && y(i) != -1.0) {
      throw std::invalid_argument("dataset: label " + std::to_string(i) +
                                  " is not in {-1, +1}");
    }
  }
}

Dataset generate_dataset(Eigen::Index m, Eigen::Index dim,
                         std::uint64_t seed) {
  if (m < 1 || dim < 1) {
    throw std::invalid_argument("generate_dataset: m and dim must be >= 1");
  }
  std::mt19937_64 rng(seed);
  Dataset data;
  data.W.resize(m, dim);
  data.y.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) data.W(i, j) = uniform_open(rng);
    data.W.row(i) /= data.W.row(i).norm();
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    data.y(i) = (rng() & 1u) ? 1.0 : -1.0;
  }
  return data;
}

void save_dataset_binary(const Dataset& data, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("dataset: cannot open " + path);
  os.write(kMagic, 4);
  write_raw<std::uint32_t>(os, 1u);
  write_raw<std::uint64_t>(os, static_cast<std::uint64_t>(data.samples()));
  write_raw<std::uint64_t>(os, static_cast<std::uint64_t>(data.dim()));
  for (Eigen::Index i = 0; i < data.samples(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      write_raw<double>(os, data.W(i, j));
    }
  }
  for (Eigen::Index i = 0; i < data.samples(); ++i) {
    write_raw<std::int8_t>(os, data.y(i) > 0 ? 1 : -1);
  }
  if (!os) throw std::runtime_error("dataset: write failed for " + path);
}

Dataset load_dataset_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("dataset: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("dataset: bad magic in " + path);
  }
  const auto version = read_raw<std::uint32_t>(is);
  if (version != 1u) {
    throw std::runtime_error("dataset: unsupported version in " + path);
  }
  const auto m = static_cast<Eigen::Index>(read_raw<std::uint64_t>(is));
  const auto dim = static_cast<Eigen::Index>(read_raw<std::uint64_t>(is));
  if (m < 1 || dim < 1) throw std::runtime_error("dataset: bad shape");
  Dataset data;
  data.W.resize(m, dim);
  data.y.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      data.W(i, j) = read_raw<double>(is);
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    data.y(i) = static_cast<double>(read_raw<std::int8_t>(is));
  }
  return data;
}

void save_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("dataset: cannot open " + path);
  os << "y";
  for (Eigen::Index j = 0; j < data.dim(); ++j) os << ",w" << (j + 1);
  os << "\n";
  char buf[32];
  for (Eigen::Index i = 0; i < data.samples(); ++i) {
    os << (data.y(i) > 0 ? 1 : -1);
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.W(i, j));
      os << ',' << buf;
    }
    os << "\n";
  }
  if (!os) throw std::runtime_error("dataset: write failed for " + path);
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("dataset: cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("dataset: empty CSV");
  Eigen::Index dim = -1;  // columns minus the label
  {
    std::stringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) ++dim;
  }
  if (dim < 1) throw std::runtime_error("dataset: CSV header has no features");
  std::vector<double> labels;
  std::vector<double> features;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    Eigen::Index col = 0;
    while (std::getline(row, field, ',')) {
      const double value = std::stod(field);
      if (col == 0) labels.push_back(value); else features.push_back(value);
      ++col;
    }
    if (col != dim + 1) {
      throw std::runtime_error("dataset: ragged CSV row");
    }
  }
  const auto m = static_cast<Eigen::Index>(labels.size());
  if (m < 1) throw std::runtime_error("dataset: CSV has no rows");
  Dataset data;
  data.W.resize(m, dim);
  data.y.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    data.y(i) = labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < dim; ++j) {
      data.W(i, j) = features[static_cast<std::size_t>(i * dim + j)];
    }
  }
  return data;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("dataset: cannot open " + path);
  char magic[4] = {0, 0, 0, 0};
  is.read(magic, 4);
  is.close();
  if (std::memcmp(magic, kMagic, 4) == 0) return load_dataset_binary(path);
  return load_dataset_csv(path);
}

}  // namespace rbpdn
