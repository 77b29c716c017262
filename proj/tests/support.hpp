#pragma once

#include "lscd/matrix.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace lscd::test {

/// Gaussian entries; rows are redrawn until nonzero.
inline RowMatrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RowMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    do {
      for (Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
    } while ((m.row(i).array() == 0.0).all());
  }
  return m;
}

/// Same as random_matrix but every value is representable as float32,
/// matching what the store format can hold.
inline RowMatrix random_float_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  RowMatrix m = random_matrix(rows, cols, rng);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<float>(m.data()[i]);
  return m;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("lscd_" + tag + "_" + std::to_string(rd()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace lscd::test
