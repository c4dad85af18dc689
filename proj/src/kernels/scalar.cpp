#include "subdyn/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace subdyn::kernels {
namespace {

std::size_t find_byte_scalar(const std::uint8_t* data, std::size_t n, std::uint8_t value,
                             std::size_t from) {
  for (std::size_t i = from; i < n; ++i) {
    if (data[i] == value) return i;
  }
  return n;
}

std::size_t count_byte_scalar(const std::uint8_t* data, std::size_t n, std::uint8_t value) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += data[i] == value;
  return total;
}

std::size_t first_equal_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                               std::size_t from) {
  for (std::size_t i = from; i < n; ++i) {
    if (a[i] == b[i]) return i;
  }
  return n;
}

std::size_t first_diff_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                              std::size_t from) {
  for (std::size_t i = from; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

double max_projected_norm_scalar(const double* columns, std::size_t count, std::size_t dim,
                                 const double* q, std::size_t rows) {
  double best = 0.0;
  for (std::size_t p = 0; p < count; ++p) {
    double norm2 = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += q[r * dim + c] * columns[c * count + p];
      norm2 += acc * acc;
    }
    best = std::max(best, norm2);
  }
  return std::sqrt(best);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",           find_byte_scalar,  count_byte_scalar,
      first_equal_scalar, first_diff_scalar, max_projected_norm_scalar,
  };
  return table;
}

}  // namespace subdyn::kernels
