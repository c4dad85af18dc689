// AVX2 variants. Compiled with -mavx2 only (no FMA) so that the floating
// point kernel performs the same roundings as the scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "subdyn/kernels/kernels.hpp"

namespace subdyn::kernels {
namespace {

inline std::uint32_t eq_mask(const std::uint8_t* p, __m256i needle) {
  const __m256i chunk = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
  return static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(chunk, needle)));
}

inline std::uint32_t pair_eq_mask(const std::uint8_t* a, const std::uint8_t* b) {
  const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a));
  const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b));
  return static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
}

std::size_t find_byte_avx2(const std::uint8_t* data, std::size_t n, std::uint8_t value,
                           std::size_t from) {
  const __m256i needle = _mm256_set1_epi8(static_cast<char>(value));
  std::size_t i = from;
  for (; i + 32 <= n; i += 32) {
    const std::uint32_t mask = eq_mask(data + i, needle);
    if (mask != 0) return i + static_cast<std::size_t>(std::countr_zero(mask));
  }
  for (; i < n; ++i) {
    if (data[i] == value) return i;
  }
  return n;
}

std::size_t count_byte_avx2(const std::uint8_t* data, std::size_t n, std::uint8_t value) {
  const __m256i needle = _mm256_set1_epi8(static_cast<char>(value));
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) total += static_cast<std::size_t>(std::popcount(eq_mask(data + i, needle)));
  for (; i < n; ++i) total += data[i] == value;
  return total;
}

std::size_t first_equal_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                             std::size_t from) {
  std::size_t i = from;
  for (; i + 32 <= n; i += 32) {
    const std::uint32_t mask = pair_eq_mask(a + i, b + i);
    if (mask != 0) return i + static_cast<std::size_t>(std::countr_zero(mask));
  }
  for (; i < n; ++i) {
    if (a[i] == b[i]) return i;
  }
  return n;
}

std::size_t first_diff_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                            std::size_t from) {
  std::size_t i = from;
  for (; i + 32 <= n; i += 32) {
    const std::uint32_t mask = ~pair_eq_mask(a + i, b + i);
    if (mask != 0) return i + static_cast<std::size_t>(std::countr_zero(mask));
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

double max_projected_norm_avx2(const double* columns, std::size_t count, std::size_t dim,
                               const double* q, std::size_t rows) {
  __m256d best = _mm256_setzero_pd();
  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    __m256d norm2 = _mm256_setzero_pd();
    for (std::size_t r = 0; r < rows; ++r) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t c = 0; c < dim; ++c) {
        const __m256d coeff = _mm256_set1_pd(q[r * dim + c]);
        const __m256d coord = _mm256_loadu_pd(columns + c * count + p);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(coeff, coord));
      }
      norm2 = _mm256_add_pd(norm2, _mm256_mul_pd(acc, acc));
    }
    best = _mm256_max_pd(best, norm2);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; p < count; ++p) {
    double norm2 = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += q[r * dim + c] * columns[c * count + p];
      norm2 += acc * acc;
    }
    result = std::max(result, norm2);
  }
  return std::sqrt(result);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2",           find_byte_avx2,  count_byte_avx2,
      first_equal_avx2, first_diff_avx2, max_projected_norm_avx2,
  };
  return table;
}

}  // namespace subdyn::kernels
