#pragma once

// Data-parallel inner loops shared by the analysis modules.
//
// Every kernel has a scalar reference implementation. Wider variants are
// compiled into separate translation units with their own target flags and
// chosen once at startup from the CPU feature set. All variants must return
// bit-identical results to the scalar reference (see tests/test_kernels.cpp).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace subdyn::kernels {

struct KernelTable {
  std::string_view name;

  // Index of the first i >= from with data[i] == value, or n.
  std::size_t (*find_byte)(const std::uint8_t* data, std::size_t n, std::uint8_t value,
                           std::size_t from);

  // Number of i < n with data[i] == value.
  std::size_t (*count_byte)(const std::uint8_t* data, std::size_t n, std::uint8_t value);

  // First i >= from with a[i] == b[i] (resp. a[i] != b[i]), or n.
  std::size_t (*first_equal)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                             std::size_t from);
  std::size_t (*first_diff)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                            std::size_t from);

  // max over points p < count of the Euclidean norm of Q * v_p, where Q is a
  // rows x dim row-major matrix and the points are stored column-wise:
  // coord c of point p is columns[c * count + p]. Returns 0 for count == 0.
  double (*max_projected_norm)(const double* columns, std::size_t count, std::size_t dim,
                               const double* q, std::size_t rows);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels();

// The table used by the library. Picks the widest supported variant unless
// the environment variable SUBDYN_KERNELS=scalar forces the reference path.
const KernelTable& active_kernels();

}  // namespace subdyn::kernels
