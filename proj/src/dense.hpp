#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smallparts/rational.hpp"

namespace smallparts::detail {

// Truncated products c[k] = sum_{i+j=k} a[i] b[j] for k < out_len.
std::vector<Integer> multiply_schoolbook(std::span<const Integer> a, std::span<const Integer> b,
                                         std::size_t out_len);
std::vector<Integer> multiply_kronecker(std::span<const Integer> a, std::span<const Integer> b,
                                        std::size_t out_len);
// Picks one of the above from operand density.
std::vector<Integer> multiply_dense(std::span<const Integer> a, std::span<const Integer> b,
                                    std::size_t out_len);

}  // namespace smallparts::detail
