#include "dense.hpp"

#include <gmp.h>

#include <algorithm>
#include <bit>
#include <cstdint>

namespace smallparts::detail {
namespace {

std::size_t count_nonzero(std::span<const Integer> v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; }));
}

std::size_t max_bits(std::span<const Integer> v) {
  std::size_t bits = 0;
  for (const auto& x : v) {
    if (sgn(x) != 0) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  return bits;
}

// Writes |v[i]| into limb slot i of `pos` or `neg` according to sign, so
// that pos - neg = sum v[i] 2^{64 k i}.
void pack(std::span<const Integer> v, std::size_t limbs_per_slot, mpz_ptr pos, mpz_ptr neg) {
  const std::size_t total = v.size() * limbs_per_slot;
  mp_limb_t* p = mpz_limbs_write(pos, static_cast<mp_size_t>(total));
  mp_limb_t* n = mpz_limbs_write(neg, static_cast<mp_size_t>(total));
  std::fill(p, p + total, mp_limb_t{0});
  std::fill(n, n + total, mp_limb_t{0});
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int s = sgn(v[i]);
    if (s == 0) continue;
    const mpz_srcptr x = v[i].get_mpz_t();
    const mp_limb_t* src = mpz_limbs_read(x);
    const std::size_t size = mpz_size(x);
    std::copy(src, src + size, (s > 0 ? p : n) + i * limbs_per_slot);
  }
  mpz_limbs_finish(pos, static_cast<mp_size_t>(total));
  mpz_limbs_finish(neg, static_cast<mp_size_t>(total));
}

Integer packed(std::span<const Integer> v, std::size_t limbs_per_slot) {
  Integer pos, neg;
  pack(v, limbs_per_slot, pos.get_mpz_t(), neg.get_mpz_t());
  return pos - neg;
}

// Reads balanced digits of z in base 2^{64 k}; valid when every true digit
// has absolute value below 2^{64 k - 1}.
std::vector<Integer> unpack(const Integer& z, std::size_t limbs_per_slot, std::size_t count) {
  std::vector<Integer> out(count);
  const int sign = sgn(z);
  if (sign == 0) return out;
  const mpz_srcptr zz = z.get_mpz_t();
  const std::size_t size = mpz_size(zz);
  const mp_limb_t* limbs = mpz_limbs_read(zz);
  const mp_bitcnt_t slot_bits = 64 * limbs_per_slot;
  Integer half, full;
  mpz_setbit(half.get_mpz_t(), slot_bits - 1);
  mpz_setbit(full.get_mpz_t(), slot_bits);
  bool carry = false;
  for (std::size_t i = 0; i < count; ++i) {
    Integer& digit = out[i];
    const std::size_t lo = i * limbs_per_slot;
    if (lo < size) {
      const std::size_t len = std::min(limbs_per_slot, size - lo);
      mp_limb_t* dst = mpz_limbs_write(digit.get_mpz_t(), static_cast<mp_size_t>(len));
      std::copy(limbs + lo, limbs + lo + len, dst);
      mpz_limbs_finish(digit.get_mpz_t(), static_cast<mp_size_t>(len));
    } else if (!carry) {
      break;
    }
    if (carry) digit += 1;
    if (digit >= half) {
      digit -= full;
      carry = true;
    } else {
      carry = false;
    }
    if (sign < 0) digit = -digit;
  }
  return out;
}

}  // namespace

std::vector<Integer> multiply_schoolbook(std::span<const Integer> a, std::span<const Integer> b,
                                         std::size_t out_len) {
  std::vector<Integer> c(out_len);
  if (count_nonzero(a) > count_nonzero(b)) std::swap(a, b);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (sgn(a[i]) == 0) continue;
    const mpz_srcptr ai = a[i].get_mpz_t();
    const std::size_t jmax = std::min(b.size(), out_len - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(c[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
    }
  }
  return c;
}

std::vector<Integer> multiply_kronecker(std::span<const Integer> a, std::span<const Integer> b,
                                        std::size_t out_len) {
  a = a.first(std::min(a.size(), out_len));
  b = b.first(std::min(b.size(), out_len));
  if (a.empty() || b.empty()) return std::vector<Integer>(out_len);
  const std::size_t terms = std::min(a.size(), b.size());
  const std::size_t bits = max_bits(a) + max_bits(b) + std::bit_width(terms) + 2;
  const std::size_t limbs_per_slot = (bits + 63) / 64;
  const Integer product = packed(a, limbs_per_slot) * packed(b, limbs_per_slot);
  auto c = unpack(product, limbs_per_slot, std::min(out_len, a.size() + b.size() - 1));
  c.resize(out_len);
  return c;
}

std::vector<Integer> multiply_dense(std::span<const Integer> a, std::span<const Integer> b,
                                    std::size_t out_len) {
  const std::size_t na = count_nonzero(a);
  const std::size_t nb = count_nonzero(b);
  if (std::min(na, nb) <= 48 || static_cast<double>(na) * static_cast<double>(nb) <= 65536.0) {
    return multiply_schoolbook(a, b, out_len);
  }
  return multiply_kronecker(a, b, out_len);
}

}  // namespace smallparts::detail
