#include <functional>
#include <vector>

#include "smallparts/generators.hpp"

namespace smallparts {
namespace {

struct Block {
  std::int64_t part;
  std::int64_t multiplicity;
};

// Visits every partition of n as blocks of (part, multiplicity) with parts
// strictly decreasing.
void for_each_partition(std::int64_t n, const std::function<void(const std::vector<Block>&)>& visit) {
  std::vector<Block> blocks;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t remaining, std::int64_t max_part) {
    if (remaining == 0) {
      visit(blocks);
      return;
    }
    for (std::int64_t part = std::min(remaining, max_part); part >= 1; --part) {
      for (std::int64_t mult = remaining / part; mult >= 1; --mult) {
        blocks.push_back(Block{part, mult});
        rec(remaining - part * mult, part - 1);
        blocks.pop_back();
      }
    }
  };
  rec(n, n);
}

bool no_repeated_odd(const std::vector<Block>& blocks) {
  for (const auto& b : blocks) {
    if (b.part % 2 == 1 && b.multiplicity > 1) return false;
  }
  return true;
}

}  // namespace

Integer enumerate_oracle(Statistic s, std::int64_t n, std::int64_t ceiling) {
  if (n > ceiling) {
    throw Error(ErrorKind::OracleCeilingExceeded,
                "oracle asked for n = " + std::to_string(n) + " above ceiling " + std::to_string(ceiling), n);
  }
  if (n < 0) return 0;
  if (n == 0) return (s == Statistic::P || s == Statistic::PBAR || s == Statistic::PODD) ? 1 : 0;
  std::uint64_t count = 0;
  for_each_partition(n, [&](const std::vector<Block>& blocks) {
    const Block& smallest = blocks.back();
    switch (s) {
      case Statistic::P:
        ++count;
        break;
      case Statistic::SPT:
        count += static_cast<std::uint64_t>(smallest.multiplicity);
        break;
      case Statistic::PBAR:
      case Statistic::SPTBAR1: {
        // Each distinct part may have its first occurrence overlined; walk
        // every choice explicitly.
        if (s == Statistic::SPTBAR1 && smallest.part % 2 == 0) break;
        const std::uint64_t choices = std::uint64_t{1} << blocks.size();
        const std::uint64_t weight =
            s == Statistic::PBAR ? 1 : static_cast<std::uint64_t>(smallest.multiplicity);
        for (std::uint64_t overlined = 0; overlined < choices; ++overlined) count += weight;
        break;
      }
      case Statistic::M2SPT:
        if (no_repeated_odd(blocks) && smallest.part % 2 == 0) {
          count += static_cast<std::uint64_t>(smallest.multiplicity);
        }
        break;
      case Statistic::PODD:
        if (no_repeated_odd(blocks)) ++count;
        break;
    }
  });
  Integer out;
  mpz_set_ui(out.get_mpz_t(), static_cast<unsigned long>(count));
  return out;
}

}  // namespace smallparts
