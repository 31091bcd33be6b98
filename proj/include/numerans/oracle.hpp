#pragma once

#include <cstddef>

#include "numerans/numeration.hpp"
#include "numerans/rational.hpp"

namespace numerans {

/// All accepted words of length <= max_length in genealogical order.
/// offsets[l] .. offsets[l+1] delimit the words of length l.
struct EnumeratedLanguage {
  std::vector<Word> words;
  std::vector<std::size_t> offsets;
  int max_length = 0;

  std::size_t count_of_length(int l) const {
    return offsets[static_cast<std::size_t>(l) + 1] -
           offsets[static_cast<std::size_t>(l)];
  }
};

/// Exhaustive breadth-first generation, pruned at Dead. The guard on
/// the number of explored prefixes is a hard error, never a silent
/// truncation.
EnumeratedLanguage enumerate_upto(const NumerationSystem& sys, int n,
                                  std::size_t guard = 10000000);

/// Index of w in the sorted enumeration; value_error when absent.
BigCount brute_value(const NumerationSystem& sys, const Word& w);

/// Finite-stage approximant of the interval endpoint:
/// alpha_{y,n} = v(n-1)/v(n) + sum over center words x < y of length
/// |y| of u(q0.x, n-|y|) / v(n), with counts recomputed here
/// independently of the main DP.
Ratio alpha_fin(const NumerationSystem& sys, const Word& y, int n);

}  // namespace numerans
