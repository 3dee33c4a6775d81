#pragma once

// Exterior algebra bookkeeping: p-subsets of {0..n-1} in lexicographic order,
// combinadic ranking, and the sign of inserting one index into a sorted
// subset (the wedge a_i ^ a_S).

#include <cstdint>
#include <vector>

#include "brank/errors.hpp"

namespace brank {

inline std::int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All p-subsets of {0..n-1}, each sorted ascending, in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  std::vector<int> cur(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i) cur[static_cast<size_t>(i)] = i;
  for (;;) {
    out.push_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == n - p + i) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int j = i + 1; j < p; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

// Lexicographic rank of a sorted p-subset of {0..n-1}.
inline int subset_rank_lex(const std::vector<int>& s, int n) {
  const int p = static_cast<int>(s.size());
  std::int64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < p; ++i) {
    for (int v = prev + 1; v < s[static_cast<size_t>(i)]; ++v) rank += binom(n - 1 - v, p - 1 - i);
    prev = s[static_cast<size_t>(i)];
  }
  return static_cast<int>(rank);
}

// Sign of a_i ^ a_S relative to the sorted basis element a_{S+i}; 0 if i in S.
inline int insertion_sign(int i, const std::vector<int>& s) {
  int below = 0;
  for (int v : s) {
    if (v == i) return 0;
    if (v < i) ++below;
  }
  return (below % 2 == 0) ? 1 : -1;
}

// Sorted union S + {i}; caller guarantees i not in S.
inline std::vector<int> subset_insert(const std::vector<int>& s, int i) {
  std::vector<int> out;
  out.reserve(s.size() + 1);
  bool placed = false;
  for (int v : s) {
    if (!placed && i < v) {
      out.push_back(i);
      placed = true;
    }
    out.push_back(v);
  }
  if (!placed) out.push_back(i);
  return out;
}

}  // namespace brank
