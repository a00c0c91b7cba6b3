#ifndef LINFTY_KOSZUL_HPP
#define LINFTY_KOSZUL_HPP

#include <vector>

#include "linfty/errors.hpp"

namespace linfty {

/// Koszul sign of reordering a graded tuple (x_0,...,x_{n-1}) into
/// (x_{p[0]},...,x_{p[n-1]}): the product of (-1)^{d_i d_j} over inverted
/// pairs of the permutation p (0-based one-line notation).
inline int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
  if (perm.size() != degrees.size())
    throw ArgumentError("koszul_sign: permutation and degree list have different lengths");
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) throw ArgumentError("koszul_sign: not a permutation");
    seen[v] = true;
  }
  int sign = 1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (perm[a] > perm[b] && (degrees[perm[a]] & 1) && (degrees[perm[b]] & 1)) sign = -sign;
  return sign;
}

/// Sorts a word of basis indices ascending, accumulating the Koszul sign from
/// adjacent swaps; sign 0 when an odd-degree index repeats.
struct Straightened {
  int sign = 1;
  std::vector<int> word;
};

inline Straightened straighten_word(std::vector<int> word, const std::vector<int>& degrees) {
  Straightened out;
  const int n = static_cast<int>(word.size());
  for (int i = 1; i < n; ++i)
    for (int j = i; j > 0 && word[j] < word[j - 1]; --j) {
      if ((degrees[word[j]] & 1) && (degrees[word[j - 1]] & 1)) out.sign = -out.sign;
      std::swap(word[j], word[j - 1]);
    }
  for (int i = 0; i + 1 < n; ++i)
    if (word[i] == word[i + 1] && (degrees[word[i]] & 1)) {
      out.sign = 0;
      break;
    }
  out.word = std::move(word);
  return out;
}

}  // namespace linfty

#endif
