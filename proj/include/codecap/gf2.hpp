#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "codecap/bitset.hpp"

namespace codecap {

/// An n-length binary word. Bit i is position i of the word.
using BitWord = DynBitset;

/// "0101" -> word of length 4 with bits 0,1,0,1 at positions 0..3.
BitWord word_from_string(const std::string& s);
std::string word_to_string(const BitWord& w);

/// Binary matrix over GF(2), rows stored as packed bit vectors.
/// rows may be 0 (an empty parity check constrains nothing); cols >= 1.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }

  const DynBitset& row(std::size_t r) const { return data_[r]; }
  DynBitset& row(std::size_t r) { return data_[r]; }

  /// <row r, w> over GF(2).
  bool row_dot(std::size_t r, const BitWord& w) const {
    return DynBitset::count_and(data_[r], w) & std::size_t(1);
  }
  /// True iff every row has even overlap with w.
  bool in_nullspace(const BitWord& w) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  /// Text form: first line "rows cols", then one line per row of
  /// space-separated 0/1 digits. parse(serialize(m)) is byte-identical
  /// to serialize(m).
  std::string to_text() const;
  static BitMatrix from_text(const std::string& text,
                             const std::string& origin = "<string>");

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<DynBitset> data_;
};

/// Linear code C = nullspace of the parity-check matrix (m rows, n cols).
/// #C = 2^k with k = n - rank; the all-zeros word is always a member.
struct LinearCode {
  BitMatrix parity_check;

  std::size_t n() const { return parity_check.cols(); }
  std::size_t rank() const;
  std::size_t dimension() const { return n() - rank(); }
};

/// Exact enumeration refuses above 2^24 codewords.
inline constexpr std::size_t kEnumerationCapLog2 = 24;

/// Number of positions where u and v differ.
std::size_t hamming_distance(const BitWord& u, const BitWord& v);

/// Row rank over GF(2).
std::size_t rank_gf2(const BitMatrix& m);

/// Basis of the nullspace, one word per free column; size = cols - rank.
std::vector<BitWord> nullspace_basis(const BitMatrix& m);

/// All 2^{cols-rank} nullspace words (the zero word first).
std::vector<BitWord> nullspace_enumerate(
    const BitMatrix& m, std::size_t cap_log2 = kEnumerationCapLog2);

/// Minimum weight of a nonzero codeword; equals the minimum pairwise
/// distance by linearity.
std::size_t min_distance(const LinearCode& code,
                         std::size_t cap_log2 = kEnumerationCapLog2);

/// (min_distance - 1) / n.
double relative_distance(const LinearCode& code,
                         std::size_t cap_log2 = kEnumerationCapLog2);

/// (rate, redundancy) = (k/n, 1 - k/n) with k = n - rank.
std::pair<double, double> rate_and_redundancy(const LinearCode& code);

/// Binary entropy -x log2 x - (1-x) log2 (1-x); H(0) = H(1) = 0.
double entropy(double x);

}  // namespace codecap
