#include "codecap/gf2.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "codecap/errors.hpp"

namespace codecap {

BitWord word_from_string(const std::string& s) {
  if (s.empty()) throw ValidationError("word_from_string: empty word");
  BitWord w(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      w.set(i);
    else if (s[i] != '0')
      throw ValidationError("word_from_string: character '" +
                            std::string(1, s[i]) + "' is not 0 or 1");
  }
  return w;
}

std::string word_to_string(const BitWord& w) {
  std::string s(w.size(), '0');
  w.for_each_set([&](std::size_t i) { s[i] = '1'; });
  return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : nrows_(rows), ncols_(cols), data_(rows, DynBitset(cols)) {
  if (cols == 0) throw ValidationError("BitMatrix: cols must be positive");
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool BitMatrix::in_nullspace(const BitWord& w) const {
  if (w.size() != ncols_)
    throw ValidationError("in_nullspace: word length " +
                          std::to_string(w.size()) + " != cols " +
                          std::to_string(ncols_));
  for (std::size_t r = 0; r < nrows_; ++r)
    if (row_dot(r, w)) return false;
  return true;
}

std::string BitMatrix::to_text() const {
  std::string out;
  out.reserve(2 * nrows_ * ncols_ + 16);
  out += std::to_string(nrows_);
  out += ' ';
  out += std::to_string(ncols_);
  out += '\n';
  for (std::size_t r = 0; r < nrows_; ++r) {
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (c) out += ' ';
      out += get(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line,
                             const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

BitMatrix BitMatrix::from_text(const std::string& text,
                               const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) parse_fail(origin, 1, "empty input");
  ++lineno;
  std::istringstream head(line);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(head >> rows >> cols) || (head >> extra))
    parse_fail(origin, lineno, "expected header \"rows cols\"");
  if (rows < 0) parse_fail(origin, lineno, "rows must be nonnegative");
  if (cols < 1) parse_fail(origin, lineno, "cols must be positive");

  BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!std::getline(in, line))
      parse_fail(origin, lineno + 1, "expected " + std::to_string(m.rows()) +
                                         " rows, got " + std::to_string(r));
    ++lineno;
    std::istringstream row(line);
    std::string tok;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!(row >> tok))
        parse_fail(origin, lineno, "row has fewer than " +
                                       std::to_string(m.cols()) + " entries");
      if (tok == "1")
        m.set(r, c, true);
      else if (tok != "0")
        parse_fail(origin, lineno, "entry \"" + tok + "\" is not 0 or 1");
    }
    if (row >> tok)
      parse_fail(origin, lineno,
                 "row has more than " + std::to_string(m.cols()) + " entries");
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      parse_fail(origin, lineno, "unexpected content after last row");
  }
  return m;
}

std::size_t LinearCode::rank() const { return rank_gf2(parity_check); }

std::size_t hamming_distance(const BitWord& u, const BitWord& v) {
  if (u.size() != v.size())
    throw ValidationError("hamming_distance: lengths " +
                          std::to_string(u.size()) + " and " +
                          std::to_string(v.size()) + " differ");
  std::size_t d = 0;
  for (std::size_t w = 0; w < u.blocks().size(); ++w)
    d += static_cast<std::size_t>(
        std::popcount(u.blocks()[w] ^ v.blocks()[w]));
  return d;
}

namespace {

struct Rref {
  std::vector<DynBitset> rows;
  std::vector<std::size_t> pivot_cols;  // ascending; one per kept row
};

Rref reduce(const BitMatrix& m) {
  Rref out;
  std::vector<DynBitset> work;
  work.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) work.push_back(m.row(r));

  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < work.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < work.size() && !work[pivot].test(c)) ++pivot;
    if (pivot == work.size()) continue;
    std::swap(work[rank], work[pivot]);
    for (std::size_t r = 0; r < work.size(); ++r)
      if (r != rank && work[r].test(c)) work[r] ^= work[rank];
    out.pivot_cols.push_back(c);
    ++rank;
  }
  work.resize(rank, DynBitset(m.cols()));
  out.rows = std::move(work);
  return out;
}

}  // namespace

std::size_t rank_gf2(const BitMatrix& m) { return reduce(m).pivot_cols.size(); }

std::vector<BitWord> nullspace_basis(const BitMatrix& m) {
  const Rref rref = reduce(m);
  const std::size_t n = m.cols();

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : rref.pivot_cols) is_pivot[c] = true;

  // One basis word per free column f: bit f set, and for each pivot row i
  // with pivot column c_i, bit c_i carries that row's entry at f. Every
  // RREF row then meets the word an even number of times.
  std::vector<BitWord> basis;
  basis.reserve(n - rref.pivot_cols.size());
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitWord w(n);
    w.set(f);
    for (std::size_t i = 0; i < rref.pivot_cols.size(); ++i)
      if (rref.rows[i].test(f)) w.set(rref.pivot_cols[i]);
    basis.push_back(std::move(w));
  }
  return basis;
}

namespace {

void require_enumerable(std::size_t k, std::size_t cap_log2) {
  if (k > cap_log2)
    throw InfeasibleError("nullspace dimension " + std::to_string(k) +
                          " exceeds enumeration cap 2^" +
                          std::to_string(cap_log2));
}

}  // namespace

std::vector<BitWord> nullspace_enumerate(const BitMatrix& m,
                                         std::size_t cap_log2) {
  const std::vector<BitWord> basis = nullspace_basis(m);
  const std::size_t k = basis.size();
  require_enumerable(k, cap_log2);

  const std::uint64_t total = std::uint64_t(1) << k;
  std::vector<BitWord> words;
  words.reserve(total);
  BitWord cur(m.cols());
  words.push_back(cur);
  // Gray walk: step s flips the basis word indexed by the lowest set bit
  // of s, so consecutive outputs differ by one basis element.
  for (std::uint64_t s = 1; s < total; ++s) {
    cur ^= basis[static_cast<std::size_t>(std::countr_zero(s))];
    words.push_back(cur);
  }
  return words;
}

std::size_t min_distance(const LinearCode& code, std::size_t cap_log2) {
  const std::vector<BitWord> basis = nullspace_basis(code.parity_check);
  const std::size_t k = basis.size();
  if (k == 0)
    throw DegenerateCodeError(
        "min_distance: the code is {0}; distance is undefined");
  require_enumerable(k, cap_log2);

  const std::uint64_t total = std::uint64_t(1) << k;
  BitWord cur(code.n());
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t s = 1; s < total; ++s) {
    cur ^= basis[static_cast<std::size_t>(std::countr_zero(s))];
    const std::size_t wgt = cur.count();
    if (wgt < best) {
      best = wgt;
      if (best == 1) break;
    }
  }
  return best;
}

double relative_distance(const LinearCode& code, std::size_t cap_log2) {
  const std::size_t d = min_distance(code, cap_log2);
  return static_cast<double>(d - 1) / static_cast<double>(code.n());
}

std::pair<double, double> rate_and_redundancy(const LinearCode& code) {
  const double n = static_cast<double>(code.n());
  const double k = static_cast<double>(code.dimension());
  const double rate = k / n;
  return {rate, 1.0 - rate};
}

double entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw ValidationError("entropy: x = " + std::to_string(x) +
                          " outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace codecap
