#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "codecap/errors.hpp"
#include "codecap/gf2.hpp"
#include "codecap/rng.hpp"
#include "doctest.h"

using namespace codecap;

namespace {

BitMatrix matrix_from_rows(std::size_t cols,
                           const std::vector<std::string>& rows) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] == '1') m.set(r, c, true);
  return m;
}

std::set<std::string> word_set(const std::vector<BitWord>& words) {
  std::set<std::string> out;
  for (const BitWord& w : words) out.insert(word_to_string(w));
  return out;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols,
                        std::uint64_t seed, double density = 0.5) {
  Engine eng(seed);
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (uniform01(eng) < density) m.set(r, c, true);
  return m;
}

// The [8,4] extended Hamming parity check; its minimum distance is 4.
BitMatrix extended_hamming() {
  return matrix_from_rows(8, {"11111111", "00001111", "00110011", "01010101"});
}

}  // namespace

TEST_CASE("hamming distance counts differing positions") {
  CHECK(hamming_distance(word_from_string("0101"), word_from_string("0110")) ==
        2);
  const BitWord w = word_from_string("100101");
  CHECK(hamming_distance(w, w) == 0);
  CHECK(hamming_distance(word_from_string("0000"), word_from_string("1111")) ==
        4);
  CHECK_THROWS_AS(
      hamming_distance(word_from_string("01"), word_from_string("011")),
      ValidationError);
}

TEST_CASE("hamming distance satisfies the triangle inequality") {
  Engine eng(7);
  for (int rep = 0; rep < 200; ++rep) {
    BitWord u(20), v(20), w(20);
    for (std::size_t i = 0; i < 20; ++i) {
      u.set(i, uniform01(eng) < 0.5);
      v.set(i, uniform01(eng) < 0.5);
      w.set(i, uniform01(eng) < 0.5);
    }
    CHECK(hamming_distance(u, w) <=
          hamming_distance(u, v) + hamming_distance(v, w));
    CHECK(hamming_distance(u, v) == hamming_distance(v, u));
  }
}

TEST_CASE("rank over GF(2)") {
  CHECK(rank_gf2(BitMatrix::identity(3)) == 3);
  CHECK(rank_gf2(BitMatrix(2, 4)) == 0);
  CHECK(rank_gf2(matrix_from_rows(3, {"110", "011", "101"})) == 2);
}

TEST_CASE("nullspace enumeration materializes the code") {
  CHECK(word_set(nullspace_enumerate(matrix_from_rows(3, {"111"}))) ==
        std::set<std::string>{"000", "011", "101", "110"});
  CHECK(word_set(nullspace_enumerate(BitMatrix::identity(3))) ==
        std::set<std::string>{"000"});
  CHECK(word_set(nullspace_enumerate(BitMatrix(1, 2))) ==
        std::set<std::string>{"00", "01", "10", "11"});
}

TEST_CASE("nullspace enumeration refuses above the cap") {
  CHECK_THROWS_AS(nullspace_enumerate(BitMatrix(1, 3), 2), InfeasibleError);
  CHECK_THROWS_AS(nullspace_enumerate(BitMatrix(0, 26)), InfeasibleError);
}

TEST_CASE("nullspace size and membership on random matrices") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t rows = 1 + seed % 6;
    const std::size_t cols = 2 + seed % 9;
    const BitMatrix m = random_matrix(rows, cols, derive_seed(101, seed));
    const std::size_t rank = rank_gf2(m);
    const auto words = nullspace_enumerate(m);
    CHECK(words.size() == std::size_t(1) << (cols - rank));
    CHECK(word_set(words).size() == words.size());
    for (const BitWord& w : words) CHECK(m.in_nullspace(w));
  }
}

TEST_CASE("minimum distance from enumerated small codes") {
  CHECK(min_distance(LinearCode{matrix_from_rows(3, {"111"})}) == 2);
  CHECK(min_distance(LinearCode{matrix_from_rows(3, {"110", "011"})}) == 3);
  CHECK(min_distance(LinearCode{BitMatrix(0, 5)}) == 1);
  CHECK(min_distance(LinearCode{extended_hamming()}) == 4);
  CHECK_THROWS_AS(min_distance(LinearCode{BitMatrix::identity(4)}),
                  DegenerateCodeError);
}

TEST_CASE("minimum distance equals the pairwise minimum by linearity") {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 12; ++seed) {
    const std::size_t cols = 6 + seed % 9;  // up to 14
    const std::size_t rows = 2 + seed % cols;
    const BitMatrix m = random_matrix(rows, cols, derive_seed(202, seed));
    const LinearCode code{m};
    if (code.dimension() == 0 || code.dimension() > 10) continue;
    const auto words = nullspace_enumerate(m);
    std::size_t pairwise = cols + 1;
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j)
        pairwise = std::min(pairwise, hamming_distance(words[i], words[j]));
    CHECK(min_distance(code) == pairwise);
    ++checked;
  }
}

TEST_CASE("relative distance is (d - 1) / n") {
  CHECK(relative_distance(LinearCode{matrix_from_rows(3, {"110", "011"})}) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(relative_distance(LinearCode{BitMatrix(0, 3)}) == 0.0);
  CHECK(relative_distance(LinearCode{extended_hamming()}) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("rate and redundancy") {
  SUBCASE("full-rank parity check") {
    const auto [rate, red] = rate_and_redundancy(LinearCode{extended_hamming()});
    CHECK(rate == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(red == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("zero parity check constrains nothing") {
    const auto [rate, red] = rate_and_redundancy(LinearCode{BitMatrix(2, 4)});
    CHECK(rate == 1.0);
    CHECK(red == 0.0);
  }
  SUBCASE("rank 14 on 24 columns") {
    BitMatrix m(14, 24);
    for (std::size_t i = 0; i < 14; ++i) {
      m.set(i, i, true);
      m.set(i, 23, true);
    }
    const auto [rate, red] = rate_and_redundancy(LinearCode{m});
    CHECK(rate == doctest::Approx(10.0 / 24.0).epsilon(1e-12));
    CHECK(red == doctest::Approx(14.0 / 24.0).epsilon(1e-12));
  }
}

TEST_CASE("binary entropy") {
  CHECK(entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy(0.0) == 0.0);
  CHECK(entropy(1.0) == 0.0);
  CHECK(entropy(0.1) == doctest::Approx(0.4689955935892812).epsilon(1e-12));
  CHECK_THROWS_AS(entropy(-0.01), ValidationError);
  CHECK_THROWS_AS(entropy(1.01), ValidationError);

  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(entropy(x) == doctest::Approx(entropy(1.0 - x)).epsilon(1e-12));
    CHECK(entropy(x) <= 1.0 + 1e-15);
  }
  for (int i = 0; i < 50; ++i)
    CHECK(entropy(i / 100.0) < entropy((i + 1) / 100.0));
}

TEST_CASE("matrix text round trip is byte-identical") {
  const BitMatrix m = matrix_from_rows(4, {"1010", "0111", "0000"});
  const std::string text = m.to_text();
  CHECK(text == "3 4\n1 0 1 0\n0 1 1 1\n0 0 0 0\n");
  const BitMatrix back = BitMatrix::from_text(text);
  CHECK(back == m);
  CHECK(back.to_text() == text);

  const BitMatrix empty(0, 6);
  CHECK(BitMatrix::from_text(empty.to_text()).to_text() == empty.to_text());

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BitMatrix r = random_matrix(1 + seed % 7, 1 + seed % 11,
                                      derive_seed(303, seed));
    CHECK(BitMatrix::from_text(r.to_text()).to_text() == r.to_text());
  }
}

TEST_CASE("matrix parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(BitMatrix::from_text("junk\n", "f"),
                       doctest::Contains("f:1"), ParseError);
  CHECK_THROWS_WITH_AS(BitMatrix::from_text("1 3\n0 2 0\n", "f"),
                       doctest::Contains("f:2"), ParseError);
  CHECK_THROWS_WITH_AS(BitMatrix::from_text("2 2\n1 0\n", "f"),
                       doctest::Contains("f:3"), ParseError);
  CHECK_THROWS_WITH_AS(BitMatrix::from_text("1 2\n1 0 1\n", "f"),
                       doctest::Contains("f:2"), ParseError);
  CHECK_THROWS_WITH_AS(BitMatrix::from_text("1 2\n1 0\nleftover\n", "f"),
                       doctest::Contains("f:3"), ParseError);
  CHECK_THROWS_AS(BitMatrix::from_text("1 0\n", "f"), ParseError);
}
