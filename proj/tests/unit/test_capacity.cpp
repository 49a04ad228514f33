#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "codecap/capacity.hpp"
#include "codecap/errors.hpp"
#include "codecap/gf2.hpp"
#include "codecap/rng.hpp"
#include "doctest.h"

using namespace codecap;

namespace {

// Independence number by scanning every vertex subset. Usable to n ~ 20.
std::size_t alpha_bruteforce(const SimpleGraph& g) {
  const std::size_t n = g.n();
  std::vector<std::uint64_t> nbr(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (g.adjacent(u, v)) nbr[u] |= std::uint64_t{1} << v;
  std::size_t best = 0;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << n); ++sub) {
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u)
      if ((sub >> u) & 1)
        if (nbr[u] & sub) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(sub));
  }
  return best;
}

SimpleGraph random_simple(std::size_t n, std::uint64_t seed, double density) {
  Engine eng(seed);
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (uniform01(eng) < density) g.add_edge(u, v);
  return g;
}

bool independent_in(const std::vector<DynBitset>& adjacency,
                    const std::vector<std::size_t>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (adjacency[set[i]].test(set[j])) return false;
  return true;
}

}  // namespace

TEST_CASE("simple graph constructors and predicates") {
  const SimpleGraph c5 = SimpleGraph::cycle(5);
  CHECK(c5.n() == 5);
  CHECK(c5.edge_count() == 5);
  for (std::size_t v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);
  CHECK(c5.is_connected());
  CHECK_FALSE(c5.is_bipartite());
  CHECK(SimpleGraph::cycle(4).is_bipartite());
  CHECK(SimpleGraph::complete(4).is_complete());
  CHECK(SimpleGraph::complete(4).edge_count() == 6);
  CHECK(SimpleGraph::complete(1).is_complete());
  CHECK(SimpleGraph::path(4).edge_count() == 3);
  CHECK(SimpleGraph::path(4).is_bipartite());
  CHECK(SimpleGraph::path(1).is_connected());

  SimpleGraph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK_FALSE(two.is_connected());
  CHECK_THROWS_AS(two.add_edge(0, 4), ValidationError);
  CHECK_THROWS_AS(two.add_edge(2, 2), ValidationError);
  CHECK_THROWS_AS(two.add_edge(1, 0), ValidationError);
  CHECK_THROWS_AS(SimpleGraph::cycle(2), ValidationError);
  CHECK_THROWS_AS(SimpleGraph(0), ValidationError);

  // The pentagon is self-complementary.
  const SimpleGraph co = c5.complement();
  CHECK(co.edge_count() == 5);
  for (std::size_t v = 0; v < 5; ++v) CHECK(co.degree(v) == 2);
  CHECK(co.is_connected());
  CHECK(SimpleGraph::complete(4).complement().edge_count() == 0);

  const auto edges = c5.edges();
  const SimpleGraph rebuilt = SimpleGraph::from_edges(5, edges);
  CHECK(rebuilt.edges() == edges);
}

TEST_CASE("degree statistics") {
  const DegreeStats c5 = degree_stats(SimpleGraph::cycle(5));
  CHECK(c5.d_av == 2.0);
  CHECK(c5.delta_max == 2);

  const SimpleGraph star = SimpleGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const DegreeStats s = degree_stats(star);
  CHECK(s.d_av == 1.5);
  CHECK(s.delta_max == 3);

  const DegreeStats k4 = degree_stats(SimpleGraph::complete(4));
  CHECK(k4.d_av == 3.0);
  CHECK(k4.delta_max == 3);
}

TEST_CASE("restricted powers at order one mirror the base graph") {
  const SimpleGraph base = SimpleGraph::cycle(5);
  const ProductGraph one = restricted_power(base, 1, 1);
  CHECK(one.num_vertices == 5);
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t v = 0; v < 5; ++v)
      CHECK(one.adjacency[u].test(v) == base.adjacent(u, v));
}

TEST_CASE("restricted power shapes and monotonicity in k") {
  const SimpleGraph c5 = SimpleGraph::cycle(5);
  const ProductGraph cart = restricted_power(c5, 2, 1);
  CHECK(cart.num_vertices == 25);
  for (std::size_t v = 0; v < 25; ++v) CHECK(cart.adjacency[v].count() == 4);

  const ProductGraph strong = restricted_power(c5, 2, 2);
  CHECK(strong.num_vertices == 25);
  for (std::size_t v = 0; v < 25; ++v) {
    // Everything adjacent under at most 1 change stays adjacent under 2.
    CHECK(DynBitset::count_andnot(cart.adjacency[v], strong.adjacency[v]) ==
          0);
    CHECK(strong.adjacency[v].count() == 8);  // closed ball 3x3 minus self
  }

  // The strong square of an edge is the complete graph on 4 vertices.
  const ProductGraph k4 = restricted_power(SimpleGraph::complete(2), 2, 2);
  CHECK(k4.num_vertices == 4);
  for (std::size_t v = 0; v < 4; ++v) CHECK(k4.adjacency[v].count() == 3);

  CHECK_THROWS_AS(restricted_power(c5, 7, 1), InfeasibleError);
  CHECK_THROWS_AS(restricted_power(c5, 2, 1, 10), InfeasibleError);
  CHECK_THROWS_AS(restricted_power(c5, 0, 0), ValidationError);
  CHECK_THROWS_AS(restricted_power(c5, 2, 3), ValidationError);
}

TEST_CASE("product coordinates round-trip") {
  const ProductGraph pg = restricted_power(SimpleGraph::cycle(5), 3, 1);
  CHECK(pg.num_vertices == 125);
  for (std::size_t id = 0; id < 125; ++id) {
    const std::vector<std::size_t> tuple = pg.decode(id);
    CHECK(tuple.size() == 3);
    for (const std::size_t digit : tuple) CHECK(digit < 5);
    CHECK(pg.encode(tuple) == id);
  }
  CHECK_THROWS_AS(pg.encode({1, 2}), ValidationError);
  CHECK_THROWS_AS(pg.encode({1, 2, 5}), ValidationError);
}

TEST_CASE("independence numbers of named graphs") {
  CHECK(alpha_exact(SimpleGraph::cycle(5)) == 2);
  CHECK(alpha_exact(SimpleGraph::cycle(7)) == 3);
  CHECK(alpha_exact(SimpleGraph::complete(4)) == 1);
  CHECK(alpha_exact(SimpleGraph::path(4)) == 2);
  CHECK(alpha_exact(SimpleGraph::path(5)) == 3);
  CHECK(alpha_exact(SimpleGraph(6)) == 6);

  std::vector<std::size_t> witness;
  const std::size_t a = alpha_exact(SimpleGraph::cycle(7), &witness);
  CHECK(witness.size() == a);
  SimpleGraph c7 = SimpleGraph::cycle(7);
  for (std::size_t i = 0; i < witness.size(); ++i)
    for (std::size_t j = i + 1; j < witness.size(); ++j)
      CHECK_FALSE(c7.adjacent(witness[i], witness[j]));
}

TEST_CASE("branch and bound agrees with subset enumeration") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t n = 5 + i % 10;  // up to 14 vertices
    const double density = 0.15 + 0.06 * static_cast<double>(i % 6);
    const SimpleGraph g = random_simple(n, 2000 + i, density);
    CHECK(alpha_exact(g) == alpha_bruteforce(g));
  }
}

TEST_CASE("independence of pentagon powers") {
  const SimpleGraph c5 = SimpleGraph::cycle(5);

  std::vector<std::size_t> witness;
  const ProductGraph strong = restricted_power(c5, 2, 2);
  const std::size_t a_strong = alpha_exact(strong, &witness);
  CHECK(a_strong == 5);
  CHECK(witness.size() == 5);
  CHECK(independent_in(strong.adjacency, witness));

  // One row per base vertex holds at most alpha = 2 choices, and the
  // shifted diagonal pairs construction attains 10.
  const ProductGraph cart = restricted_power(c5, 2, 1);
  const std::size_t a_cart = alpha_exact(cart, &witness);
  CHECK(a_cart == 10);
  CHECK(independent_in(cart.adjacency, witness));
  CHECK(a_cart >= a_strong);  // fewer allowed changes only removes edges
}

TEST_CASE("independence of complete graph powers") {
  const SimpleGraph k3 = SimpleGraph::complete(3);
  CHECK(alpha_exact(restricted_power(k3, 2, 2)) == 1);
  CHECK(alpha_exact(restricted_power(k3, 3, 3)) == 1);
  // With single-coordinate moves the square is the 3x3 rook graph.
  CHECK(alpha_exact(restricted_power(k3, 2, 1)) == 3);
}

TEST_CASE("ball sizes by enumeration") {
  const SimpleGraph c5 = SimpleGraph::cycle(5);
  CHECK(ball_size_exact(c5, 2, 0, {0, 0}) == 1);
  CHECK(ball_size_exact(c5, 2, 1, {0, 0}) == 5);
  CHECK(ball_size_exact(c5, 2, 2, {3, 1}) == 9);

  const SimpleGraph p3 = SimpleGraph::path(3);
  CHECK(ball_size_exact(p3, 1, 1, {1}) == 3);
  CHECK(ball_size_exact(p3, 1, 1, {0}) == 2);

  // k = r over a complete base graph reaches every tuple.
  CHECK(ball_size_exact(SimpleGraph::complete(3), 2, 2, {0, 1}) == 9);

  CHECK_THROWS_AS(ball_size_exact(c5, 8, 1, {0, 0, 0, 0, 0, 0, 0, 0}),
                  InfeasibleError);
  CHECK_THROWS_AS(ball_size_exact(c5, 2, 1, {0}), ValidationError);
  CHECK_THROWS_AS(ball_size_exact(c5, 2, 1, {0, 5}), ValidationError);
}

TEST_CASE("mean ball size matches the closed form") {
  const SimpleGraph graphs[] = {SimpleGraph::cycle(5), SimpleGraph::path(4),
                                SimpleGraph::complete(4)};
  for (const SimpleGraph& g : graphs)
    for (std::size_t r = 1; r <= 3; ++r)
      for (std::size_t k = 0; k <= r; ++k) {
        const ProductGraph pg = restricted_power(g, r, k);
        std::size_t total = 0;
        for (std::size_t id = 0; id < pg.num_vertices; ++id)
          total += ball_size_exact(g, r, k, pg.decode(id));
        const double mean = static_cast<double>(total) /
                            static_cast<double>(pg.num_vertices);
        CHECK(mean ==
              doctest::Approx(expected_ball_size(g, r, k)).epsilon(1e-9));
      }
}

TEST_CASE("expected ball size spot values") {
  const SimpleGraph star = SimpleGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  // d_av = 1.5: 1 + C(2,1) 1.5 + C(2,2) 1.5^2.
  CHECK(expected_ball_size(star, 2, 2) == doctest::Approx(6.25).epsilon(1e-12));
  CHECK(expected_ball_size(SimpleGraph::cycle(5), 2, 1) ==
        doctest::Approx(5.0).epsilon(1e-12));
  // At k = r the sum telescopes to (1 + d_av)^r.
  for (std::size_t r = 1; r <= 4; ++r)
    CHECK(expected_ball_size(star, r, r) ==
          doctest::Approx(std::pow(2.5, static_cast<double>(r)))
              .epsilon(1e-12));
}

TEST_CASE("lower bound kernel") {
  CHECK(f_bound(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f_bound(1.0, 4.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(f_bound(0.5, 2.0) ==
        doctest::Approx(0.35355339059327376).epsilon(1e-15));
  CHECK(f_bound(0.0001, 2.0) > 0.99);

  // The two branch formulas agree at the breakpoint gamma = x/(x+1).
  for (int xi = 1; xi <= 20; ++xi) {
    const double x = static_cast<double>(xi);
    const double at = x / (x + 1.0);
    const double formula =
        1.0 / (std::exp2(entropy(at)) * std::pow(x, at));
    CHECK(f_bound(at, x) == doctest::Approx(1.0 / (x + 1.0)).epsilon(1e-12));
    CHECK(formula == doctest::Approx(1.0 / (x + 1.0)).epsilon(1e-12));
    CHECK(f_bound(at - 1e-9, x) ==
          doctest::Approx(f_bound(at + 1e-9, x)).epsilon(1e-6));
  }

  CHECK_THROWS_AS(f_bound(0.0, 2.0), ValidationError);
  CHECK_THROWS_AS(f_bound(1.1, 2.0), ValidationError);
  CHECK_THROWS_AS(f_bound(0.5, 0.5), ValidationError);
}

TEST_CASE("capacity sandwich for the pentagon at gamma one half") {
  const CapacityReport rep = capacity_bounds(
      SimpleGraph::cycle(5), 0.5, std::sqrt(5.0), "pentagon capacity");
  CHECK(rep.n == 5);
  CHECK(rep.d_av == 2.0);
  CHECK(rep.delta_max == 2);
  CHECK(rep.lower_term_dav ==
        doctest::Approx(1.7677669529663687).epsilon(1e-12));
  CHECK(rep.lower_term_delta == rep.lower_term_dav);
  CHECK(rep.lower_term_full == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(rep.lower_bound == rep.lower_term_dav);
  CHECK(rep.upper_bound == doctest::Approx(3.34370152488211).epsilon(1e-12));
  CHECK(rep.lower_bound <= rep.upper_bound);
  CHECK(rep.theta_value == std::sqrt(5.0));
  CHECK(rep.theta_source == "pentagon capacity");
}

TEST_CASE("capacity sandwich pinches on complete graphs at gamma one") {
  const CapacityReport rep =
      capacity_bounds(SimpleGraph::complete(4), 1.0, 1.0, "complete graph");
  CHECK(rep.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.upper_bound == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("capacity sandwich brackets perfect graph capacities") {
  // Path on 4 vertices: capacity alpha = 2 at gamma = 1.
  const CapacityReport rep =
      capacity_bounds(SimpleGraph::path(4), 1.0, 2.0, "bipartite alpha");
  CHECK(rep.lower_bound == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(rep.upper_bound == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.lower_bound <= 2.0);
  CHECK(2.0 <= rep.upper_bound + 1e-12);
}

TEST_CASE("capacity bounds validate their inputs") {
  SimpleGraph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(capacity_bounds(split, 0.5, 2.0, "x"), ValidationError);
  CHECK_THROWS_AS(
      capacity_bounds(SimpleGraph::complete(2), 0.5, 1.0, "x"),
      ValidationError);
  CHECK_THROWS_AS(capacity_bounds(SimpleGraph::cycle(5), 0.0, 2.5, "x"),
                  ValidationError);
  CHECK_THROWS_AS(capacity_bounds(SimpleGraph::cycle(5), 1.5, 2.5, "x"),
                  ValidationError);
  // A claimed capacity below alpha or above n is rejected, and the message
  // names the offending provenance.
  CHECK_THROWS_WITH_AS(
      capacity_bounds(SimpleGraph::cycle(5), 0.5, 1.0, "bogus source"),
      doctest::Contains("bogus source"), ValidationError);
  CHECK_THROWS_AS(capacity_bounds(SimpleGraph::cycle(5), 0.5, 6.0, "x"),
                  ValidationError);
  // The endpoints themselves are allowed.
  CHECK_NOTHROW(capacity_bounds(SimpleGraph::cycle(5), 0.5, 2.0, "alpha"));
  CHECK_NOTHROW(capacity_bounds(SimpleGraph::cycle(5), 0.5, 5.0, "n"));
}

TEST_CASE("finite order capacity certificates") {
  const SimpleGraph c5 = SimpleGraph::cycle(5);

  const auto at_one = capacity_certificate(c5, 1.0, 2);
  REQUIRE(at_one.size() == 2);
  CHECK(at_one[0].r == 1);
  CHECK(at_one[0].k == 1);
  CHECK(at_one[0].alpha == 2);
  CHECK(at_one[0].witness == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(at_one[1].r == 2);
  CHECK(at_one[1].k == 2);
  CHECK(at_one[1].alpha == 5);
  CHECK(at_one[1].witness ==
        doctest::Approx(2.2360679774997896).epsilon(1e-12));

  const auto at_half = capacity_certificate(c5, 0.5, 2);
  REQUIRE(at_half.size() == 1);  // r_min = 2 exactly, no float dust
  CHECK(at_half[0].r == 2);
  CHECK(at_half[0].k == 1);
  CHECK(at_half[0].alpha == 10);
  CHECK(at_half[0].witness ==
        doctest::Approx(3.1622776601683795).epsilon(1e-12));

  // gamma = 1/3: both 1/gamma and gamma * r sit a hair off an integer.
  const auto at_third = capacity_certificate(SimpleGraph::path(3), 1.0 / 3.0, 3);
  REQUIRE(at_third.size() == 1);
  CHECK(at_third[0].r == 3);
  CHECK(at_third[0].k == 1);

  // Orders past the vertex cap are trimmed, not fatal.
  const auto capped = capacity_certificate(SimpleGraph::complete(2), 1.0, 20, 100);
  REQUIRE(capped.size() == 6);  // 2^6 = 64 <= 100 < 128
  for (const CapacityCertificate& cert : capped) {
    CHECK(cert.alpha == 1);  // strong powers of complete graphs are complete
    CHECK(cert.witness == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::pow(cert.witness, static_cast<double>(cert.r)) ==
          doctest::Approx(static_cast<double>(cert.alpha)).epsilon(1e-9));
  }

  CHECK_THROWS_AS(capacity_certificate(c5, 0.3, 2), InfeasibleError);
  CHECK_THROWS_AS(capacity_certificate(c5, 0.0, 2), ValidationError);
}

TEST_CASE("recursion inequality holds on every tested pair") {
  const SimpleGraph c5 = SimpleGraph::cycle(5);
  CHECK(recursion_check(c5, 1, 1));
  CHECK(recursion_check(c5, 2, 1));
  CHECK(recursion_check(c5, 2, 2));
  const SimpleGraph p4 = SimpleGraph::path(4);
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t d = 1; d <= r; ++d) CHECK(recursion_check(p4, r, d));
  CHECK_THROWS_AS(recursion_check(c5, 2, 3), ValidationError);
  CHECK_THROWS_AS(recursion_check(c5, 2, 0), ValidationError);
}

TEST_CASE("capacity registry recognizes what it can certify") {
  const auto k7 = capacity_registry_lookup(SimpleGraph::complete(7));
  REQUIRE(k7.has_value());
  CHECK(k7->theta == 1.0);

  const auto pent = capacity_registry_lookup(SimpleGraph::cycle(5));
  REQUIRE(pent.has_value());
  CHECK(pent->theta == doctest::Approx(2.2360679774997896).epsilon(1e-15));
  CHECK(pent->provenance.find("sqrt(5)") != std::string::npos);

  // Any relabeling of the pentagon is still connected and 2-regular.
  const SimpleGraph relabeled = SimpleGraph::from_edges(
      5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
  const auto pent2 = capacity_registry_lookup(relabeled);
  REQUIRE(pent2.has_value());
  CHECK(pent2->theta == pent->theta);

  const auto p4 = capacity_registry_lookup(SimpleGraph::path(4));
  REQUIRE(p4.has_value());
  CHECK(p4->theta == 2.0);  // bipartite, so capacity = alpha

  const auto c6 = capacity_registry_lookup(SimpleGraph::cycle(6));
  REQUIRE(c6.has_value());
  CHECK(c6->theta == 3.0);

  const auto co_c6 = capacity_registry_lookup(SimpleGraph::cycle(6).complement());
  REQUIRE(co_c6.has_value());
  CHECK(co_c6->theta == 2.0);  // complement is co-bipartite: alpha = omega(C6)

  CHECK_FALSE(capacity_registry_lookup(SimpleGraph::cycle(7)).has_value());
}
