#include <cstddef>
#include <vector>

#include "codecap/bitset.hpp"
#include "codecap/capacity.hpp"

namespace codecap {

namespace {

struct MisSolver {
  const std::vector<DynBitset>& adj;
  std::size_t best = 0;
  std::vector<std::size_t> best_set;
  std::vector<std::size_t> current;

  explicit MisSolver(const std::vector<DynBitset>& a) : adj(a) {}

  // Greedy clique cover of the candidate set: a stable set meets each
  // clique at most once, so the cover size bounds what remains.
  std::size_t cover_bound(const DynBitset& candidates) const {
    DynBitset rest = candidates;
    std::size_t cliques = 0;
    while (true) {
      const std::size_t v = rest.first_set();
      if (v == DynBitset::npos) break;
      rest.reset(v);
      DynBitset extend = rest;
      extend &= adj[v];
      while (true) {
        const std::size_t u = extend.first_set();
        if (u == DynBitset::npos) break;
        rest.reset(u);
        extend.reset(u);
        extend &= adj[u];
      }
      ++cliques;
    }
    return cliques;
  }

  void expand(const DynBitset& candidates) {
    const std::size_t v = pick_branch_vertex(candidates);
    if (v == DynBitset::npos) {
      if (current.size() > best) {
        best = current.size();
        best_set = current;
      }
      return;
    }
    if (current.size() + cover_bound(candidates) <= best) return;

    // Include v first: deep dives reach large stable sets early, which
    // sharpens the bound for the rest of the tree.
    DynBitset with_v = candidates;
    with_v.reset(v);
    with_v.andnot_assign(adj[v]);
    current.push_back(v);
    expand(with_v);
    current.pop_back();

    DynBitset without_v = candidates;
    without_v.reset(v);
    expand(without_v);
  }

  // Max degree inside the candidate set; lowest index on ties.
  std::size_t pick_branch_vertex(const DynBitset& candidates) const {
    std::size_t pick = DynBitset::npos;
    std::size_t pick_degree = 0;
    candidates.for_each_set([&](std::size_t v) {
      const std::size_t d = DynBitset::count_and(adj[v], candidates);
      if (pick == DynBitset::npos || d > pick_degree) {
        pick = v;
        pick_degree = d;
      }
    });
    return pick;
  }
};

}  // namespace

std::size_t max_stable_set(const std::vector<DynBitset>& adjacency,
                           std::vector<std::size_t>* witness) {
  MisSolver solver(adjacency);
  DynBitset all(adjacency.size());
  for (std::size_t v = 0; v < adjacency.size(); ++v) all.set(v);
  solver.expand(all);
  if (witness) *witness = solver.best_set;
  return solver.best;
}

}  // namespace codecap
