#include "leab/analysis.hpp"

#include <algorithm>

namespace leab {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<std::size_t> parent;
};

}  // namespace

int cluster_count(std::span<const ShapePoint> shapes, double tol) {
  std::vector<std::size_t> order(shapes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return shapes[a].re() < shapes[b].re(); });
  DisjointSets sets(shapes.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (shapes[order[j]].re() - shapes[order[i]].re() > tol) break;
      if (distance(shapes[order[i]], shapes[order[j]]) <= tol) sets.unite(order[i], order[j]);
    }
  }
  int count = 0;
  for (std::size_t i = 0; i < shapes.size(); ++i) count += sets.find(i) == i ? 1 : 0;
  return count;
}

}  // namespace leab
