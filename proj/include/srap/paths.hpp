#pragma once

#include <optional>
#include <vector>

#include "core.hpp"

namespace srap {

namespace detail {

struct PathLength {
  Cost cost = 0;
  int hops = 0;
  friend auto operator<=>(const PathLength&, const PathLength&) = default;
};

// Shortest paths by (cost, hops); reconstruction picks the smallest next vertex at each
// step, which yields the lexicographically smallest vertex sequence among them.
class LexShortestPaths {
 public:
  explicit LexShortestPaths(std::vector<std::vector<std::optional<Cost>>> w) : w_(std::move(w)) {
    int n = static_cast<int>(w_.size());
    d_.assign(n, std::vector<std::optional<PathLength>>(n));
    for (int x = 0; x < n; ++x) {
      d_[x][x] = PathLength{0, 0};
      for (int y = 0; y < n; ++y)
        if (x != y && w_[x][y]) d_[x][y] = PathLength{*w_[x][y], 1};
    }
    for (int k = 0; k < n; ++k)
      for (int x = 0; x < n; ++x) {
        if (!d_[x][k]) continue;
        for (int y = 0; y < n; ++y) {
          if (!d_[k][y]) continue;
          PathLength via{d_[x][k]->cost + d_[k][y]->cost, d_[x][k]->hops + d_[k][y]->hops};
          if (!d_[x][y] || via < *d_[x][y]) d_[x][y] = via;
        }
      }
  }

  const std::optional<PathLength>& dist(int x, int y) const { return d_[x][y]; }

  std::vector<int> path(int from, int to) const {
    std::vector<int> seq{from};
    int x = from;
    while (x != to) {
      const PathLength& total = *d_[x][to];
      int next = -1;
      for (int y = 0; y < static_cast<int>(w_.size()) && next < 0; ++y) {
        if (y == x || !w_[x][y] || !d_[y][to]) continue;
        if (*w_[x][y] + d_[y][to]->cost == total.cost && d_[y][to]->hops + 1 == total.hops) next = y;
      }
      if (next < 0) throw Error("shortest path reconstruction failed");
      seq.push_back(next);
      x = next;
    }
    return seq;
  }

 private:
  std::vector<std::vector<std::optional<Cost>>> w_;
  std::vector<std::vector<std::optional<PathLength>>> d_;
};

}  // namespace detail

}  // namespace srap
