#include "sperner/construct.hpp"

#include "sperner/verify.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace sperner {

namespace {

using Word = std::uint64_t;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}

  void set(std::size_t i) { w_[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(Word{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](Word v) { return v == 0; });
  }
  long first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<long>(i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i])));
    return -1;
  }
  void and_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  }
  void or_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }
  void and_not(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  }

 private:
  std::vector<Word> w_;
};

// Every partition of [n] into exactly k blocks, as block bitmasks.
std::vector<std::vector<std::uint32_t>> k_partitions(int n, int k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  // Restricted growth strings a[0]=0, a[i] <= 1 + max(a[0..i-1]).
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (n - i < k - used) return;
    if (i == n) {
      if (used != k) return;
      std::vector<std::uint32_t> blocks(static_cast<std::size_t>(k), 0);
      for (int x = 0; x < n; ++x) blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(x)])] |= 1u << x;
      out.push_back(std::move(blocks));
      return;
    }
    for (int b = 0; b <= std::min(used, k - 1); ++b) {
      a[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

bool compatible(const std::vector<std::uint32_t>& p, const std::vector<std::uint32_t>& q) {
  for (auto a : p)
    for (auto b : q)
      if ((a & ~b) == 0 || (b & ~a) == 0) return false;
  return true;
}

// Max clique by branch and bound. Besides the greedy colouring bound, every
// vertex carries a weight and a clique's total weight may not exceed
// `budget`; at most one vertex per colour class can be taken, so the
// smallest weight of each class gives a knapsack-style bound.
class MaxClique {
 public:
  MaxClique(std::vector<Bits> adj, std::vector<std::size_t> weight_index, std::vector<std::uint64_t> weights,
            std::uint64_t budget)
      : adj_(std::move(adj)),
        n_(adj_.size()),
        widx_(std::move(weight_index)),
        wval_(std::move(weights)),
        budget_(budget),
        by_weight_(wval_.size(), Bits(n_)) {
    for (std::size_t v = 0; v < n_; ++v) by_weight_[widx_[v]].set(v);
  }

  // Searches the vertices of weight <= each distinct weight in turn; every
  // phase starts from the previous incumbent and the last one is the whole
  // graph. Light vertices pack densest, so good incumbents come early.
  std::vector<std::size_t> solve() {
    Bits all(n_);
    for (std::size_t i = 0; i < n_; ++i) all.set(i);
    phases({}, all);
    return best_;
  }

  // Largest clique through `root`, or the incumbent if that is larger.
  std::vector<std::size_t> solve_containing(std::size_t root) {
    if (best_.empty()) best_ = {root};
    phases({root}, adj_[root]);
    return best_;
  }

 private:
  void phases(const std::vector<std::size_t>& start, const Bits& within) {
    std::uint64_t room = budget_;
    for (std::size_t v : start) room -= wval_[widx_[v]];
    Bits allowed(n_);
    for (std::size_t w = 0; w < wval_.size(); ++w) {
      Bits layer = within;
      layer.and_with(by_weight_[w]);
      allowed.or_with(layer);
      std::vector<std::size_t> cur = start;
      expand(cur, allowed, room);
    }
  }

  void expand(std::vector<std::size_t>& cur, Bits cand, std::uint64_t room) {
    for (std::size_t w = 0; w < wval_.size(); ++w)
      if (wval_[w] > room) cand.and_not(by_weight_[w]);
    if (cand.none()) {
      if (cur.size() > best_.size()) best_ = cur;
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    colour_sort(cand, cur.size(), room, order, bound);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (cur.size() + bound[idx] <= best_.size()) return;
      const std::size_t v = order[idx];
      cur.push_back(v);
      Bits next = cand;
      next.and_with(adj_[v]);
      expand(cur, next, room - wval_[widx_[v]]);
      cur.pop_back();
      cand.reset(v);
    }
  }

  // Most classes fitting in `room` when each class costs its lightest member.
  std::size_t knapsack(const std::vector<std::size_t>& count, std::uint64_t room) const {
    std::size_t taken = 0;
    for (std::size_t w = 0; w < count.size(); ++w) {
      if (count[w] == 0) continue;
      const std::uint64_t fit = room / wval_[w];
      if (fit < count[w]) return taken + static_cast<std::size_t>(fit);
      taken += count[w];
      room -= count[w] * wval_[w];
    }
    return taken;
  }

  void colour_sort(const Bits& cand, std::size_t depth, std::uint64_t room, std::vector<std::size_t>& order,
                   std::vector<std::size_t>& bound) const {
    const std::size_t need = best_.size() + 1 > depth ? best_.size() + 1 - depth : 1;
    std::vector<std::size_t> count(wval_.size(), 0);
    std::vector<std::size_t> members;
    Bits uncoloured = cand;
    std::size_t colour = 0;
    while (!uncoloured.none()) {
      ++colour;
      members.clear();
      std::size_t lightest = wval_.size();
      Bits q = uncoloured;
      for (long v = q.first(); v >= 0; v = q.first()) {
        const auto u = static_cast<std::size_t>(v);
        q.reset(u);
        q.and_not(adj_[u]);
        uncoloured.reset(u);
        members.push_back(u);
        lightest = std::min(lightest, widx_[u]);
      }
      ++count[lightest];
      if (colour < need) continue;
      const std::size_t b = std::min(colour, knapsack(count, room));
      for (std::size_t u : members) {
        order.push_back(u);
        bound.push_back(b);
      }
    }
  }

  std::vector<Bits> adj_;
  std::size_t n_;
  std::vector<std::size_t> widx_;
  std::vector<std::uint64_t> wval_;
  std::uint64_t budget_;
  std::vector<Bits> by_weight_;
  std::vector<std::size_t> best_;
};

}  // namespace

BruteResult brute_force_sp(const Params& params, int cap, bool canonical_first) {
  const int n = params.n(), k = params.k();
  if (n > cap) throw std::invalid_argument("brute force is capped at n = " + std::to_string(cap));
  if (n > 31) throw std::invalid_argument("brute force needs n <= 31");

  auto parts = k_partitions(n, k);
  std::vector<std::vector<std::size_t>> nbrs(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (compatible(parts[i], parts[j])) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
      }
  // A partition with a singleton is compatible with nothing; keep the rest,
  // highest degree first.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!nbrs[i].empty()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return nbrs[a].size() > nbrs[b].size(); });
  std::vector<std::size_t> pos(parts.size(), parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<Bits> adj(order.size(), Bits(order.size()));
  for (std::size_t i : order)
    for (std::size_t j : nbrs[i]) adj[pos[i]].set(pos[j]);

  // All classes of a system form an antichain, so sum 1/binom(n, |C|) <= 1.
  // Scaled by L = lcm_i binom(n, i) = lcm(1..n+1)/(n+1).
  std::uint64_t scale = 1;
  for (std::uint64_t d = 2; d <= static_cast<std::uint64_t>(n) + 1; ++d) scale = std::lcm(scale, d);
  scale /= static_cast<std::uint64_t>(n) + 1;
  std::vector<std::uint64_t> weight(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto mask : parts[order[i]])
      weight[i] += scale / static_cast<std::uint64_t>(binom(n, std::popcount(mask)));
  std::vector<std::uint64_t> distinct = weight;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::size_t> widx(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    widx[i] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), weight[i]) - distinct.begin());

  MaxClique solver(std::move(adj), std::move(widx), std::move(distinct), scale);
  std::vector<std::size_t> clique;
  if (!canonical_first) {
    clique = solver.solve();
  } else {
    // Any nonempty system can be relabelled to contain a fixed partition of
    // the shape of its first member, so one root per shape suffices.
    std::set<std::vector<int>> seen;
    for (std::size_t v = 0; v < order.size(); ++v) {
      std::vector<int> shape;
      for (auto mask : parts[order[v]]) shape.push_back(std::popcount(mask));
      std::sort(shape.begin(), shape.end());
      if (seen.insert(shape).second) clique = solver.solve_containing(v);
    }
  }
  if (clique.empty()) {
    order.assign(1, 0);
    clique.push_back(0);
  }
  std::vector<std::size_t> chosen;
  for (std::size_t v : clique) chosen.push_back(order[v]);
  std::sort(chosen.begin(), chosen.end());

  BruteResult res;
  res.value = chosen.size();
  res.witness.n = n;
  res.witness.k = k;
  for (std::size_t idx : chosen) {
    Partition part;
    for (auto mask : parts[idx]) {
      Class cls;
      for (int x = 0; x < n; ++x)
        if (mask >> x & 1u) cls.push_back(x);
      part.push_back(std::move(cls));
    }
    res.witness.partitions.push_back(std::move(part));
  }
  if (auto rep = verify_system(res.witness); !rep) throw std::logic_error("brute witness failed: " + rep.message);
  return res;
}

}  // namespace sperner
