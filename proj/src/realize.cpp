#include "sperner/construct.hpp"

#include "sperner/verify.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace sperner {

namespace {

using Edge = std::uint64_t;

struct Slot {
  int colour;
  int index;
};

// All edges of one type, in a fixed order.
std::vector<Edge> enumerate_type(const GroundSplit& split, const EdgeType& t) {
  std::vector<Edge> acc{0};
  for (std::size_t part = 0; part < t.size(); ++part) {
    const int off = split.offset(part);
    const int size = split.parts[part];
    const int d = t[part];
    std::vector<Edge> subs;
    if (d == 0) {
      subs.push_back(0);
    } else {
      // Gosper's hack over d-subsets of a size-bit word.
      Edge s = (Edge{1} << d) - 1;
      const Edge limit = size >= 64 ? ~Edge{0} : Edge{1} << size;
      while (s < limit) {
        subs.push_back(s << off);
        const Edge c = s & (~s + 1);
        const Edge r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
      }
    }
    std::vector<Edge> next;
    next.reserve(acc.size() * subs.size());
    for (Edge a : acc)
      for (Edge b : subs) next.push_back(a | b);
    acc = std::move(next);
  }
  return acc;
}

Edge random_edge(const GroundSplit& split, const EdgeType& t, std::mt19937_64& rng) {
  Edge e = 0;
  for (std::size_t part = 0; part < t.size(); ++part) {
    std::vector<int> pts(static_cast<std::size_t>(split.parts[part]));
    std::iota(pts.begin(), pts.end(), split.offset(part));
    for (int i = 0; i < t[part]; ++i) {
      std::uniform_int_distribution<int> pick(i, split.parts[part] - 1);
      std::swap(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(pick(rng))]);
      e |= Edge{1} << pts[static_cast<std::size_t>(i)];
    }
  }
  return e;
}

class Realizer {
 public:
  Realizer(const ColourPlan& plan, std::uint64_t seed) : plan_(plan), rng_(seed), n_(plan.n) {
    const std::size_t p = plan.size();
    edges_.resize(p);
    deg_.assign(p * static_cast<std::size_t>(n_), 0);
    for (std::size_t c = 0; c < p; ++c) edges_[c].resize(plan.types(c).size());
  }

  PartitionSystem run() {
    assign_initial();
    for (std::size_t part = 0; part < plan_.split.parts.size(); ++part) balance_part(part);
    return emit();
  }

 private:
  int& deg(std::size_t colour, int x) { return deg_[colour * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x)]; }

  void place(int colour, int index, Edge e) {
    edges_[static_cast<std::size_t>(colour)][static_cast<std::size_t>(index)] = e;
    owner_[e] = Slot{colour, index};
    for (Edge m = e; m; m &= m - 1) ++deg(static_cast<std::size_t>(colour), std::countr_zero(m));
  }

  void assign_initial() {
    std::map<EdgeType, std::vector<Slot>> demand;
    for (std::size_t c = 0; c < plan_.size(); ++c) {
      auto ts = plan_.types(c);
      for (std::size_t i = 0; i < ts.size(); ++i) demand[ts[i]].push_back({static_cast<int>(c), static_cast<int>(i)});
    }
    std::size_t total = 0;
    for (const auto& [t, slots] : demand) total += slots.size();
    owner_.reserve(total * 2);

    for (const auto& [t, slots] : demand) {
      BigNat supply = 1;
      for (std::size_t i = 0; i < t.size(); ++i) supply *= binom(plan_.split.parts[i], t[i]);
      if (supply < slots.size()) throw RealizationError("plan demands more edges than exist");
      const BigNat want = slots.size();
      if (supply <= 4 * want + 2000000) {
        auto all = enumerate_type(plan_.split, t);
        for (std::size_t i = 0; i < slots.size(); ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
          std::swap(all[i], all[pick(rng_)]);
          place(slots[i].colour, slots[i].index, all[i]);
        }
      } else {
        std::unordered_set<Edge> used;
        for (const auto& s : slots) {
          Edge e;
          do e = random_edge(plan_.split, t, rng_);
          while (!used.insert(e).second);
          place(s.colour, s.index, e);
        }
      }
    }
  }

  struct Step {
    int from;        // previous colour in the chain, -1 at the start
    int from_index;  // its slot holding the edge that moves here
    int img_index;   // slot here holding that edge's image
  };

  // Moves one unit of degree at x to y for `start`, via a chain of
  // type-preserving swaps E <-> E - x + y ending at an unused edge or at a
  // colour with deg(x) < deg(y).
  void augment(int start, int x, int y) {
    const Edge bx = Edge{1} << x, by = Edge{1} << y;
    std::unordered_map<int, Step> parent;
    std::vector<int> queue{start};
    parent[start] = {-1, -1, -1};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int a = queue[head];
      const auto& es = edges_[static_cast<std::size_t>(a)];
      for (std::size_t i = 0; i < es.size(); ++i) {
        const Edge e = es[i];
        if (!(e & bx) || (e & by)) continue;
        const Edge img = e ^ bx ^ by;
        auto it = owner_.find(img);
        if (it == owner_.end()) {
          owner_.erase(e);
          move(a, static_cast<int>(i), img);
          unwind(parent, a);
          return;
        }
        const int b = it->second.colour;
        if (parent.count(b)) continue;
        parent[b] = {a, static_cast<int>(i), it->second.index};
        if (deg(static_cast<std::size_t>(b), x) < deg(static_cast<std::size_t>(b), y)) {
          unwind(parent, b);
          return;
        }
        queue.push_back(b);
      }
    }
    throw RealizationError("no augmenting swap chain found");
  }

  void move(int colour, int index, Edge e) {
    auto& slot = edges_[static_cast<std::size_t>(colour)][static_cast<std::size_t>(index)];
    for (Edge m = slot; m; m &= m - 1) --deg(static_cast<std::size_t>(colour), std::countr_zero(m));
    slot = e;
    for (Edge m = e; m; m &= m - 1) ++deg(static_cast<std::size_t>(colour), std::countr_zero(m));
    owner_[e] = Slot{colour, index};
  }

  // Swaps each edge on the chain with its image, from `last` back to the start.
  void unwind(const std::unordered_map<int, Step>& parent, int last) {
    for (int cur = last;;) {
      const Step step = parent.at(cur);
      if (step.from < 0) return;
      const Edge given = edges_[static_cast<std::size_t>(step.from)][static_cast<std::size_t>(step.from_index)];
      const Edge img = edges_[static_cast<std::size_t>(cur)][static_cast<std::size_t>(step.img_index)];
      move(cur, step.img_index, given);
      move(step.from, step.from_index, img);
      cur = step.from;
    }
  }

  void balance_part(std::size_t part) {
    const int off = plan_.split.offset(part);
    const int size = plan_.split.parts[part];
    for (std::size_t c = 0; c < plan_.size(); ++c) {
      for (;;) {
        int x = -1, y = -1;
        for (int v = off; v < off + size; ++v) {
          const int d = deg(c, v);
          if (d >= 2 && x < 0) x = v;
          if (d == 0 && y < 0) y = v;
        }
        if (x < 0) break;
        if (y < 0) throw RealizationError("colour does not fill its part");
        augment(static_cast<int>(c), x, y);
      }
    }
  }

  PartitionSystem emit() const {
    PartitionSystem sys;
    sys.n = plan_.n;
    sys.k = plan_.k;
    sys.partitions.reserve(plan_.size());
    for (const auto& es : edges_) {
      Partition part;
      for (Edge e : es) {
        Class cls;
        for (Edge m = e; m; m &= m - 1) cls.push_back(std::countr_zero(m));
        part.push_back(std::move(cls));
      }
      sys.partitions.push_back(std::move(part));
    }
    return sys;
  }

  const ColourPlan& plan_;
  std::mt19937_64 rng_;
  int n_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<int> deg_;
  std::unordered_map<Edge, Slot> owner_;
};

}  // namespace

PartitionSystem realize(const ColourPlan& plan, std::uint64_t seed) {
  if (plan.n > 64) throw std::invalid_argument("realize supports n <= 64");
  if (auto why = check_plan(plan)) throw std::invalid_argument("invalid plan: " + *why);
  PartitionSystem sys = Realizer(plan, seed).run();
  if (auto rep = verify_system(sys); !rep) throw RealizationError("realized system failed verification: " + rep.message);
  return sys;
}

}  // namespace sperner
