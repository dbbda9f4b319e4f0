#include "sperner/construct.hpp"

#include "sperner/verify.hpp"

#include <algorithm>
#include <numeric>

namespace sperner {

GroundSplit GroundSplit::halves(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("halves needs an even n >= 2");
  return GroundSplit{{n / 2, n / 2}};
}

GroundSplit GroundSplit::equal_parts(int count, int size) {
  if (count < 1 || size < 1) throw std::invalid_argument("equal_parts needs positive count and size");
  return GroundSplit{std::vector<int>(static_cast<std::size_t>(count), size)};
}

int GroundSplit::n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int GroundSplit::offset(std::size_t part) const {
  return std::accumulate(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(part), 0);
}

namespace {

BigNat type_supply(const GroundSplit& split, const EdgeType& t) {
  if (t.size() != split.parts.size()) throw std::invalid_argument("edge type arity does not match split");
  BigNat v = 1;
  for (std::size_t i = 0; i < t.size(); ++i) v *= binom(split.parts[i], t[i]);
  return v;
}

std::string type_str(const EdgeType& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace

TypeSupply::TypeSupply(const GroundSplit& split, const std::vector<EdgeType>& types) {
  for (const auto& t : types) counts_[t] = type_supply(split, t);
}

BigNat TypeSupply::remaining(const EdgeType& t) const {
  auto it = counts_.find(t);
  return it == counts_.end() ? BigNat(0) : it->second;
}

void TypeSupply::take(const EdgeType& t, const BigNat& count) {
  auto it = counts_.find(t);
  if (it == counts_.end()) throw std::logic_error("type " + type_str(t) + " is not available");
  if (it->second < count) throw std::logic_error("type " + type_str(t) + " exhausted");
  it->second -= count;
}

TripleTypeList comp_triples(int t, const std::vector<BigNat>& e_in, int p) {
  if (t < 1) throw std::invalid_argument("comp_triples needs t >= 1");
  if (e_in.size() != static_cast<std::size_t>(t) + 1) throw std::invalid_argument("comp_triples needs t+1 counts");
  if (p < 0) throw std::invalid_argument("comp_triples needs p >= 0");
  for (const auto& v : e_in)
    if (v < 0) throw std::invalid_argument("comp_triples counts must be nonnegative");

  std::vector<BigNat> e = e_in;
  TripleTypeList out;

  auto total = [&] {
    BigNat s = e[0];
    for (int i = 1; i <= t; ++i) s += 2 * e[static_cast<std::size_t>(i)];
    return s;
  };
  auto at = [&](int i) -> BigNat& { return e[static_cast<std::size_t>(i)]; };

  // Takes a symmetric group of triples.
  auto emit = [&](const std::vector<TypeTriple>& group) {
    std::vector<long> use(static_cast<std::size_t>(2 * t + 1), 0);
    for (const auto& tr : group)
      for (int x : tr) ++use[static_cast<std::size_t>(x + t)];
    for (int i = 0; i <= t; ++i) {
      const long need = use[static_cast<std::size_t>(i + t)];
      if (need != use[static_cast<std::size_t>(t - i)]) throw std::logic_error("asymmetric triple group");
      if (at(i) < need)
        throw TripleHypothesisError("type supply", i,
                                    "comp_triples: not enough edges of type +-" + std::to_string(i));
    }
    for (int i = 0; i <= t; ++i) at(i) -= use[static_cast<std::size_t>(i + t)];
    for (auto tr : group) {
      std::sort(tr.begin(), tr.end());
      out.push_back(tr);
    }
  };

  while (p > 0) {
    if (total() < 3 * BigNat(p))
      throw TripleHypothesisError("p <= floor(total/3)", -1,
                                  "comp_triples: " + std::to_string(p) + " triples requested from " +
                                      total().str() + " edges");
    int s = t;
    while (s >= 0 && at(s) == 0) --s;
    if (p == 1) {
      if (at(0) < 1) throw TripleHypothesisError("e_0 >= 1", 0, "comp_triples: no type-0 edge left");
      emit({{-s, 0, s}});
      break;
    }
    for (int i = 0; i < s; ++i)
      if (at(i) < at(i + 1) + s)
        throw TripleHypothesisError("e_i >= e_{i+1} + s", i,
                                    "comp_triples: e_" + std::to_string(i) + " = " + at(i).str() +
                                        " < e_" + std::to_string(i + 1) + " + s = " + BigNat(at(i + 1) + s).str());
    const std::size_t before = out.size();
    if (s == 0) {
      emit({{0, 0, 0}});
    } else if (s == 1) {
      emit({{-1, 0, 1}});
    } else if (s == 2) {
      if (at(2) == 1 || p == 2)
        emit({{-2, 1, 1}, {2, -1, -1}});
      else
        emit({{-2, 0, 2}, {-2, 1, 1}, {2, -1, -1}});
    } else {
      const int b = (s % 2 == 1) ? (s - 1) / 2 : s - 1;
      int m = std::min(b, p / 2);
      if (at(s) < m) m = static_cast<int>(at(s));
      std::vector<TypeTriple> group;
      for (int i = 1; i <= m; ++i) {
        group.push_back({-s, i, s - i});
        group.push_back({s, -i, i - s});
      }
      emit(group);
    }
    p -= static_cast<int>(out.size() - before);
  }
  return out;
}

bool check_e_condition(int n, int t) {
  if (t < 1) throw std::invalid_argument("check_e_condition needs t >= 1");
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("check_e_condition needs an even n");
  const int h = n / 2;
  for (int i = 0; i < t; ++i)
    if (!(binom(h, t - i) * binom(h, t + i) > binom(h, t - i - 1) * binom(h, t + i + 1) + t)) return false;
  return true;
}

std::vector<EdgeType> ColourPlan::types(std::size_t colour) const {
  std::vector<EdgeType> out;
  for (const auto& g : colours.at(colour)) out.insert(out.end(), g.begin(), g.end());
  return out;
}

std::map<EdgeType, BigNat> ColourPlan::consumption() const {
  std::map<EdgeType, BigNat> use;
  for (const auto& col : colours)
    for (const auto& g : col)
      for (const auto& t : g) use[t] += 1;
  return use;
}

std::optional<std::string> check_plan(const ColourPlan& plan) {
  if (plan.split.n() != plan.n) return "split does not cover n";
  Params params(plan.n, plan.k);
  for (std::size_t ci = 0; ci < plan.colours.size(); ++ci) {
    auto ts = plan.types(ci);
    if (static_cast<int>(ts.size()) != plan.k) return "colour " + std::to_string(ci) + " does not have k edges";
    std::vector<int> sums(plan.split.parts.size(), 0);
    int big = 0;
    for (const auto& t : ts) {
      if (t.size() != sums.size()) return "colour " + std::to_string(ci) + " has a type of wrong arity";
      int size = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0) return "negative type entry";
        sums[i] += t[i];
        size += t[i];
      }
      if (size == params.c() + 1)
        ++big;
      else if (size != params.c())
        return "colour " + std::to_string(ci) + " has an edge of size " + std::to_string(size);
    }
    if (big != params.r()) return "colour " + std::to_string(ci) + " has the wrong number of large edges";
    if (sums != plan.split.parts) return "colour " + std::to_string(ci) + " does not fill every part";
  }
  for (const auto& [t, used] : plan.consumption())
    if (used > type_supply(plan.split, t)) return "type " + type_str(t) + " over-consumed";
  return std::nullopt;
}

namespace {

// Compatible pairs of one shape, available `avail` times.
struct PairPool {
  TypeGroup group;
  BigNat avail;
};

class PairDrawer {
 public:
  explicit PairDrawer(std::vector<PairPool> pools) : pools_(std::move(pools)) {}

  TypeGroup draw() {
    while (cursor_ < pools_.size() && pools_[cursor_].avail == 0) ++cursor_;
    if (cursor_ == pools_.size()) throw std::logic_error("construction supply exhausted");
    --pools_[cursor_].avail;
    return pools_[cursor_].group;
  }

 private:
  std::vector<PairPool> pools_;
  std::size_t cursor_ = 0;
};

EdgeType T2(int i, int j) { return EdgeType{i, j}; }

// Pairs (i, s-i) with (s-i, i) for i in [lo, hi], lo <= hi < s - i, plus the
// central pairs when s is even and s/2 lies in range.
std::vector<PairPool> sum_pools(const TypeSupply& supply, int s, int lo, int hi, bool central) {
  std::vector<PairPool> pools;
  for (int i = lo; i <= hi && 2 * i < s; ++i) {
    BigNat a = supply.remaining(T2(i, s - i));
    BigNat b = supply.remaining(T2(s - i, i));
    pools.push_back({{T2(i, s - i), T2(s - i, i)}, std::min(a, b)});
  }
  if (central && s % 2 == 0) pools.push_back({{T2(s / 2, s / 2), T2(s / 2, s / 2)}, supply.remaining(T2(s / 2, s / 2)) / 2});
  return pools;
}

void finish_plan(ColourPlan& plan, const TypeSupply& supply0) {
  std::map<EdgeType, BigNat> black = supply0.counts();
  for (const auto& [t, used] : plan.consumption()) {
    if (!black.count(t) || black[t] < used) throw std::logic_error("plan consumes more than the supply of " + type_str(t));
    black[t] -= used;
  }
  plan.black = std::move(black);
  if (auto why = check_plan(plan)) throw std::logic_error("invalid plan: " + *why);
}

void consume(TypeSupply& supply, const TypeGroup& g) {
  for (const auto& t : g) supply.take(t);
}

}  // namespace

ColourPlan plan_main(const Params& params, int u) {
  if (auto why = main_construction_violation(params, u)) throw NotApplicable("main construction " + *why);
  const int n = params.n(), k = params.k(), c = params.c(), r = params.r();
  const long p = static_cast<long>(main_construction_p(params, u));

  ColourPlan plan;
  plan.n = n;
  plan.k = k;
  plan.split = GroundSplit::halves(n);
  std::vector<EdgeType> types;
  for (int i = u; i <= c - u; ++i) types.push_back(T2(i, c - i));
  for (int i = 0; i <= u - 1; ++i) {
    types.push_back(T2(i, c + 1 - i));
    types.push_back(T2(c + 1 - i, i));
  }
  const TypeSupply supply0(plan.split, types);
  TypeSupply supply = supply0;
  plan.colours.assign(static_cast<std::size_t>(p), {});

  if (k % 2 == 0) {
    PairDrawer a(sum_pools(supply, c, u, c, true));
    PairDrawer b(sum_pools(supply, c + 1, 0, u - 1, false));
    for (auto& col : plan.colours) {
      for (int i = 0; i < r / 2; ++i) col.push_back(b.draw());
      for (int i = 0; i < (k - r) / 2; ++i) col.push_back(a.draw());
    }
  } else if (r != k - 1) {
    const int t = c / 2;
    std::vector<BigNat> e(static_cast<std::size_t>(t) + 1, 0);
    for (int i = 0; i <= t - u; ++i) e[static_cast<std::size_t>(i)] = binom(n / 2, t - i) * binom(n / 2, t + i);
    auto triples = comp_triples(t, e, static_cast<int>(p));
    for (std::size_t ci = 0; ci < triples.size(); ++ci) {
      TypeGroup g;
      for (int x : triples[ci]) g.push_back(T2(t + x, t - x));
      consume(supply, g);
      plan.colours[ci].push_back(std::move(g));
    }
    PairDrawer a(sum_pools(supply, c, u, c, true));
    PairDrawer b(sum_pools(supply, c + 1, 0, u - 1, false));
    for (auto& col : plan.colours) {
      for (int i = 0; i < (k - r - 3) / 2; ++i) col.push_back(a.draw());
      for (int i = 0; i < r / 2; ++i) col.push_back(b.draw());
    }
  } else {
    PairDrawer b(sum_pools(supply, c + 1, 0, u - 1, false));
    for (auto& col : plan.colours) {
      col.push_back({T2(c / 2, c / 2)});
      for (int i = 0; i < (k - 1) / 2; ++i) col.push_back(b.draw());
    }
  }
  finish_plan(plan, supply0);
  return plan;
}

ColourPlan plan_alt(const Params& params, int u) {
  if (auto why = alt_construction_violation(params, u)) throw NotApplicable("alternate construction " + *why);
  const int n = params.n(), k = params.k(), c = params.c(), r = params.r();
  const long p = static_cast<long>(alt_construction_p(params, u));
  const int t = (c + 1) / 2;

  ColourPlan plan;
  plan.n = n;
  plan.k = k;
  plan.split = GroundSplit::halves(n);
  std::vector<EdgeType> types;
  for (int i = u + 1; i <= c; ++i) {
    types.push_back(T2(i, c - i));
    types.push_back(T2(c - i, i));
  }
  for (int i = c + 1 - u; i <= u; ++i) types.push_back(T2(i, c + 1 - i));
  const TypeSupply supply0(plan.split, types);
  TypeSupply supply = supply0;
  plan.colours.assign(static_cast<std::size_t>(p), {});

  PairDrawer a(sum_pools(supply, c, 0, c - u - 1, false));
  if (r != 1) {
    std::vector<BigNat> e(static_cast<std::size_t>(t) + 1, 0);
    for (int i = 0; i <= u - t; ++i) e[static_cast<std::size_t>(i)] = binom(n / 2, t - i) * binom(n / 2, t + i);
    auto triples = comp_triples(t, e, static_cast<int>(p));
    for (std::size_t ci = 0; ci < triples.size(); ++ci) {
      TypeGroup g;
      for (int x : triples[ci]) g.push_back(T2(t + x, t - x));
      consume(supply, g);
      plan.colours[ci].push_back(std::move(g));
    }
    PairDrawer b(sum_pools(supply, c + 1, c + 1 - u, u, true));
    for (auto& col : plan.colours) {
      for (int i = 0; i < (r - 3) / 2; ++i) col.push_back(b.draw());
      for (int i = 0; i < (k - r) / 2; ++i) col.push_back(a.draw());
    }
  } else {
    for (auto& col : plan.colours) {
      col.push_back({T2(t, t)});
      for (int i = 0; i < (k - 1) / 2; ++i) col.push_back(a.draw());
    }
  }
  finish_plan(plan, supply0);
  return plan;
}

ColourPlan plan_3k6(int k) {
  if (k < 11 || k % 6 == 4) throw NotApplicable("3k-6 family requires k >= 11 and k != 4 mod 6");
  const int part = k - 2;
  const long p = static_cast<long>(part) * part / 2;

  ColourPlan plan;
  plan.n = 3 * k - 6;
  plan.k = k;
  plan.split = GroundSplit::equal_parts(3, part);
  // A_i meets the two parts other than i; B_i is a triple inside part i.
  auto A = [](int i) {
    EdgeType t{1, 1, 1};
    t[static_cast<std::size_t>(i)] = 0;
    return t;
  };
  auto B = [](int i) {
    EdgeType t{0, 0, 0};
    t[static_cast<std::size_t>(i)] = 3;
    return t;
  };
  std::vector<EdgeType> types;
  for (int i = 0; i < 3; ++i) {
    types.push_back(A(i));
    types.push_back(B(i));
  }
  const TypeSupply supply0(plan.split, types);

  std::array<long, 3> group_size{};
  if (k % 6 == 5)
    group_size = {(p + 2) / 3, (p - 1) / 3, (p - 1) / 3};
  else
    group_size = {p / 3, p / 3, p - 2 * (p / 3)};

  long index = 0;
  for (int j = 0; j < 3; ++j)
    for (long m = 0; m < group_size[static_cast<std::size_t>(j)]; ++m, ++index) {
      std::array<int, 3> a{};
      for (int i = 0; i < 3; ++i) {
        if (k % 3 == 0)
          a[static_cast<std::size_t>(i)] = 2;
        else if (k % 6 == 1)
          a[static_cast<std::size_t>(i)] = (i == j) ? 4 : 1;
        else
          a[static_cast<std::size_t>(i)] = (i == j) ? 0 : 3;
      }
      TypeGroup cross, inner;
      std::array<int, 3> deg{};
      for (int i = 0; i < 3; ++i)
        for (int m2 = 0; m2 < a[static_cast<std::size_t>(i)]; ++m2) {
          cross.push_back(A(i));
          for (int x = 0; x < 3; ++x)
            if (x != i) ++deg[static_cast<std::size_t>(x)];
        }
      for (int x = 0; x < 3; ++x) {
        const int left = part - deg[static_cast<std::size_t>(x)];
        if (left < 0 || left % 3 != 0) throw std::logic_error("3k-6 family: part cannot be filled by triples");
        for (int m2 = 0; m2 < left / 3; ++m2) inner.push_back(B(x));
      }
      plan.colours.push_back({std::move(cross), std::move(inner)});
    }
  finish_plan(plan, supply0);
  return plan;
}

PartitionSystem build_3k6(int k, std::uint64_t seed) { return realize(plan_3k6(k), seed); }

PartitionSystem product_build(const PartitionSystem& sysA, const PartitionSystem& sysB) {
  if (sysA.k != sysB.k) throw std::invalid_argument("product needs equal k");
  const int k = sysA.k;
  PartitionSystem out;
  out.n = sysA.n + sysB.n;
  out.k = k;
  out.partitions.reserve(sysA.size() * sysB.size() * static_cast<std::size_t>(k));
  for (const auto& pa : sysA.partitions)
    for (const auto& pb : sysB.partitions)
      for (int y = 0; y < k; ++y) {
        Partition part;
        for (int z = 0; z < k; ++z) {
          Class cls = pa.at(static_cast<std::size_t>(z));
          for (int x : pb.at(static_cast<std::size_t>((z + y) % k))) cls.push_back(x + sysA.n);
          std::sort(cls.begin(), cls.end());
          part.push_back(std::move(cls));
        }
        out.partitions.push_back(std::move(part));
      }
  if (auto rep = verify_system(out); !rep) throw std::logic_error("product output failed verification: " + rep.message);
  return out;
}

PartitionSystem single_partition(const Params& params) {
  PartitionSystem out;
  out.n = params.n();
  out.k = params.k();
  Partition part;
  int next = 0;
  for (int i = 0; i < params.k(); ++i) {
    const int size = params.c() + (i < params.r() ? 1 : 0);
    Class cls;
    for (int j = 0; j < size; ++j) cls.push_back(next++);
    part.push_back(std::move(cls));
  }
  out.partitions.push_back(std::move(part));
  return out;
}

DirectBuild build_direct(const Params& params, std::uint64_t seed) {
  struct Option {
    BigNat value;
    Source source;
  };
  std::vector<Option> options;
  for (int u : admissible_main_u(params)) options.push_back({main_construction_p(params, u), {SourceKind::main, {u}}});
  for (int u : admissible_alt_u(params)) options.push_back({alt_construction_p(params, u), {SourceKind::alt, {u}}});
  if (auto ex = exact_known(params); ex && ex->source.kind == SourceKind::family_3k6)
    options.push_back({ex->value, ex->source});
  const Option* best = nullptr;
  for (const auto& o : options)
    if (!best || o.value > best->value) best = &o;
  if (!best || best->value <= 1) return {single_partition(params), Source{SourceKind::exact_trivial, {}}};
  switch (best->source.kind) {
    case SourceKind::main: return {realize(plan_main(params, best->source.args[0]), seed), best->source};
    case SourceKind::alt: return {realize(plan_alt(params, best->source.args[0]), seed), best->source};
    default: return {build_3k6(params.k(), seed), best->source};
  }
}

}  // namespace sperner
