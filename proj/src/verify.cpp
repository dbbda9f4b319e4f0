#include "sperner/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace sperner {

namespace {

// Dynamic bitset over the ground set.
struct Mask {
  std::vector<std::uint64_t> w;

  explicit Mask(int n = 0) : w((static_cast<std::size_t>(n) + 63) / 64, 0) {}
  void set(int i) { w[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  bool subset_of(const Mask& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  friend bool operator==(const Mask&, const Mask&) = default;
};

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : m.w) h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

VerifyReport fail(FailureKind kind, std::size_t part, std::size_t cls, std::string msg) {
  VerifyReport r;
  r.ok = false;
  r.kind = kind;
  r.a_part = part;
  r.a_class = cls;
  r.message = std::move(msg);
  return r;
}

VerifyReport check_shape(const PartitionSystem& sys) {
  if (sys.n < 1 || sys.k < 1 || sys.k > sys.n)
    return fail(FailureKind::bad_shape, 0, 0, "need 1 <= k <= n");
  std::vector<int> seen(static_cast<std::size_t>(sys.n));
  for (std::size_t pi = 0; pi < sys.partitions.size(); ++pi) {
    const auto& part = sys.partitions[pi];
    if (static_cast<int>(part.size()) != sys.k)
      return fail(FailureKind::bad_shape, pi, 0,
                  "partition " + std::to_string(pi) + " has " + std::to_string(part.size()) + " classes");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t ci = 0; ci < part.size(); ++ci) {
      if (part[ci].empty())
        return fail(FailureKind::bad_shape, pi, ci,
                    "partition " + std::to_string(pi) + " class " + std::to_string(ci) + " is empty");
      for (int x : part[ci]) {
        if (x < 0 || x >= sys.n)
          return fail(FailureKind::bad_shape, pi, ci, "element " + std::to_string(x) + " out of range");
        if (seen[static_cast<std::size_t>(x)]++)
          return fail(FailureKind::not_partition, pi, ci,
                      "partition " + std::to_string(pi) + " repeats element " + std::to_string(x));
      }
    }
    for (int x = 0; x < sys.n; ++x)
      if (!seen[static_cast<std::size_t>(x)])
        return fail(FailureKind::not_partition, pi, 0,
                    "partition " + std::to_string(pi) + " misses element " + std::to_string(x));
  }
  return {};
}

using Witness = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

VerifyReport subset_report(const Witness& w) {
  VerifyReport r;
  r.ok = false;
  r.kind = FailureKind::subset;
  std::tie(r.a_part, r.a_class, r.b_part, r.b_class) = w;
  r.message = "class " + std::to_string(r.a_class) + " of partition " + std::to_string(r.a_part) +
              " is a subset of class " + std::to_string(r.b_class) + " of partition " +
              std::to_string(r.b_part);
  return r;
}

}  // namespace

VerifyReport verify_system(const PartitionSystem& sys) {
  if (auto shape = check_shape(sys); !shape) return shape;

  struct Ref {
    std::size_t part;
    std::size_t cls;
  };
  std::vector<Ref> refs;
  std::vector<Mask> masks;
  std::vector<int> sizes;
  for (std::size_t pi = 0; pi < sys.partitions.size(); ++pi)
    for (std::size_t ci = 0; ci < sys.partitions[pi].size(); ++ci) {
      Mask m(sys.n);
      for (int x : sys.partitions[pi][ci]) m.set(x);
      refs.push_back({pi, ci});
      masks.push_back(std::move(m));
      sizes.push_back(static_cast<int>(sys.partitions[pi][ci].size()));
    }
  const std::size_t total = refs.size();

  std::vector<int> distinct_sizes = sizes;
  std::sort(distinct_sizes.begin(), distinct_sizes.end());
  distinct_sizes.erase(std::unique(distinct_sizes.begin(), distinct_sizes.end()), distinct_sizes.end());

  // Cost of enumerating, for every class, its subsets of every occurring size.
  double enum_cost = 0;
  for (int s : sizes)
    for (int d : distinct_sizes)
      if (d <= s) enum_cost += std::exp(std::lgamma(s + 1.0) - std::lgamma(d + 1.0) - std::lgamma(s - d + 1.0));
  const double pair_cost = 0.5 * static_cast<double>(total) * static_cast<double>(total);

  std::optional<Witness> best;
  auto consider = [&](std::size_t a, std::size_t b) {
    Witness w{refs[a].part, refs[a].cls, refs[b].part, refs[b].cls};
    if (!best || w < *best) best = w;
  };

  if (enum_cost < pair_cost) {
    std::unordered_map<Mask, std::vector<std::size_t>, MaskHash> index;
    index.reserve(total * 2);
    for (std::size_t i = 0; i < total; ++i) index[masks[i]].push_back(i);
    for (std::size_t b = 0; b < total; ++b) {
      const auto& elems = sys.partitions[refs[b].part][refs[b].cls];
      const int s = static_cast<int>(elems.size());
      for (int d : distinct_sizes) {
        if (d > s) break;
        std::vector<int> idx(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
          Mask m(sys.n);
          for (int i : idx) m.set(elems[static_cast<std::size_t>(i)]);
          if (auto it = index.find(m); it != index.end())
            for (std::size_t a : it->second)
              if (refs[a].part != refs[b].part) consider(a, b);
          int j = d - 1;
          while (j >= 0 && idx[static_cast<std::size_t>(j)] == s - d + j) --j;
          if (j < 0) break;
          ++idx[static_cast<std::size_t>(j)];
          for (int i = j + 1; i < d; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
      }
    }
  } else {
    for (std::size_t a = 0; a < total && !best; ++a)
      for (std::size_t b = 0; b < total; ++b) {
        if (refs[a].part == refs[b].part || sizes[a] > sizes[b]) continue;
        if (masks[a].subset_of(masks[b])) {
          consider(a, b);
          break;
        }
      }
  }
  if (best) return subset_report(*best);
  return {};
}

bool verify_almost_uniform(const PartitionSystem& sys, const Params& params) {
  if (sys.n != params.n() || sys.k != params.k())
    throw std::invalid_argument("system dimensions do not match params");
  const std::size_t c = static_cast<std::size_t>(params.c());
  for (const auto& part : sys.partitions) {
    if (static_cast<int>(part.size()) != params.k()) return false;
    int big = 0;
    for (const auto& cls : part) {
      if (cls.size() == c + 1)
        ++big;
      else if (cls.size() != c)
        return false;
    }
    if (big != params.r()) return false;
  }
  return true;
}

namespace {

void check_set(int m, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= m) throw std::invalid_argument("element out of range");
    if (i && s[i - 1] >= s[i]) throw std::invalid_argument("sets must be sorted and duplicate free");
  }
}

// Calls f on every size-d sublist of `from`.
template <class F>
void for_each_combination(const std::vector<int>& from, int d, F&& f) {
  const int s = static_cast<int>(from.size());
  if (d < 0 || d > s) return;
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<int> out(static_cast<std::size_t>(d));
  for (;;) {
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = from[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    f(out);
    int j = d - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == s - d + j) --j;
    if (j < 0) return;
    ++idx[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < d; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
}

}  // namespace

SetFamily shadow(int m, const SetFamily& family, ShadowDirection dir, int target) {
  if (m < 0) throw std::invalid_argument("negative ground set size");
  if (target < 0 || target > m) throw std::invalid_argument("target size outside [0, m]");
  for (const auto& s : family) {
    check_set(m, s);
    const int i = static_cast<int>(s.size());
    if (i != static_cast<int>(family.front().size()))
      throw std::invalid_argument("family members must share one cardinality");
    if (dir == ShadowDirection::down && target >= i)
      throw std::invalid_argument("down shadow needs target below the member size");
    if (dir == ShadowDirection::up && target <= i)
      throw std::invalid_argument("up shadow needs target above the member size");
  }
  SetFamily out;
  for (const auto& s : family) {
    if (dir == ShadowDirection::down) {
      for_each_combination(s, target, [&](const std::vector<int>& sub) { out.push_back(sub); });
    } else {
      std::vector<int> rest;
      for (int x = 0, j = 0; x < m; ++x) {
        if (j < static_cast<int>(s.size()) && s[static_cast<std::size_t>(j)] == x)
          ++j;
        else
          rest.push_back(x);
      }
      for_each_combination(rest, target - static_cast<int>(s.size()), [&](const std::vector<int>& add) {
        std::vector<int> sup = s;
        sup.insert(sup.end(), add.begin(), add.end());
        std::sort(sup.begin(), sup.end());
        out.push_back(std::move(sup));
      });
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Clutter::Clutter(int vertices, SetFamily edges) : vertices_(vertices), edges_(std::move(edges)) {
  if (vertices < 0) throw std::invalid_argument("negative vertex count");
  for (const auto& e : edges_) check_set(vertices, e);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    for (std::size_t j = 0; j < edges_.size(); ++j) {
      if (i == j) continue;
      const auto& a = edges_[i];
      const auto& b = edges_[j];
      if (a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()))
        throw std::invalid_argument("edges " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are comparable");
    }
}

bool min_shadow_floor(const Clutter& h, int c) {
  if (c < 0) throw std::invalid_argument("c must be nonnegative");
  SetFamily sh;
  for (const auto& e : h.edges()) {
    if (static_cast<int>(e.size()) < c) throw std::invalid_argument("every edge must have size >= c");
    for_each_combination(e, c, [&](const std::vector<int>& sub) { sh.push_back(sub); });
  }
  std::sort(sh.begin(), sh.end());
  sh.erase(std::unique(sh.begin(), sh.end()), sh.end());
  // binom(2c+1, c) + 1 fits easily for the small c this is used with.
  long double cap = 1;
  for (int i = 1; i <= c; ++i) cap = cap * (c + 1 + i) / i;
  const long double need = std::min<long double>(static_cast<long double>(h.edges().size()), cap + 1);
  return static_cast<long double>(sh.size()) >= need;
}

DetectingArray to_detecting_array(const PartitionSystem& sys) {
  if (auto shape = check_shape(sys); !shape) throw std::invalid_argument(shape.message);
  DetectingArray arr;
  arr.rows = sys.n;
  arr.cols = static_cast<int>(sys.partitions.size());
  arr.symbols = sys.k;
  arr.data.assign(static_cast<std::size_t>(arr.rows) * static_cast<std::size_t>(arr.cols), 0);
  for (std::size_t j = 0; j < sys.partitions.size(); ++j)
    for (std::size_t l = 0; l < sys.partitions[j].size(); ++l)
      for (int x : sys.partitions[j][l])
        arr.data[static_cast<std::size_t>(x) * static_cast<std::size_t>(arr.cols) + j] = static_cast<int>(l) + 1;
  return arr;
}

VerifyReport verify_detecting(const DetectingArray& arr) {
  if (arr.rows < 1 || arr.cols < 0 || arr.symbols < 1 ||
      arr.data.size() != static_cast<std::size_t>(arr.rows) * static_cast<std::size_t>(arr.cols))
    throw std::invalid_argument("malformed detecting array");
  for (int v : arr.data)
    if (v < 1 || v > arr.symbols) throw std::invalid_argument("symbol out of range");

  const std::size_t cols = static_cast<std::size_t>(arr.cols);
  const std::size_t words = (cols + 63) / 64;
  const std::size_t rows = static_cast<std::size_t>(arr.rows);
  // agree[a * rows + b] has bit j set when rows a and b carry the same symbol in column j.
  std::vector<std::uint64_t> agree(rows * rows * words, 0);
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < rows; ++b) {
      std::uint64_t* dst = &agree[(a * rows + b) * words];
      for (std::size_t j = 0; j < cols; ++j)
        if (arr.data[a * cols + j] == arr.data[b * cols + j]) dst[j >> 6] |= std::uint64_t{1} << (j & 63);
    }

  std::vector<std::uint64_t> acc(words);
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < cols; ++j)
    for (int sym = 1; sym <= arr.symbols; ++sym) {
      members.clear();
      for (std::size_t i = 0; i < rows; ++i)
        if (arr.data[i * cols + j] == sym) members.push_back(i);
      if (members.empty()) {
        VerifyReport r = fail(FailureKind::bad_shape, j, static_cast<std::size_t>(sym - 1),
                              "symbol " + std::to_string(sym) + " missing from column " + std::to_string(j));
        return r;
      }
      // The only row set in column j' that can contain this one is the one
      // holding the smallest member; it does iff every member agrees with it.
      const std::size_t i0 = members.front();
      std::fill(acc.begin(), acc.end(), ~std::uint64_t{0});
      for (std::size_t i : members) {
        const std::uint64_t* src = &agree[(i0 * rows + i) * words];
        for (std::size_t w = 0; w < words; ++w) acc[w] &= src[w];
      }
      acc[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
      for (std::size_t w = 0; w < words; ++w) {
        if (!acc[w]) continue;
        std::size_t j2 = w * 64 + static_cast<std::size_t>(__builtin_ctzll(acc[w]));
        if (j2 >= cols) break;
        VerifyReport r;
        r.ok = false;
        r.kind = FailureKind::subset;
        r.a_part = j;
        r.a_class = static_cast<std::size_t>(sym - 1);
        r.b_part = j2;
        r.b_class = static_cast<std::size_t>(arr.data[i0 * cols + j2] - 1);
        r.message = "rows of symbol " + std::to_string(sym) + " in column " + std::to_string(j) +
                    " are contained in rows of symbol " + std::to_string(r.b_class + 1) + " in column " +
                    std::to_string(j2);
        return r;
      }
    }
  return {};
}

}  // namespace sperner
