#include "jpl/ordering.hpp"

#include "jpl/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

namespace jpl {

PivotPair::PivotPair(int a, int b) : r(std::min(a, b)), s(std::max(a, b)) {
  if (a == b) throw std::invalid_argument("pivot pair needs two distinct indices");
  if (r < 0) throw std::out_of_range("pivot pair index is negative");
}

std::vector<PivotPair> all_pairs(int n) {
  if (n < 2) throw std::invalid_argument("all_pairs: n must be at least 2");
  std::vector<PivotPair> out;
  out.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) out.emplace_back(r, s);
  return out;
}

PivotOrdering::PivotOrdering(int n, std::vector<PivotPair> seq) : n_(n), seq_(std::move(seq)) {
  if (n < 2) throw std::invalid_argument("ordering: n must be at least 2");
  if (static_cast<int>(seq_.size()) != pair_count(n))
    throw std::invalid_argument("ordering: expected " + std::to_string(pair_count(n)) + " pairs, got " +
                                std::to_string(seq_.size()));
  std::set<PivotPair> seen;
  for (const PivotPair& p : seq_) {
    if (p.s >= n) throw std::invalid_argument("ordering: pair index exceeds dimension");
    if (!seen.insert(p).second) throw std::invalid_argument("ordering: duplicate pair");
  }
}

IndexPermutation::IndexPermutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> hit(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || hit[static_cast<std::size_t>(v)])
      throw std::invalid_argument("permutation: image is not a bijection");
    hit[static_cast<std::size_t>(v)] = true;
  }
}

IndexPermutation IndexPermutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  return IndexPermutation(std::move(image));
}

IndexPermutation IndexPermutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  return IndexPermutation(std::move(inv));
}

IndexPermutation IndexPermutation::after(const IndexPermutation& first) const {
  if (first.n() != n()) throw std::invalid_argument("permutation: size mismatch in composition");
  std::vector<int> out(image_.size());
  for (int i = 0; i < n(); ++i) out[static_cast<std::size_t>(i)] = (*this)(first(i));
  return IndexPermutation(std::move(out));
}

bool IndexPermutation::isIdentity() const {
  for (int i = 0; i < n(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

std::vector<IndexPermutation> all_permutations(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::vector<IndexPermutation> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::vector<PivotOrdering> enumerate_orderings(int n) {
  if (n > kMaxSearchSize)
    throw EnumerationTooLarge("enumeration too large: n = " + std::to_string(n) + " exceeds " +
                              std::to_string(kMaxSearchSize));
  std::vector<PivotPair> pairs = all_pairs(n);
  std::vector<PivotOrdering> out;
  do {
    out.emplace_back(n, pairs);
  } while (std::next_permutation(pairs.begin(), pairs.end()));
  return out;
}

PivotOrdering reverse(const PivotOrdering& o) {
  std::vector<PivotPair> seq(o.pairs().rbegin(), o.pairs().rend());
  return PivotOrdering(o.n(), std::move(seq));
}

PivotOrdering admissible_transpose(const PivotOrdering& o, int r) {
  if (r < 0 || r + 1 >= o.size()) throw std::out_of_range("transpose position out of range");
  if (!o[r].disjoint(o[r + 1]))
    throw NotAdmissible("not admissible: pairs at positions " + std::to_string(r) + " and " +
                        std::to_string(r + 1) + " share an index");
  std::vector<PivotPair> seq = o.pairs();
  std::swap(seq[static_cast<std::size_t>(r)], seq[static_cast<std::size_t>(r) + 1]);
  return PivotOrdering(o.n(), std::move(seq));
}

PivotOrdering cyclic_shift(const PivotOrdering& o, int l) {
  if (l < 0 || l >= o.size()) throw std::out_of_range("shift length out of range");
  std::vector<PivotPair> seq = o.pairs();
  std::rotate(seq.begin(), seq.begin() + l, seq.end());
  return PivotOrdering(o.n(), std::move(seq));
}

PivotOrdering permute(const PivotOrdering& o, const IndexPermutation& q) {
  if (q.n() != o.n()) throw std::invalid_argument("permutation size does not match ordering");
  std::vector<PivotPair> seq;
  seq.reserve(o.pairs().size());
  for (const PivotPair& p : o) seq.emplace_back(q(p.r), q(p.s));
  return PivotOrdering(o.n(), std::move(seq));
}

PivotOrdering apply_step(const PivotOrdering& o, const RelationStep& step) {
  return std::visit(
      [&](const auto& st) -> PivotOrdering {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, AdjacentTranspose>) return admissible_transpose(o, st.position);
        else if constexpr (std::is_same_v<T, CyclicShift>) return cyclic_shift(o, st.length);
        else return permute(o, st.q);
      },
      step);
}

int Certificate::shift_count() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const RelationStep& s) {
    return std::holds_alternative<CyclicShift>(s);
  }));
}

int Certificate::total_shift() const {
  int total = 0;
  for (const RelationStep& s : steps)
    if (const auto* sh = std::get_if<CyclicShift>(&s)) total += sh->length;
  return total % source.size();
}

Certificate Certificate::inverse() const {
  std::vector<RelationStep> inv;
  inv.reserve(steps.size());
  const int big_n = source.size();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, AdjacentTranspose>) inv.emplace_back(st);
          else if constexpr (std::is_same_v<T, CyclicShift>)
            inv.emplace_back(CyclicShift{(big_n - st.length) % big_n});
          else inv.emplace_back(Permute{st.q.inverse()});
        },
        *it);
  }
  return Certificate{target, std::move(inv), source};
}

Certificate Certificate::then(const Certificate& next) const {
  if (!(target == next.source)) throw BrokenCertificate("cannot chain certificates: endpoints differ");
  Certificate out{source, steps, next.target};
  out.steps.insert(out.steps.end(), next.steps.begin(), next.steps.end());
  return out;
}

PivotOrdering replay(const Certificate& cert) {
  // Permute steps must form one contiguous block touching an end of the chain.
  std::vector<std::size_t> perm_at;
  for (std::size_t k = 0; k < cert.steps.size(); ++k)
    if (std::holds_alternative<Permute>(cert.steps[k])) perm_at.push_back(k);
  if (!perm_at.empty()) {
    const bool contiguous = perm_at.back() - perm_at.front() + 1 == perm_at.size();
    const bool at_end = perm_at.front() == 0 || perm_at.back() + 1 == cert.steps.size();
    if (!contiguous || !at_end)
      throw BrokenCertificate("broken certificate: permutation steps must form one block at an end of the chain");
  }

  PivotOrdering cur = cert.source;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    try {
      cur = apply_step(cur, cert.steps[k]);
    } catch (const std::exception& e) {
      throw BrokenCertificate("broken certificate: step " + std::to_string(k + 1) + " invalid: " + e.what());
    }
  }
  if (!(cur == cert.target)) throw BrokenCertificate("broken certificate: replay does not reach the declared target");
  return cur;
}

namespace {

// 0-1 breadth-first search over orderings: shifts cost one, transpositions
// cost nothing. States are packed into a base-N integer key.
class OrderingSearch {
 public:
  OrderingSearch(int n, MoveSet moves) : n_(n), moves_(moves), pairs_(all_pairs(n)) {}

  struct Found {
    int shifts;
    std::vector<RelationStep> steps;
    PivotOrdering end;
  };

  std::optional<Found> run(const std::vector<std::pair<PivotOrdering, std::vector<RelationStep>>>& sources,
                           const std::function<std::optional<RelationStep>(const PivotOrdering&, bool&)>& accept) {
    nodes_.clear();
    index_.clear();
    std::deque<int> queue;
    for (const auto& [o, prefix] : sources) {
      const std::uint64_t k = key(o);
      if (index_.count(k)) continue;
      const int id = add_node(o, k, 0, -1, std::nullopt);
      nodes_[static_cast<std::size_t>(id)].prefix = prefix;
      queue.push_back(id);
    }
    while (!queue.empty()) {
      const int id = queue.front();
      queue.pop_front();
      Node& node = nodes_[static_cast<std::size_t>(id)];
      if (node.done) continue;
      node.done = true;

      bool hit = false;
      std::optional<RelationStep> tail = accept(node.ordering, hit);
      if (hit) return Found{node.dist, path_to(id, tail), node.ordering};

      const PivotOrdering current = node.ordering;
      const int dist = node.dist;
      if (moves_.has(Move::Transpose)) {
        for (int r = 0; r + 1 < current.size(); ++r) {
          if (!current[r].disjoint(current[r + 1])) continue;
          relax(admissible_transpose(current, r), dist, id, AdjacentTranspose{r}, queue, false);
        }
      }
      if (moves_.has(Move::Shift)) {
        for (int l = 1; l < current.size(); ++l) relax(cyclic_shift(current, l), dist + 1, id, CyclicShift{l}, queue, true);
      }
    }
    return std::nullopt;
  }

 private:
  struct Node {
    PivotOrdering ordering;
    int dist;
    int parent;
    std::optional<RelationStep> via;
    std::vector<RelationStep> prefix;
    bool done = false;
  };

  std::uint64_t key(const PivotOrdering& o) const {
    std::uint64_t k = 0;
    for (const PivotPair& p : o) {
      const auto pos = std::lower_bound(pairs_.begin(), pairs_.end(), p) - pairs_.begin();
      k = k * static_cast<std::uint64_t>(pairs_.size()) + static_cast<std::uint64_t>(pos);
    }
    return k;
  }

  int add_node(const PivotOrdering& o, std::uint64_t k, int dist, int parent, std::optional<RelationStep> via) {
    nodes_.push_back(Node{o, dist, parent, std::move(via), {}, false});
    const int id = static_cast<int>(nodes_.size()) - 1;
    index_[k] = id;
    return id;
  }

  void relax(const PivotOrdering& next, int dist, int parent, RelationStep via, std::deque<int>& queue, bool back) {
    const std::uint64_t k = key(next);
    auto it = index_.find(k);
    int id;
    if (it == index_.end()) {
      id = add_node(next, k, dist, parent, std::move(via));
    } else {
      Node& node = nodes_[static_cast<std::size_t>(it->second)];
      if (node.done || node.dist <= dist) return;
      node.dist = dist;
      node.parent = parent;
      node.via = std::move(via);
      node.prefix.clear();
      id = it->second;
    }
    if (back) queue.push_back(id);
    else queue.push_front(id);
  }

  std::vector<RelationStep> path_to(int id, const std::optional<RelationStep>& tail) const {
    std::vector<RelationStep> rev;
    if (tail) rev.push_back(*tail);
    int cur = id;
    while (nodes_[static_cast<std::size_t>(cur)].parent >= 0) {
      rev.push_back(*nodes_[static_cast<std::size_t>(cur)].via);
      cur = nodes_[static_cast<std::size_t>(cur)].parent;
    }
    const auto& prefix = nodes_[static_cast<std::size_t>(cur)].prefix;
    std::vector<RelationStep> out(prefix.begin(), prefix.end());
    out.insert(out.end(), rev.rbegin(), rev.rend());
    return out;
  }

  int n_;
  MoveSet moves_;
  std::vector<PivotPair> pairs_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> index_;
};

void check_search_size(int n) {
  if (n > kMaxSearchSize)
    throw EnumerationTooLarge("relation search too large: n = " + std::to_string(n) + " exceeds " +
                              std::to_string(kMaxSearchSize));
}

}  // namespace

std::optional<Certificate> relate_into(const PivotOrdering& from,
                                       const std::function<bool(const PivotOrdering&)>& is_target,
                                       MoveSet moves) {
  check_search_size(from.n());
  OrderingSearch search(from.n(), moves);

  const auto plain = [&](const PivotOrdering& o, bool& hit) -> std::optional<RelationStep> {
    hit = is_target(o);
    return std::nullopt;
  };
  std::optional<OrderingSearch::Found> best = search.run({{from, {}}}, plain);
  if (!moves.has(Move::Permute)) {
    if (!best) return std::nullopt;
    return Certificate{from, std::move(best->steps), best->end};
  }

  const std::vector<IndexPermutation> perms = all_permutations(from.n());

  // Shape p∘w: relabel first, then walk.
  std::vector<std::pair<PivotOrdering, std::vector<RelationStep>>> sources;
  sources.emplace_back(from, std::vector<RelationStep>{});
  for (const IndexPermutation& q : perms)
    if (!q.isIdentity()) sources.emplace_back(permute(from, q), std::vector<RelationStep>{Permute{q}});
  std::optional<OrderingSearch::Found> first = search.run(sources, plain);

  // Shape w∘p: walk, then relabel into the target set.
  const auto relabel_last = [&](const PivotOrdering& o, bool& hit) -> std::optional<RelationStep> {
    for (const IndexPermutation& q : perms) {
      if (is_target(permute(o, q))) {
        hit = true;
        if (q.isIdentity()) return std::nullopt;
        return Permute{q};
      }
    }
    hit = false;
    return std::nullopt;
  };
  std::optional<OrderingSearch::Found> last = search.run({{from, {}}}, relabel_last);

  const auto better = [](const std::optional<OrderingSearch::Found>& a, const std::optional<OrderingSearch::Found>& b) {
    if (!a) return false;
    if (!b) return true;
    if (a->shifts != b->shifts) return a->shifts < b->shifts;
    return a->steps.size() < b->steps.size();
  };
  for (auto* cand : {&first, &last})
    if (better(*cand, best)) best = *cand;
  if (!best) return std::nullopt;

  // The search end point precedes a trailing relabel, so recompute the target.
  PivotOrdering end = from;
  for (const RelationStep& s : best->steps) end = apply_step(end, s);
  return Certificate{from, std::move(best->steps), std::move(end)};
}

std::optional<Certificate> relate(const PivotOrdering& from, const PivotOrdering& to, MoveSet moves) {
  if (from.n() != to.n()) throw std::invalid_argument("relate: orderings have different dimensions");
  return relate_into(from, [&](const PivotOrdering& o) { return o == to; }, moves);
}

bool equivalent(const PivotOrdering& a, const PivotOrdering& b) {
  return relate(a, b, Move::Transpose).has_value();
}

bool weakly_equivalent(const PivotOrdering& a, const PivotOrdering& b) {
  return relate(a, b, Move::Transpose | Move::Shift).has_value();
}

}  // namespace jpl
