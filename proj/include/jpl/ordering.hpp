#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jpl {

/// Unordered index pair stored as (r, s) with r < s. Zero-based; text formats
/// print it one-based.
struct PivotPair {
  int r = 0;
  int s = 1;

  PivotPair() = default;
  PivotPair(int a, int b);

  bool disjoint(const PivotPair& other) const {
    return r != other.r && r != other.s && s != other.r && s != other.s;
  }

  auto operator<=>(const PivotPair&) const = default;
};

inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Lexicographic list of all pairs of {0..n-1}.
std::vector<PivotPair> all_pairs(int n);

/// One sweep of a cyclic strategy: every pair of {0..n-1} exactly once.
class PivotOrdering {
 public:
  PivotOrdering(int n, std::vector<PivotPair> seq);

  int n() const { return n_; }
  int size() const { return static_cast<int>(seq_.size()); }
  const PivotPair& operator[](int k) const { return seq_[static_cast<std::size_t>(k)]; }
  const std::vector<PivotPair>& pairs() const { return seq_; }
  auto begin() const { return seq_.begin(); }
  auto end() const { return seq_.end(); }

  bool operator==(const PivotOrdering&) const = default;
  auto operator<=>(const PivotOrdering& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    return seq_ <=> other.seq_;
  }

 private:
  int n_;
  std::vector<PivotPair> seq_;
};

/// Bijection on {0..n-1}, stored as its image list.
class IndexPermutation {
 public:
  explicit IndexPermutation(std::vector<int> image);
  static IndexPermutation identity(int n);

  int n() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }

  IndexPermutation inverse() const;
  /// (this ∘ first)(i) = this(first(i)).
  IndexPermutation after(const IndexPermutation& first) const;
  bool isIdentity() const;

  bool operator==(const IndexPermutation&) const = default;

 private:
  std::vector<int> image_;
};

/// All n! permutations, lexicographic by image.
std::vector<IndexPermutation> all_permutations(int n);

std::vector<PivotOrdering> enumerate_orderings(int n);

PivotOrdering reverse(const PivotOrdering& o);
/// Swaps the pairs at positions r and r+1 (zero-based). Throws NotAdmissible
/// if they share an index.
PivotOrdering admissible_transpose(const PivotOrdering& o, int r);
/// Moves the first l pairs to the end.
PivotOrdering cyclic_shift(const PivotOrdering& o, int l);
/// Relabels each pair (i, j) to (min{q(i), q(j)}, max{q(i), q(j)}).
PivotOrdering permute(const PivotOrdering& o, const IndexPermutation& q);

struct AdjacentTranspose {
  int position;
  bool operator==(const AdjacentTranspose&) const = default;
};
struct CyclicShift {
  int length;
  bool operator==(const CyclicShift&) const = default;
};
struct Permute {
  IndexPermutation q;
  bool operator==(const Permute&) const = default;
};

using RelationStep = std::variant<AdjacentTranspose, CyclicShift, Permute>;

PivotOrdering apply_step(const PivotOrdering& o, const RelationStep& step);

/// Replayable chain of relation steps from `source` to `target`.
struct Certificate {
  PivotOrdering source;
  std::vector<RelationStep> steps;
  PivotOrdering target;

  /// Number of CyclicShift steps (the d of a generalized serial chain).
  int shift_count() const;
  /// Sum of shift lengths modulo N.
  int total_shift() const;

  static Certificate trivial(const PivotOrdering& o) { return Certificate{o, {}, o}; }
  /// The chain walked backwards, from target to source.
  Certificate inverse() const;
  /// this followed by `next`; requires this->target == next.source.
  Certificate then(const Certificate& next) const;
};

/// Replays the steps from the source and checks the declared target. Throws
/// BrokenCertificate on an invalid step, on Permute steps anywhere but one
/// block at the start or end of the chain, or on a target mismatch.
PivotOrdering replay(const Certificate& cert);

enum class Move : unsigned { Transpose = 1, Shift = 2, Permute = 4 };

class MoveSet {
 public:
  constexpr MoveSet() = default;
  constexpr MoveSet(Move m) : bits_(static_cast<unsigned>(m)) {}
  constexpr MoveSet operator|(MoveSet o) const { return MoveSet(bits_ | o.bits_); }
  constexpr bool has(Move m) const { return (bits_ & static_cast<unsigned>(m)) != 0; }

 private:
  constexpr explicit MoveSet(unsigned bits) : bits_(bits) {}
  unsigned bits_ = 0;
};

constexpr MoveSet operator|(Move a, Move b) { return MoveSet(a) | MoveSet(b); }

/// Largest n for which relation searches enumerate the ordering space.
inline constexpr int kMaxSearchSize = 4;

/// Searches for a chain from `from` to `to` using the given moves, minimising
/// the number of shifts; transpositions and permutations are free. With
/// Permute allowed, permutations form a single step at the start or at the
/// end of the chain. Returns nullopt when the orderings are not related.
std::optional<Certificate> relate(const PivotOrdering& from, const PivotOrdering& to, MoveSet moves);

/// Predicate form of relate(): reaches any ordering accepted by `is_target`.
std::optional<Certificate> relate_into(const PivotOrdering& from,
                                       const std::function<bool(const PivotOrdering&)>& is_target,
                                       MoveSet moves);

bool equivalent(const PivotOrdering& a, const PivotOrdering& b);
bool weakly_equivalent(const PivotOrdering& a, const PivotOrdering& b);

}  // namespace jpl
