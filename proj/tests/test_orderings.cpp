#include "jpl/classification.hpp"
#include "jpl/errors.hpp"
#include "jpl/io.hpp"
#include "jpl/ordering.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace jpl;

namespace {

const PivotOrdering& catalog_ordering(int k) { return reference_catalog().at(static_cast<std::size_t>(k) - 1).ordering; }

}  // namespace

TEST(AllPairs, Sizes) {
  EXPECT_EQ(all_pairs(2), (std::vector<PivotPair>{PivotPair(0, 1)}));
  EXPECT_EQ(all_pairs(4).size(), 6u);
  EXPECT_EQ(all_pairs(4)[2], PivotPair(0, 3));
  EXPECT_EQ(all_pairs(5).size(), 10u);
  EXPECT_THROW(all_pairs(1), std::invalid_argument);
}

TEST(PivotPair, NormalizesOrder) {
  const PivotPair p(3, 1);
  EXPECT_EQ(p.r, 1);
  EXPECT_EQ(p.s, 3);
  EXPECT_THROW(PivotPair(2, 2), std::invalid_argument);
}

TEST(PivotOrdering, RejectsInvalidSequences) {
  EXPECT_THROW(PivotOrdering(3, {PivotPair(0, 1), PivotPair(0, 2)}), std::invalid_argument);
  EXPECT_THROW(PivotOrdering(3, {PivotPair(0, 1), PivotPair(0, 1), PivotPair(1, 2)}), std::invalid_argument);
  EXPECT_THROW(PivotOrdering(3, {PivotPair(0, 1), PivotPair(0, 3), PivotPair(1, 2)}), std::invalid_argument);
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_orderings(2).size(), 1u);
  EXPECT_EQ(enumerate_orderings(3).size(), 6u);
  const auto all = enumerate_orderings(4);
  EXPECT_EQ(all.size(), 720u);
  EXPECT_EQ(std::set<PivotOrdering>(all.begin(), all.end()).size(), 720u);
  EXPECT_EQ(std::count_if(all.begin(), all.end(), [](const auto& o) { return o[0] == PivotPair(0, 1); }), 120);
  EXPECT_THROW(enumerate_orderings(5), EnumerationTooLarge);
}

TEST(Reverse, FirstCatalogEntry) {
  EXPECT_EQ(reverse(catalog_ordering(1)), parse_ordering("3 4, 2 4, 1 4, 2 3, 1 3, 1 2"));
}

TEST(Reverse, InvolutionAndColumnToReverseColumn) {
  for (const auto& o : enumerate_orderings(4)) {
    EXPECT_EQ(reverse(reverse(o)), o);
    if (member_column_wise(o)) EXPECT_EQ(member_serial_perm(reverse(o)), SerialVariant::ReverseColumn);
  }
}

TEST(Transpose, CatalogSeventeenToTwo) {
  EXPECT_EQ(admissible_transpose(catalog_ordering(17), 2), catalog_ordering(2));
}

TEST(Transpose, SharedIndexRejected) {
  EXPECT_THROW(admissible_transpose(catalog_ordering(1), 0), NotAdmissible);
  EXPECT_THROW(admissible_transpose(catalog_ordering(1), 5), std::out_of_range);
}

TEST(Transpose, Involution) {
  for (const auto& o : enumerate_orderings(4))
    for (int r = 0; r < 5; ++r)
      if (o[r].disjoint(o[r + 1])) EXPECT_EQ(admissible_transpose(admissible_transpose(o, r), r), o);
}

TEST(Shift, ZeroAndGroupProperty) {
  for (const auto& o : enumerate_orderings(4)) {
    EXPECT_EQ(cyclic_shift(o, 0), o);
    for (int l = 1; l < 6; ++l) EXPECT_EQ(cyclic_shift(cyclic_shift(o, l), 6 - l), o);
  }
  EXPECT_THROW(cyclic_shift(catalog_ordering(1), 6), std::out_of_range);
}

TEST(Shift, CatalogEntryToParallelAnchor) { EXPECT_EQ(cyclic_shift(catalog_ordering(105), 2), o_par()); }

TEST(Permute, AnchorsAndIdentity) {
  EXPECT_EQ(permute(o_par(), p_par()), o_par_prime());
  EXPECT_EQ(permute(catalog_ordering(40), IndexPermutation::identity(4)), catalog_ordering(40));
}

TEST(Permute, GroupAction) {
  const auto perms = all_permutations(4);
  ASSERT_EQ(perms.size(), 24u);
  std::mt19937_64 gen(5);
  const auto all = enumerate_orderings(4);
  for (int sample = 0; sample < 10; ++sample) {
    const PivotOrdering& o = all[gen() % all.size()];
    for (const auto& q : perms) {
      EXPECT_EQ(permute(permute(o, q), q.inverse()), o);
      for (const auto& q2 : perms) EXPECT_EQ(permute(permute(o, q), q2), permute(o, q2.after(q)));
    }
  }
}

TEST(Relate, Reflexive) {
  const auto cert = relate(catalog_ordering(33), catalog_ordering(33), Move::Transpose | Move::Shift | Move::Permute);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->steps.empty());
}

TEST(Relate, SingleTransposition) {
  const auto cert = relate(catalog_ordering(17), catalog_ordering(2), Move::Transpose);
  ASSERT_TRUE(cert);
  ASSERT_EQ(cert->steps.size(), 1u);
  EXPECT_EQ(std::get<AdjacentTranspose>(cert->steps[0]).position, 2);
  EXPECT_EQ(replay(*cert), catalog_ordering(2));
}

TEST(Relate, ParallelAnchorsNotWeaklyEquivalent) {
  EXPECT_FALSE(relate(o_par_prime(), o_par(), Move::Transpose | Move::Shift));
  EXPECT_FALSE(weakly_equivalent(o_par(), o_par_prime()));
  EXPECT_TRUE(relate(o_par_prime(), o_par(), Move::Permute));
}

TEST(Relate, EverySingleShiftHasCountOne) {
  for (const auto& o : enumerate_orderings(4))
    for (int l = 1; l < 6; ++l) {
      const PivotOrdering target = cyclic_shift(o, l);
      const auto cert = relate(o, target, Move::Shift);
      ASSERT_TRUE(cert);
      // A shift can coincide with the identity only if o is periodic, which
      // a sequence of distinct pairs cannot be.
      EXPECT_EQ(cert->shift_count(), 1);
      EXPECT_EQ(replay(*cert), target);
    }
}

TEST(Relate, DimensionGuard) {
  const PivotOrdering o5(5, all_pairs(5));
  EXPECT_THROW(relate(o5, o5, Move::Transpose), EnumerationTooLarge);
}

TEST(Relate, PermuteBlockAtAnEnd) {
  const auto all = enumerate_orderings(4);
  std::mt19937_64 gen(12);
  for (int k = 0; k < 200; ++k) {
    const PivotOrdering& a = all[gen() % all.size()];
    const PivotOrdering& b = all[gen() % all.size()];
    const auto cert = relate(a, b, Move::Transpose | Move::Shift | Move::Permute);
    if (!cert) continue;
    EXPECT_EQ(replay(*cert), b);
  }
}

TEST(Relations, EquivalenceAxiomsByCertificates) {
  const auto all = enumerate_orderings(4);
  std::mt19937_64 gen(3);
  int checked = 0;
  for (int k = 0; k < 3000 && checked < 60; ++k) {
    const PivotOrdering& a = all[gen() % all.size()];
    const PivotOrdering& b = all[gen() % all.size()];
    const PivotOrdering& c = all[gen() % all.size()];
    const auto ab = relate(a, b, Move::Transpose | Move::Shift);
    const auto bc = relate(b, c, Move::Transpose | Move::Shift);
    if (!ab || !bc) continue;
    ++checked;
    EXPECT_EQ(replay(ab->inverse()), a);
    EXPECT_EQ(replay(ab->then(*bc)), c);
  }
  EXPECT_GT(checked, 0);
}

TEST(Relations, TranspositionClassesRespectCommutingPairs) {
  // Each ~-class is closed under admissible transpositions, and two
  // orderings in one class list the same pairs with the same relative order
  // for every non-commuting couple.
  const auto all = enumerate_orderings(4);
  std::map<PivotOrdering, int> cls;
  int next = 0;
  for (const auto& o : all) {
    if (cls.count(o)) continue;
    std::vector<PivotOrdering> stack{o};
    cls[o] = next;
    while (!stack.empty()) {
      const PivotOrdering cur = stack.back();
      stack.pop_back();
      for (int r = 0; r < 5; ++r) {
        if (!cur[r].disjoint(cur[r + 1])) continue;
        const PivotOrdering nb = admissible_transpose(cur, r);
        if (cls.emplace(nb, next).second) stack.push_back(nb);
      }
    }
    ++next;
  }
  const auto position = [](const PivotOrdering& o, const PivotPair& p) {
    return std::find(o.begin(), o.end(), p) - o.begin();
  };
  for (const auto& a : all) {
    const PivotOrdering& rep = *std::find_if(all.begin(), all.end(), [&](const auto& x) { return cls[x] == cls[a]; });
    for (const auto& p : all_pairs(4))
      for (const auto& q : all_pairs(4))
        if (p < q && !p.disjoint(q))
          EXPECT_EQ(position(a, p) < position(a, q), position(rep, p) < position(rep, q));
    EXPECT_TRUE(equivalent(a, rep));
  }
}

TEST(Replay, EmptyTamperedAndMisplacedPermutation) {
  const PivotOrdering o = catalog_ordering(3);
  EXPECT_EQ(replay(Certificate::trivial(o)), o);
  EXPECT_THROW(replay(Certificate{o, {}, catalog_ordering(4)}), BrokenCertificate);
  EXPECT_THROW(replay(Certificate{o, {AdjacentTranspose{0}}, o}), BrokenCertificate);
  const IndexPermutation q = catalog_permutation(1);
  PivotOrdering mid = permute(cyclic_shift(o, 1), q);
  mid = cyclic_shift(mid, 1);
  EXPECT_THROW(replay(Certificate{o, {CyclicShift{1}, Permute{q}, CyclicShift{1}}, mid}), BrokenCertificate);
}

TEST(Replay, CatalogSixtyFiveChain) {
  const auto& e = reference_catalog()[64];
  ASSERT_EQ(e.index, 65);
  ASSERT_EQ(e.chain.steps.size(), 2u);
  EXPECT_EQ(std::get<Permute>(e.chain.steps[0]).q, catalog_permutation(1));
  EXPECT_EQ(std::get<CyclicShift>(e.chain.steps[1]).length, 5);
  EXPECT_EQ(replay(e.chain), catalog_ordering(5));
}
