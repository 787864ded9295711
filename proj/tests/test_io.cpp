#include "jpl/errors.hpp"
#include "jpl/io.hpp"

#include <gtest/gtest.h>

using namespace jpl;

TEST(OrderingText, RoundTrip) {
  const std::string text = "1 2, 1 3, 2 3, 1 4, 2 4, 3 4";
  const PivotOrdering o = parse_ordering(text);
  EXPECT_EQ(o.n(), 4);
  EXPECT_EQ(o[1], PivotPair(0, 2));
  EXPECT_EQ(format_ordering(o), text);
  EXPECT_EQ(parse_ordering(" 2 1 ,3 1,  3 2 ").n(), 3);
}

TEST(OrderingText, Errors) {
  EXPECT_THROW(parse_ordering("1 3, 1 2, 1 3, 1 4, 2 4, 3 4"), ParseError);
  EXPECT_THROW(parse_ordering("1 2, 1 3"), ParseError);
  EXPECT_THROW(parse_ordering("1 2, 1 5, 2 3"), ParseError);
  EXPECT_THROW(parse_ordering("1 2, 1 3, 2 x"), ParseError);
  EXPECT_THROW(parse_ordering("1 2 3, 1 3, 2 3"), ParseError);
  EXPECT_THROW(parse_ordering("1 1, 1 3, 2 3"), ParseError);
  EXPECT_THROW(parse_ordering("1 2,, 2 3"), ParseError);
  EXPECT_THROW(parse_ordering(""), ParseError);
}

TEST(PermutationText, RoundTrip) {
  const IndexPermutation q = parse_permutation("3 1 2 4");
  EXPECT_EQ(q(0), 2);
  EXPECT_EQ(format_permutation(q), "3 1 2 4");
  EXPECT_THROW(parse_permutation("1 1 2"), ParseError);
}

TEST(CertificateText, RoundTrip) {
  const PivotOrdering src = parse_ordering("1 2, 2 4, 2 3, 1 3, 1 4, 3 4");
  Certificate cert{src, {Permute{parse_permutation("1 3 4 2")}, CyclicShift{3}, AdjacentTranspose{2}}, src};
  cert.target = src;
  for (const auto& s : cert.steps) cert.target = apply_step(cert.target, s);
  const std::string text = format_certificate(cert);
  EXPECT_EQ(text,
            "source: 1 2, 2 4, 2 3, 1 3, 1 4, 3 4\nP 1 3 4 2\nS 3\nT 2\ntarget: " + format_ordering(cert.target) +
                "\n");
  const Certificate back = parse_certificate(text);
  EXPECT_EQ(back.source, cert.source);
  EXPECT_EQ(back.steps, cert.steps);
  EXPECT_EQ(replay(back), cert.target);
}

TEST(CertificateText, Errors) {
  EXPECT_THROW(parse_certificate("S 1\n"), ParseError);
  EXPECT_THROW(parse_certificate("source: 1 2, 1 3, 2 3\nX 1\ntarget: 1 2, 1 3, 2 3\n"), ParseError);
  EXPECT_THROW(parse_certificate("source: 1 2, 1 3, 2 3\n"), ParseError);
}

TEST(MatrixText, SymmetricLiteral) {
  const SymMatrixd m = parse_sym_matrix("1 2\n2 3\n");
  EXPECT_EQ(m.size(), 2);
  EXPECT_EQ(m(0, 1), 2.0);
  EXPECT_THROW(parse_sym_matrix("1 2\n2.1 3\n"), ParseError);
  EXPECT_NO_THROW(parse_sym_matrix("1 2\n2.000000000000001 3\n"));
  EXPECT_THROW(parse_sym_matrix("1 2 3"), ParseError);
  EXPECT_THROW(parse_sym_matrix("1 2 2 nan"), ParseError);
  EXPECT_THROW(parse_sym_matrix("1 2 2 3x"), ParseError);
}

TEST(MatrixText, SquareLiteral) {
  const Eigen::MatrixXd a = parse_square_matrix("1 2 3 4");
  EXPECT_EQ(a(1, 0), 3.0);
}
