// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "h2mor/interpolation_data.hpp"
#include "support/expect_error.hpp"
#include "support/random_models.hpp"

namespace h2mor
{
namespace
{

VectorXcd vec(std::initializer_list<Complex> v)
{
  VectorXcd out(static_cast<Index>(v.size()));
  Index i = 0;
  for (Complex x : v)
  {
    out(i++) = x;
  }
  return out;
}

TEST(InterpolationData, ZeroChainStructure)
{
  const InterpolationData d = zero_chain(4, 2, 3);
  ASSERT_EQ(d.size(), 4);
  EXPECT_EQ(d.heads(), std::vector<Index>{0});
  EXPECT_EQ(d.chain_length(0), 4);
  EXPECT_EQ(d.chain_tail(0), 3);
  for (Index i = 1; i < 4; ++i)
  {
    EXPECT_EQ(d.predecessor(i), i - 1);
    EXPECT_EQ(d.head_of(i), 0);
    EXPECT_EQ(d.chain_position(i), i);
    EXPECT_EQ(d.right().col(i).norm(), 0.0);
  }
  EXPECT_EQ(d.right_direction(0), VectorXcd::Ones(2));
  EXPECT_EQ(d.left_direction(0), VectorXcd::Ones(3));
}

TEST(InterpolationData, SylvesterMatrixIsJordanForm)
{
  InterpolationData d(1, 1);
  d.append_head(2.0, vec({1.0}), vec({1.0}));
  const Index t = d.append_head(0.5, vec({1.0}), vec({1.0}));
  d.append_continuation(t);
  const MatrixXcd S = d.S();
  MatrixXcd expected = MatrixXcd::Zero(3, 3);
  expected(0, 0) = 2.0;
  expected(1, 1) = 0.5;
  expected(2, 2) = 0.5;
  expected(1, 2) = 1.0;
  EXPECT_EQ(S, expected);
}

TEST(InterpolationData, RepeatedTripletsMergeIntoChain)
{
  VectorXcd shifts(3);
  shifts << 1.0, 1.0, 2.0;
  MatrixXcd R(1, 3);
  R << 1.0, -3.0, 1.0;  // parallel to the first
  MatrixXcd L(1, 3);
  L << 2.0, 2.0, 1.0;
  const InterpolationData merged = InterpolationData::from_triplets(shifts, R, L);
  EXPECT_EQ(merged.predecessor(1), 0);
  EXPECT_EQ(merged.heads().size(), 2u);
  const InterpolationData plain = InterpolationData::from_triplets(shifts, R, L, false);
  EXPECT_EQ(plain.heads().size(), 3u);
}

TEST(InterpolationData, FromTripletsCardinality)
{
  EXPECT_H2MOR_ERROR(InterpolationData::from_triplets(VectorXcd::Ones(2), MatrixXcd::Ones(1, 3),
                                                      MatrixXcd::Ones(1, 2)),
                     ErrorCode::CardinalityMismatch);
}

TEST(InterpolationData, ConjugatePartners)
{
  const InterpolationData d = testing::random_data(5, 2, 2, 3);
  const std::vector<Index> partner = conjugate_partners(d);
  EXPECT_EQ(partner[0], 0);
  for (Index i = 1; i < 5; ++i)
  {
    const Index j = partner[static_cast<std::size_t>(i)];
    EXPECT_NE(j, i);
    EXPECT_EQ(partner[static_cast<std::size_t>(j)], i);
    EXPECT_NEAR(std::abs(d.shift(j) - std::conj(d.shift(i))), 0.0, 1e-15);
  }
}

TEST(InterpolationData, ConjugateChainsArePaired)
{
  InterpolationData d(1, 1);
  const Complex s(1.0, 2.0);
  const Index a = d.append_head(s, vec({Complex(1.0, 1.0)}), vec({1.0}));
  const Index b = d.append_head(std::conj(s), vec({Complex(1.0, -1.0)}), vec({1.0}));
  const Index a2 = d.append_continuation(a);
  const Index b2 = d.append_continuation(b);
  const std::vector<Index> p = conjugate_partners(d);
  EXPECT_EQ(p[static_cast<std::size_t>(a2)], b2);
  EXPECT_TRUE(is_conjugate_closed(d));

  d.append_continuation(a2);
  EXPECT_FALSE(is_conjugate_closed(d));
}

TEST(InterpolationData, MissingConjugate)
{
  InterpolationData d(1, 1);
  d.append_head(Complex(1.0, 2.0), vec({1.0}), vec({1.0}));
  EXPECT_H2MOR_ERROR(conjugate_partners(d), ErrorCode::NotConjugateClosed);
  // Real shift with a complex tangent needs a partner as well.
  InterpolationData e(1, 1);
  e.append_head(1.0, vec({Complex(0.0, 1.0)}), vec({1.0}));
  EXPECT_FALSE(is_conjugate_closed(e));
}

TEST(InterpolationData, FindMatchingHead)
{
  InterpolationData d(2, 1);
  d.append_head(Complex(1.0, 1.0), vec({1.0, 0.0}), vec({1.0}));
  EXPECT_EQ(d.find_matching_head(Complex(1.0, 1.0 + 1e-9), vec({-2.0, 0.0}), vec({3.0}), 1e-6,
                                 1e-6),
            0);
  EXPECT_EQ(d.find_matching_head(Complex(1.0, 1.1), vec({1.0, 0.0}), vec({1.0}), 1e-6, 1e-6), -1);
  EXPECT_EQ(d.find_matching_head(Complex(1.0, 1.0), vec({1.0, 1.0}), vec({1.0}), 1e-6, 1e-6), -1);
}

TEST(InterpolationData, AppendAndSubsetKeepChains)
{
  InterpolationData a = zero_chain(2, 1, 1);
  const InterpolationData b = zero_chain(3, 1, 1);
  a.append(b);
  ASSERT_EQ(a.size(), 5);
  EXPECT_EQ(a.predecessor(3), 2);
  EXPECT_EQ(a.predecessor(4), 3);
  const InterpolationData s = a.subset({2, 3});
  EXPECT_EQ(s.predecessor(1), 0);
  EXPECT_H2MOR_ERROR(a.subset({3}), ErrorCode::InvalidArgument);
}

TEST(InterpolationData, WrongTangentLength)
{
  InterpolationData d(2, 2);
  EXPECT_H2MOR_ERROR(d.append_head(1.0, vec({1.0}), vec({1.0, 1.0})), ErrorCode::DimensionMismatch);
}

TEST(Directions, SineAndCosine)
{
  EXPECT_NEAR(direction_sine(vec({1.0, 0.0}), vec({0.0, 1.0})), 1.0, 1e-15);
  EXPECT_NEAR(direction_sine(vec({1.0, 1.0}), vec({Complex(0.0, 2.0), Complex(0.0, 2.0)})), 0.0,
              1e-15);
  EXPECT_NEAR(direction_cosine(vec({1.0, 0.0}), vec({-3.0, 0.0})), 1.0, 1e-15);
}

}  // namespace
}  // namespace h2mor
