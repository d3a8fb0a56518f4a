// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_INTERPOLATION_DATA_HPP
#define H2MOR_INTERPOLATION_DATA_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "h2mor/model.hpp"

namespace h2mor
{

// Sine of the angle between two directions; scale and phase invariant.
// Two zero vectors are parallel, a zero and a nonzero vector are orthogonal.
inline double direction_sine(const VectorXcd &a, const VectorXcd &b)
{
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0)
  {
    return (na == 0.0 && nb == 0.0) ? 0.0 : 1.0;
  }
  const VectorXcd u = a / na;
  const VectorXcd v = b / nb;
  return std::min(1.0, (v - u * u.dot(v)).norm());
}

inline double direction_cosine(const VectorXcd &a, const VectorXcd &b)
{
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0)
  {
    return (na == 0.0 && nb == 0.0) ? 1.0 : 0.0;
  }
  return std::min(1.0, std::abs(a.dot(b)) / (na * nb));
}

//
// Tangential interpolation data (shift, right tangent, left tangent).
//
// Entry i is either a chain head, interpolating along (right.col(i),
// left.col(i)) at shifts(i), or a continuation of the Jordan chain through
// predecessor[i] (same shift, zero tangent columns), which raises the order
// of the matched moments. The Sylvester matrices are
//
//   S = diag(shifts) + sum_{i: pred(i) >= 0} e_pred(i) e_i^T,   R = right,   L = left,
//
// so that A V - E V S - B R = 0 and A^T W - E^T W S - C^T L = 0 describe the
// primitive bases.
//
class InterpolationData
{
public:
  InterpolationData() = default;

  InterpolationData(Index inputs, Index outputs)
    : right_(inputs, 0), left_(outputs, 0)
  {
  }

  //
  // Builds data from triplet columns. With merge_repeats, a triplet equal to
  // an earlier head (same shift, parallel tangents) extends that head's chain
  // instead of adding a dependent column.
  //
  static InterpolationData from_triplets(const VectorXcd &shifts, const MatrixXcd &right,
                                         const MatrixXcd &left, bool merge_repeats = true,
                                         double tol = 1e-12)
  {
    require(right.cols() == shifts.size() && left.cols() == shifts.size(),
            ErrorCode::CardinalityMismatch, "shift and tangent counts differ");
    InterpolationData data(right.rows(), left.rows());
    for (Index i = 0; i < shifts.size(); ++i)
    {
      data.push(shifts(i), right.col(i), left.col(i), merge_repeats, tol, tol);
    }
    return data;
  }

  Index size() const { return shifts_.size(); }
  bool empty() const { return size() == 0; }
  Index inputs() const { return right_.rows(); }
  Index outputs() const { return left_.rows(); }

  const VectorXcd &shifts() const { return shifts_; }
  const MatrixXcd &right() const { return right_; }
  const MatrixXcd &left() const { return left_; }
  const std::vector<Index> &predecessors() const { return pred_; }

  Complex shift(Index i) const { return shifts_(i); }
  Index predecessor(Index i) const { return pred_[static_cast<std::size_t>(i)]; }
  bool is_head(Index i) const { return predecessor(i) < 0; }

  Index head_of(Index i) const
  {
    while (!is_head(i))
    {
      i = predecessor(i);
    }
    return i;
  }

  Index successor(Index i) const
  {
    for (Index j = i + 1; j < size(); ++j)
    {
      if (predecessor(j) == i)
      {
        return j;
      }
    }
    return -1;
  }

  Index chain_tail(Index i) const
  {
    for (Index next = successor(i); next >= 0; next = successor(i))
    {
      i = next;
    }
    return i;
  }

  Index chain_length(Index head) const
  {
    Index len = 1;
    for (Index j = successor(head); j >= 0; j = successor(j))
    {
      ++len;
    }
    return len;
  }

  // Position within the chain, 0 for heads.
  Index chain_position(Index i) const
  {
    Index pos = 0;
    while (!is_head(i))
    {
      i = predecessor(i);
      ++pos;
    }
    return pos;
  }

  VectorXcd tangent(Index i, bool right) const
  {
    return right ? VectorXcd(right_.col(i)) : VectorXcd(left_.col(i));
  }

  // Tangents governing entry i (those of its chain head).
  VectorXcd right_direction(Index i) const { return right_.col(head_of(i)); }
  VectorXcd left_direction(Index i) const { return left_.col(head_of(i)); }

  std::vector<Index> heads() const
  {
    std::vector<Index> out;
    for (Index i = 0; i < size(); ++i)
    {
      if (is_head(i))
      {
        out.push_back(i);
      }
    }
    return out;
  }

  MatrixXcd S() const
  {
    MatrixXcd S = shifts_.asDiagonal();
    for (Index i = 0; i < size(); ++i)
    {
      if (!is_head(i))
      {
        S(predecessor(i), i) = 1.0;
      }
    }
    return S;
  }

  Index append_head(Complex shift, const VectorXcd &r, const VectorXcd &l)
  {
    require(r.size() == inputs() && l.size() == outputs(), ErrorCode::DimensionMismatch,
            "tangent directions have wrong length");
    const Index i = size();
    shifts_.conservativeResize(i + 1);
    shifts_(i) = shift;
    right_.conservativeResize(Eigen::NoChange, i + 1);
    right_.col(i) = r;
    left_.conservativeResize(Eigen::NoChange, i + 1);
    left_.col(i) = l;
    pred_.push_back(-1);
    return i;
  }

  // Extends the chain ending at `tail` by one entry.
  Index append_continuation(Index tail)
  {
    require(tail >= 0 && tail < size(), ErrorCode::InvalidArgument, "invalid chain tail");
    require(successor(tail) < 0, ErrorCode::InvalidArgument,
            "entry " + std::to_string(tail) + " is not the end of its chain");
    const Index i = append_head(shifts_(tail), VectorXcd::Zero(inputs()),
                                VectorXcd::Zero(outputs()));
    pred_.back() = tail;
    return i;
  }

  //
  // Returns the head whose triplet matches (shift, r, l): relative shift
  // distance <= shift_tol (absolute for a zero shift) and both tangent
  // direction sines <= angle_tol. Returns -1 when nothing matches.
  //
  Index find_matching_head(Complex shift, const VectorXcd &r, const VectorXcd &l,
                           double shift_tol, double angle_tol) const
  {
    for (Index i = 0; i < size(); ++i)
    {
      if (!is_head(i))
      {
        continue;
      }
      const double scale = std::abs(shift) > 0.0 ? std::abs(shift) : 1.0;
      if (std::abs(shifts_(i) - shift) > shift_tol * scale)
      {
        continue;
      }
      if (direction_sine(right_.col(i), r) > angle_tol ||
          direction_sine(left_.col(i), l) > angle_tol)
      {
        continue;
      }
      return i;
    }
    return -1;
  }

  // Adds a triplet, extending a matching chain when merge is requested.
  Index push(Complex shift, const VectorXcd &r, const VectorXcd &l, bool merge, double shift_tol,
             double angle_tol)
  {
    if (merge)
    {
      const Index head = find_matching_head(shift, r, l, shift_tol, angle_tol);
      if (head >= 0)
      {
        return append_continuation(chain_tail(head));
      }
    }
    return append_head(shift, r, l);
  }

  // Appends all entries of other, remapping chain links.
  void append(const InterpolationData &other)
  {
    require(other.inputs() == inputs() && other.outputs() == outputs(),
            ErrorCode::DimensionMismatch, "interpolation data dimensions differ");
    const Index offset = size();
    for (Index i = 0; i < other.size(); ++i)
    {
      append_head(other.shift(i), other.right().col(i), other.left().col(i));
      if (!other.is_head(i))
      {
        pred_.back() = other.predecessor(i) + offset;
      }
    }
  }

  InterpolationData subset(const std::vector<Index> &entries) const
  {
    InterpolationData out(inputs(), outputs());
    std::vector<Index> map(static_cast<std::size_t>(size()), -1);
    for (Index i : entries)
    {
      map[static_cast<std::size_t>(i)] = out.append_head(shift(i), right_.col(i), left_.col(i));
      if (!is_head(i))
      {
        const Index p = map[static_cast<std::size_t>(predecessor(i))];
        require(p >= 0, ErrorCode::InvalidArgument, "subset breaks a Jordan chain");
        out.pred_.back() = p;
      }
    }
    return out;
  }

private:
  VectorXcd shifts_;
  MatrixXcd right_;
  MatrixXcd left_;
  std::vector<Index> pred_;
};

//
// Conjugate partner of every entry; partner[i] == i marks a self-conjugate
// entry (real shift with real tangents, or a continuation of such a chain).
// Throws NotConjugateClosed when some entry has no partner.
//
inline std::vector<Index> conjugate_partners(const InterpolationData &data, double tol = 1e-8)
{
  const Index k = data.size();
  std::vector<Index> partner(static_cast<std::size_t>(k), -1);
  auto at = [&](Index i) -> Index & { return partner[static_cast<std::size_t>(i)]; };

  auto is_real_vector = [&](const VectorXcd &v) {
    return v.imag().norm() <= tol * std::max(1.0, v.norm());
  };

  for (Index i = 0; i < k; ++i)
  {
    if (at(i) >= 0)
    {
      continue;
    }
    const Complex s = data.shift(i);
    const double scale = std::max(1.0, std::abs(s));

    if (!data.is_head(i))
    {
      const Index p = at(data.predecessor(i));
      if (p == data.predecessor(i))
      {
        at(i) = i;
        continue;
      }
      const Index twin = data.successor(p);
      require(twin >= 0 && at(twin) < 0, ErrorCode::NotConjugateClosed,
              "Jordan chain through entry " + std::to_string(i) + " has no conjugate chain");
      at(i) = twin;
      at(twin) = i;
      continue;
    }

    const VectorXcd &r = data.right().col(i);
    const VectorXcd &l = data.left().col(i);
    if (std::abs(s.imag()) <= tol * scale && is_real_vector(r) && is_real_vector(l))
    {
      at(i) = i;
      continue;
    }

    Index found = -1;
    for (Index j = i + 1; j < k; ++j)
    {
      if (at(j) >= 0 || !data.is_head(j))
      {
        continue;
      }
      if (std::abs(data.shift(j) - std::conj(s)) > tol * scale)
      {
        continue;
      }
      const VectorXcd &rj = data.right().col(j);
      const VectorXcd &lj = data.left().col(j);
      if ((rj - r.conjugate()).norm() <= tol * std::max(1.0, r.norm()) &&
          (lj - l.conjugate()).norm() <= tol * std::max(1.0, l.norm()))
      {
        found = j;
        break;
      }
    }
    require(found >= 0, ErrorCode::NotConjugateClosed,
            "entry " + std::to_string(i) + " (shift " + std::to_string(s.real()) +
                (s.imag() < 0 ? "" : "+") + std::to_string(s.imag()) +
                "j) has no conjugate partner");
    at(i) = found;
    at(found) = i;
  }
  return partner;
}

inline bool is_conjugate_closed(const InterpolationData &data, double tol = 1e-8)
{
  try
  {
    conjugate_partners(data, tol);
    return true;
  }
  catch (const Error &)
  {
    return false;
  }
}

//
// Chain of `length` entries at shift zero with all-ones tangents; the data
// used by a zero initialization.
//
inline InterpolationData zero_chain(Index length, Index inputs, Index outputs)
{
  InterpolationData data(inputs, outputs);
  if (length <= 0)
  {
    return data;
  }
  Index tail = data.append_head(0.0, VectorXcd::Ones(inputs), VectorXcd::Ones(outputs));
  for (Index i = 1; i < length; ++i)
  {
    tail = data.append_continuation(tail);
  }
  return data;
}

}  // namespace h2mor

#endif  // H2MOR_INTERPOLATION_DATA_HPP
