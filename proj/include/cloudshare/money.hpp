//------------------------------------------------------------------------------
//
//   Copyright 2026 The cloudshare Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cloudshare {

/// Exact currency amount backed by a GMP rational.
///
/// Values are always kept in canonical form (reduced, positive denominator),
/// so equality is structural and there is no rounding anywhere in the
/// mechanisms. Rendering to a decimal string is the only lossy operation.
class Money
{
public:
  Money() = default;
  explicit Money(std::int64_t whole);
  explicit Money(mpq_class value);

  static Money from_fraction(std::int64_t numerator, std::int64_t denominator);

  /// Accepts "12", "-0.25", "2.51", "1e-3" or "7/3". Throws DomainError on
  /// anything else.
  static Money parse(std::string_view text);

  /// Decimal rendering with `digits` fractional digits, rounded half-to-even.
  std::string to_decimal(int digits = 9) const;

  /// Lossless "n/d" rendering ("n" when the denominator is 1).
  std::string to_fraction() const;

  double to_double() const;

  int sign() const
  {
    return sgn(value_);
  }
  bool is_zero() const
  {
    return sign() == 0;
  }
  bool is_positive() const
  {
    return sign() > 0;
  }
  bool is_negative() const
  {
    return sign() < 0;
  }

  const mpq_class &raw() const
  {
    return value_;
  }

  Money &operator+=(Money const &other);
  Money &operator-=(Money const &other);
  Money &operator*=(Money const &other);
  Money &operator/=(Money const &other);

  friend Money operator+(Money lhs, Money const &rhs)
  {
    lhs += rhs;
    return lhs;
  }
  friend Money operator-(Money lhs, Money const &rhs)
  {
    lhs -= rhs;
    return lhs;
  }
  friend Money operator*(Money lhs, Money const &rhs)
  {
    lhs *= rhs;
    return lhs;
  }
  friend Money operator/(Money lhs, Money const &rhs)
  {
    lhs /= rhs;
    return lhs;
  }
  Money operator-() const;

  /// Scaling by a count. Division requires a positive divisor.
  Money times(std::int64_t factor) const;
  Money divided_by(std::int64_t divisor) const;

  friend bool operator==(Money const &a, Money const &b)
  {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(Money const &a, Money const &b)
  {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class value_{0};
};

std::ostream &operator<<(std::ostream &os, Money const &m);

Money min(Money const &a, Money const &b);
Money max(Money const &a, Money const &b);

/// A bid as seen by the Shapley loop: either a finite amount or the
/// distinguished infinite bid used to pin already-serviced users.
class BidValue
{
public:
  BidValue() = default;
  BidValue(Money amount)  // NOLINT(google-explicit-constructor)
    : amount_(std::move(amount))
  {}

  static BidValue infinite()
  {
    BidValue b;
    b.infinite_ = true;
    return b;
  }

  bool is_infinite() const
  {
    return infinite_;
  }
  Money const &amount() const
  {
    return amount_;
  }

  /// True when this bid is at least `share`.
  bool covers(Money const &share) const
  {
    return infinite_ || amount_ >= share;
  }

  /// A zero bid can never cover a positive share.
  bool is_zero() const
  {
    return !infinite_ && amount_.is_zero();
  }

  friend bool operator==(BidValue const &a, BidValue const &b)
  {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.amount_ == b.amount_);
  }

private:
  Money amount_;
  bool  infinite_{false};
};

std::ostream &operator<<(std::ostream &os, BidValue const &b);

}  // namespace cloudshare
