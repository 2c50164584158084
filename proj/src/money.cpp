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

#include "cloudshare/money.hpp"

#include "cloudshare/errors.hpp"

#include <cctype>
#include <ostream>

namespace cloudshare {

namespace {

bool all_digits(std::string_view s)
{
  if (s.empty())
  {
    return false;
  }
  for (char c : s)
  {
    if (!std::isdigit(static_cast<unsigned char>(c)))
    {
      return false;
    }
  }
  return true;
}

mpz_class pow10(unsigned long exponent)
{
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, exponent);
  return p;
}

[[noreturn]] void bad_amount(std::string_view text)
{
  throw DomainError("not a monetary amount: '" + std::string(text) + "'");
}

mpq_class parse_decimal(std::string_view text)
{
  std::string_view body = text;
  bool             negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+'))
  {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos)
  {
    std::string_view exp_text = body.substr(e + 1);
    body                      = body.substr(0, e);
    bool exp_negative         = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+'))
    {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
    {
      bad_amount(text);
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative)
    {
      exponent = -exponent;
    }
  }

  std::string_view whole = body;
  std::string_view frac;
  if (auto dot = body.find('.'); dot != std::string_view::npos)
  {
    whole = body.substr(0, dot);
    frac  = body.substr(dot + 1);
  }
  if (whole.empty() && frac.empty())
  {
    bad_amount(text);
  }
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
  {
    bad_amount(text);
  }

  std::string digits = std::string(whole) + std::string(frac);
  mpz_class   num(digits.empty() ? std::string("0") : digits, 10);
  exponent -= static_cast<long>(frac.size());

  mpq_class q;
  if (exponent >= 0)
  {
    q = mpq_class(num * pow10(static_cast<unsigned long>(exponent)));
  }
  else
  {
    q = mpq_class(num, pow10(static_cast<unsigned long>(-exponent)));
  }
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

mpq_class parse_fraction(std::string_view text, std::size_t slash)
{
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  bool             negative = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+'))
  {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!all_digits(num) || !all_digits(den))
  {
    bad_amount(text);
  }
  mpz_class d(std::string(den), 10);
  if (d == 0)
  {
    bad_amount(text);
  }
  mpq_class q(mpz_class(std::string(num), 10), d);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace

Money::Money(std::int64_t whole)
  : value_(static_cast<long>(whole))
{}

Money::Money(mpq_class value)
  : value_(std::move(value))
{
  value_.canonicalize();
}

Money Money::from_fraction(std::int64_t numerator, std::int64_t denominator)
{
  if (denominator == 0)
  {
    throw DomainError("zero denominator");
  }
  return Money(mpq_class(mpz_class(static_cast<long>(numerator)),
                         mpz_class(static_cast<long>(denominator))));
}

Money Money::parse(std::string_view text)
{
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
  {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
  {
    text.remove_suffix(1);
  }
  if (text.empty())
  {
    bad_amount(text);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos)
  {
    return Money(parse_fraction(text, slash));
  }
  return Money(parse_decimal(text));
}

std::string Money::to_decimal(int digits) const
{
  if (digits < 0)
  {
    digits = 0;
  }
  mpz_class scale = pow10(static_cast<unsigned long>(digits));
  mpz_class num   = abs(value_.get_num()) * scale;
  mpz_class const &den = value_.get_den();

  mpz_class q;
  mpz_class r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  int half = cmp(mpz_class(r * 2), den);
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t())))
  {
    q += 1;
  }

  std::string text = q.get_str(10);
  if (digits > 0)
  {
    if (text.size() <= static_cast<std::size_t>(digits))
    {
      text.insert(0, static_cast<std::size_t>(digits) + 1 - text.size(), '0');
    }
    text.insert(text.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sign() < 0 && q != 0)
  {
    text.insert(0, "-");
  }
  return text;
}

std::string Money::to_fraction() const
{
  if (value_.get_den() == 1)
  {
    return value_.get_num().get_str(10);
  }
  return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10);
}

double Money::to_double() const
{
  return value_.get_d();
}

Money &Money::operator+=(Money const &other)
{
  value_ += other.value_;
  return *this;
}

Money &Money::operator-=(Money const &other)
{
  value_ -= other.value_;
  return *this;
}

Money &Money::operator*=(Money const &other)
{
  value_ *= other.value_;
  return *this;
}

Money &Money::operator/=(Money const &other)
{
  if (other.is_zero())
  {
    throw DomainError("division by zero amount");
  }
  value_ /= other.value_;
  return *this;
}

Money Money::operator-() const
{
  return Money(mpq_class(-value_));
}

Money Money::times(std::int64_t factor) const
{
  mpq_class r = value_ * mpq_class(static_cast<long>(factor));
  return Money(std::move(r));
}

Money Money::divided_by(std::int64_t divisor) const
{
  if (divisor <= 0)
  {
    throw DomainError("division by a non-positive count");
  }
  mpq_class r = value_ / mpq_class(static_cast<long>(divisor));
  return Money(std::move(r));
}

std::ostream &operator<<(std::ostream &os, Money const &m)
{
  return os << m.to_fraction();
}

Money min(Money const &a, Money const &b)
{
  return b < a ? b : a;
}

Money max(Money const &a, Money const &b)
{
  return a < b ? b : a;
}

std::ostream &operator<<(std::ostream &os, BidValue const &b)
{
  if (b.is_infinite())
  {
    return os << "inf";
  }
  return os << b.amount();
}

}  // namespace cloudshare
