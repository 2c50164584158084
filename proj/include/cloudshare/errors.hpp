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

#include <stdexcept>
#include <string>

namespace cloudshare {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the values handed to an operation does not hold.
class DomainError : public Error
{
public:
  using Error::Error;
};

/// An optimization id is not part of the catalog.
class CatalogMismatch : public Error
{
public:
  using Error::Error;
};

/// A bid update broke the revision rules (retroactive, downward, shrunk end).
class RevisionError : public Error
{
public:
  using Error::Error;
};

/// Session slots were fed out of order.
class SequencingError : public Error
{
public:
  using Error::Error;
};

/// Instance too large for exhaustive enumeration.
class GuardError : public Error
{
public:
  using Error::Error;
};

/// Invalid experiment/game configuration. `field` is a dotted path.
class ConfigError : public Error
{
public:
  ConfigError(std::string field, std::string const &message)
    : Error(field + ": " + message)
    , field_(std::move(field))
  {}

  std::string const &field() const
  {
    return field_;
  }

private:
  std::string field_;
};

}  // namespace cloudshare
