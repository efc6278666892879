// Copyright 2026 The ownet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OWNET_ERROR_HPP
#define OWNET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ownet {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller input (bad ids, bad ranges, bad configs).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable files and directories.
class IoError : public Error {
 public:
  using Error::Error;
};

// Syntactically broken input files (CSV/JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A domain constraint could not be met while running (e.g. the rewiring
// sampler exceeded its rejection budget).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

}  // namespace ownet

#endif  // OWNET_ERROR_HPP
