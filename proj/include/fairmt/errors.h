// Copyright 2026 The fairmt Authors
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

#ifndef FAIRMT_ERRORS_H_
#define FAIRMT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fairmt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files and invalid settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A loaded object breaks one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Boundary analysis was requested on a nominal category.
class NotOrderedError : public Error {
 public:
  using Error::Error;
};

// A required upstream file (corpus, pairs, responses) is absent.
class UpstreamMissingError : public Error {
 public:
  using Error::Error;
};

// Remote endpoint failure after retries.
class AdapterError : public Error {
 public:
  using Error::Error;
};

class CacheMissError : public AdapterError {
 public:
  using AdapterError::AdapterError;
};

}  // namespace fairmt

#endif  // FAIRMT_ERRORS_H_
