// Copyright 2026 The ICL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ICL_ERRORS_HPP
#define ICL_ERRORS_HPP

#include <stdexcept>

namespace icl {

/// Raised when a conditional statistic is requested but the herald never fires
/// (zero idler photon number or zero click probability).
class NoHeraldEvents : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The Fock oracle would exceed its Hilbert-space budget.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Too much probability weight sits at the Fock cutoff for results to be trusted.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace icl

#endif  // ICL_ERRORS_HPP
