// Copyright 2026 The nlsearch Authors
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

#pragma once

// Batch run of the invariant suites behind `nlsearch verify`.

#include <functional>
#include <string>
#include <vector>

#include "nlsearch/nldyn.hpp"
#include "nlsearch/qstate.hpp"

namespace nlsearch {

using Propagator = std::function<StateVector(const StateVector&, double,
                                             const NonlinearParams&)>;

struct VerifyOptions {
  /// Closed-form propagator under test; defaults to closed_form_evolve.
  Propagator propagator;
};

/// closed_form_evolve with the sign of the sine term flipped. Used to check
/// that the suites notice a broken propagator.
Propagator sign_flipped_propagator();

struct SuiteResult {
  std::string name;
  double tolerance = 0.0;
  /// Largest deviation observed, in the units the tolerance is stated in.
  double worst = 0.0;
  bool passed = false;
  std::string detail;
};

std::vector<SuiteResult> run_verification(const VerifyOptions& options = {});

/// Suite names in run order.
std::vector<std::string> verification_suite_names();

}  // namespace nlsearch
