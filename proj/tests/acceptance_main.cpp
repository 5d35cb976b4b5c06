/*
 * Copyright 2026 The revspy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Prints one line per acceptance criterion; exits non-zero unless every
// criterion passes.

#include <cstdlib>
#include <iostream>
#include <string>

#include "revspy/acceptance.hpp"

int main(int argc, char** argv) {
  revspy::AcceptanceOptions options;
  if (argc > 1) options.threads = static_cast<unsigned>(std::stoul(argv[1]));
  int passed = 0;
  revspy::run_acceptance(options, [&](const revspy::CriterionResult& r) {
    passed += r.status == revspy::CriterionStatus::Pass;
    std::cout << r.line() << std::endl;
  });
  std::cout << passed << "/" << revspy::kCriteria << " criteria passed" << std::endl;
  return passed == revspy::kCriteria ? EXIT_SUCCESS : EXIT_FAILURE;
}
