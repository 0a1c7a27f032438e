// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <utility>

#include "slf/instance.hpp"

namespace slf::testing {

inline Instance make_instance(const Rat& eps, std::initializer_list<std::pair<Rat, Rat>> release_size) {
  Instance inst;
  inst.epsilon = eps;
  JobId id = 1;
  for (const auto& [q, p] : release_size) inst.jobs.push_back(Job{id++, {q, 0}, p, true});
  return inst;
}

// ε = 1/2, sizes 5,4,3,3,2,1 released at 0.
inline Instance toy_instance() {
  return make_instance(Rat(1, 2), {{0, 5}, {0, 4}, {0, 3}, {0, 3}, {0, 2}, {0, 1}});
}

// Sizes 5 and 4 at 0, then 6 and 8 at 5.
// Optionally two more (3 and 7/2) at 21.
inline Instance walkthrough_instance(bool with_late_batch) {
  Instance inst = make_instance(Rat(1, 2), {{0, 5}, {0, 4}, {5, 6}, {5, 8}});
  if (with_late_batch) {
    inst.jobs.push_back(Job{5, {Rat(21), 0}, Rat(3), true});
    inst.jobs.push_back(Job{6, {Rat(21), 0}, Rat(7, 2), true});
  }
  return inst;
}

}  // namespace slf::testing
