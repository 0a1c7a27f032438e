// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slf/rat.hpp"

namespace slf {

using JobId = std::int64_t;

// Release date plus an epoch; epoch > 0 marks "immediately after time".
struct ReleaseTag {
  Rat time;
  std::uint64_t epoch = 0;

  friend bool operator==(const ReleaseTag& a, const ReleaseTag& b) {
    return a.time == b.time && a.epoch == b.epoch;
  }
  friend bool operator<(const ReleaseTag& a, const ReleaseTag& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.epoch < b.epoch;
  }
};

struct Job {
  JobId id = 0;
  ReleaseTag release;
  Rat size;  // meaningless while !declared
  bool declared = true;

  friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
  Rat epsilon;
  std::vector<Job> jobs;
  std::map<std::string, std::string> meta;

  const Job* find(JobId id) const;
  friend bool operator==(const Instance&, const Instance&) = default;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws InputError. Checks id uniqueness, ranges and ε ∈ [0,1].
void validate_instance(const Instance& inst);

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

Instance scale_instance(const Instance& inst, const Rat& factor);

struct BusyPeriod {
  Rat start;
  Rat end;
  Instance sub;
};

std::vector<BusyPeriod> busy_periods(const Instance& inst);

// Jobs ordered by (release tag, id).
std::vector<Job> jobs_by_release(const Instance& inst);

}  // namespace slf
