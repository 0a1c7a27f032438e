// SPDX-License-Identifier: Apache-2.0
#include "slf/instance.hpp"

#include <algorithm>
#include <set>

namespace slf {

const Job* Instance::find(JobId id) const {
  for (const auto& j : jobs)
    if (j.id == id) return &j;
  return nullptr;
}

void validate_instance(const Instance& inst) {
  if (inst.epsilon < 0 || inst.epsilon > 1) throw InputError("epsilon outside [0,1]");
  std::set<JobId> seen;
  for (const auto& j : inst.jobs) {
    if (!seen.insert(j.id).second) throw InputError("duplicate job id " + std::to_string(j.id));
    if (j.release.time < 0) throw InputError("negative release for job " + std::to_string(j.id));
    if (j.declared && j.size <= 0)
      throw InputError("non-positive size for job " + std::to_string(j.id));
  }
}

Instance scale_instance(const Instance& inst, const Rat& factor) {
  if (factor <= 0) throw InputError("scale factor must be positive");
  Instance out = inst;
  for (auto& j : out.jobs)
    if (j.declared) j.size *= factor;
  return out;
}

std::vector<Job> jobs_by_release(const Instance& inst) {
  std::vector<Job> v = inst.jobs;
  std::sort(v.begin(), v.end(), [](const Job& a, const Job& b) {
    if (!(a.release == b.release)) return a.release < b.release;
    return a.id < b.id;
  });
  return v;
}

std::vector<BusyPeriod> busy_periods(const Instance& inst) {
  std::vector<BusyPeriod> out;
  for (const auto& j : jobs_by_release(inst)) {
    if (!j.declared) throw InputError("busy_periods needs declared sizes");
    if (out.empty() || j.release.time > out.back().end) {
      BusyPeriod bp;
      bp.start = j.release.time;
      bp.end = j.release.time;
      bp.sub.epsilon = inst.epsilon;
      out.push_back(std::move(bp));
    }
    out.back().end += j.size;
    out.back().sub.jobs.push_back(j);
  }
  return out;
}

}  // namespace slf
