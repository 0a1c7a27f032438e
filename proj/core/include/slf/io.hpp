// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "slf/adversary.hpp"
#include "slf/assignment.hpp"
#include "slf/certifier.hpp"
#include "slf/metrics.hpp"
#include "slf/reduction.hpp"
#include "slf/sim.hpp"

namespace slf {

// parse_instance / serialize_instance live in instance.hpp; these read and write files.
Instance load_instance(const std::string& path);  // throws InputError
void write_text(const std::string& path, const std::string& text);
// [["a","b"], ...] as half-open [a, b) intervals
IntervalSet parse_intervals(const std::string& text);

// rows start,end,job_id,rate
std::string schedule_csv(const Schedule& sched);
// one {"t","kind","job"} object per line
std::string events_jsonl(const Schedule& sched);

std::string metrics_json(const Rat& flow_alg, const Rat& flow_opt, const CompetitivenessReport& local);
// rows t,count_alg,count_opt
std::string counts_csv(const CompetitivenessReport& local);

std::string graph_json(const Graph& g);
std::string transcript_jsonl(const std::vector<IterationRecord>& transcript);
std::string certificate_json(const Certificate& cert);
std::string verify_json(const VerifyReport& rep);
std::string counterexample_json(const CounterexampleReport& rep);

std::string reduction_json(const ReductionReport& rep);
std::string adversary_json(const AdversaryTranscript& tr);
// one row per sample: kind,param,epsilon,seed,n,delta_alg,delta_opt,flow_alg,flow_opt,ratio
std::string lb_rows_csv(const LbSummary& sum, bool header = true);
std::string lb_summary_json(const LbSummary& sum);

}  // namespace slf
