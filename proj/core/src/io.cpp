// SPDX-License-Identifier: Apache-2.0
#include "slf/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace slf {

using json = nlohmann::ordered_json;

namespace {

Rat rat_field(const json& v, const char* what) {
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(mpz_class(v.dump()));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
  throw InputError(std::string(what) + " must be a rational string");
}

json rat(const Rat& r) { return to_string(r); }

json opt_rat(const std::optional<Rat>& r) { return r ? json(to_string(*r)) : json(nullptr); }

json graph_obj(const Graph& g) {
  json out;
  out["left"] = json::array();
  out["right"] = json::array();
  for (JobId id : g.left) out["left"].push_back({{"id", id}, {"vol", rat(g.vol(id))}});
  for (JobId id : g.right) out["right"].push_back({{"id", id}, {"vol", rat(g.vol_star(id))}});
  out["edges"] = json::array();
  for (const auto& [lr, w] : g.edges) out["edges"].push_back({{"l", lr.first}, {"r", lr.second}, {"w", rat(w)}});
  return out;
}

json instance_obj(const Instance& inst) {
  json out;
  out["epsilon"] = rat(inst.epsilon);
  out["jobs"] = json::array();
  for (const auto& j : inst.jobs) {
    json o{{"id", j.id}, {"release", rat(j.release.time)}};
    if (j.declared)
      o["size"] = rat(j.size);
    else
      o["declared"] = false;
    if (j.release.epoch) o["epoch"] = j.release.epoch;
    out["jobs"].push_back(std::move(o));
  }
  if (!inst.meta.empty()) out["meta"] = inst.meta;
  return out;
}

json record_obj(const IterationRecord& r) {
  json o{{"kind", r.kind}, {"s", rat(r.s)}, {"s_next", rat(r.s_next)}};
  if (r.leader) o["leader"] = *r.leader;
  if (r.b_s) o["b_s"] = rat(*r.b_s);
  if (r.ell_s) o["ell_s"] = rat(*r.ell_s);
  if (r.move) o["move"] = {rat(r.move->first), rat(r.move->second)};
  if (!r.moved.empty()) o["moved"] = r.moved;
  if (!r.branch.empty()) o["branch"] = r.branch;
  o["inv1"] = r.inv1;
  o["inv2"] = r.inv2;
  o["inv3"] = r.inv3;
  o["phi"] = rat(r.phi);
  return o;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  Instance inst;
  if (!doc.contains("epsilon")) throw InputError("missing epsilon");
  inst.epsilon = rat_field(doc["epsilon"], "epsilon");
  if (doc.contains("jobs")) {
    if (!doc["jobs"].is_array()) throw InputError("jobs must be an array");
    for (const auto& o : doc["jobs"]) {
      if (!o.is_object() || !o.contains("id") || !o["id"].is_number_integer())
        throw InputError("each job needs an integer id");
      Job j;
      j.id = o["id"].get<JobId>();
      if (j.id <= 0) throw InputError("job ids must be positive");
      if (!o.contains("release")) throw InputError("job " + std::to_string(j.id) + " has no release");
      j.release.time = rat_field(o["release"], "release");
      if (o.contains("epoch")) {
        if (!o["epoch"].is_number_unsigned()) throw InputError("epoch must be a non-negative integer");
        j.release.epoch = o["epoch"].get<std::uint64_t>();
      }
      j.declared = !o.contains("declared") || o["declared"].get<bool>();
      if (j.declared) {
        if (!o.contains("size")) throw InputError("job " + std::to_string(j.id) + " has no size");
        j.size = rat_field(o["size"], "size");
      }
      inst.jobs.push_back(std::move(j));
    }
  }
  if (doc.contains("meta") && doc["meta"].is_object())
    for (const auto& [k, v] : doc["meta"].items()) inst.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  validate_instance(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) { return instance_obj(inst).dump(2) + "\n"; }

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

IntervalSet parse_intervals(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("forbidden")) doc = doc["forbidden"];
  if (!doc.is_array()) throw InputError("intervals must be an array of pairs");
  std::vector<std::pair<Rat, Rat>> iv;
  for (const auto& p : doc) {
    if (!p.is_array() || p.size() != 2) throw InputError("intervals must be an array of pairs");
    iv.emplace_back(rat_field(p[0], "interval start"), rat_field(p[1], "interval end"));
  }
  return IntervalSet(std::move(iv));
}

std::string schedule_csv(const Schedule& sched) {
  std::string out = "start,end,job_id,rate\n";
  for (const auto& seg : sched.segments)
    for (const auto& [id, r] : seg.alloc.rates)
      out += to_string(seg.start) + "," + to_string(seg.end) + "," + std::to_string(id) + "," + to_string(r) + "\n";
  return out;
}

std::string events_jsonl(const Schedule& sched) {
  std::string out;
  for (const auto& e : sched.events) {
    json o{{"t", rat(e.t)}, {"kind", event_kind_name(e.kind)}};
    o["job"] = e.job ? json(e.job) : json(nullptr);
    out += o.dump() + "\n";
  }
  return out;
}

std::string metrics_json(const Rat& flow_alg, const Rat& flow_opt, const CompetitivenessReport& local) {
  json o;
  o["flow_alg"] = rat(flow_alg);
  o["flow_opt"] = rat(flow_opt);
  o["ratio"] = sgn(flow_opt) > 0 ? rat(flow_alg / flow_opt) : json("1");
  o["local_ok"] = local.pass;
  o["witness"] = opt_rat(local.witness_time);
  o["rho"] = rat(local.rho);
  o["max_count_ratio"] = rat(local.max_count_ratio);
  return o.dump(2) + "\n";
}

std::string counts_csv(const CompetitivenessReport& local) {
  std::string out = "t,count_alg,count_opt\n";
  for (const auto& r : local.table)
    out += to_string(r.t) + "," + std::to_string(r.alg) + "," + std::to_string(r.opt) + "\n";
  return out;
}

std::string graph_json(const Graph& g) { return graph_obj(g).dump(2) + "\n"; }

std::string transcript_jsonl(const std::vector<IterationRecord>& transcript) {
  std::string out;
  for (const auto& r : transcript) out += record_obj(r).dump() + "\n";
  return out;
}

std::string certificate_json(const Certificate& cert) {
  json o;
  o["t"] = rat(cert.target_time);
  o["phi"] = rat(cert.assignment.phi);
  o["valid"] = cert.assignment.valid;
  o["instance"] = instance_obj(cert.transformed);
  o["graph"] = graph_obj(cert.assignment.graph);
  o["transcript"] = json::array();
  for (const auto& r : cert.transcript) o["transcript"].push_back(record_obj(r));
  return o.dump(2) + "\n";
}

std::string verify_json(const VerifyReport& rep) {
  json o;
  o["pass"] = rep.pass();
  o["checks"] = json::array();
  for (const auto& c : rep.checks) o["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return o.dump(2) + "\n";
}

std::string counterexample_json(const CounterexampleReport& rep) {
  json o;
  o["check"] = rep.check;
  o["detail"] = rep.detail;
  o["s"] = rat(rep.s);
  o["instance"] = instance_obj(rep.transformed);
  o["transcript"] = json::array();
  for (const auto& r : rep.transcript) o["transcript"].push_back(record_obj(r));
  return o.dump(2) + "\n";
}

std::string reduction_json(const ReductionReport& rep) {
  json o;
  o["epsilon"] = rat(rep.epsilon);
  o["delta"] = rat(rep.delta);
  o["pass"] = rep.pass();
  o["witness"] = opt_rat(rep.witness_time);
  o["forbidden"] = json::array();
  for (const auto& [a, b] : rep.forbidden.intervals()) o["forbidden"].push_back({rat(a), rat(b)});
  o["checks"] = json::array();
  for (const auto& c : rep.checks) o["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  o["rows"] = json::array();
  for (const auto& r : rep.rows)
    o["rows"].push_back({{"t", rat(r.t)},
                         {"setf_fast", r.setf_fast},
                         {"setf_scaled", r.setf_scaled},
                         {"setfi", r.setfi},
                         {"slf", r.slf}});
  return o.dump(2) + "\n";
}

std::string adversary_json(const AdversaryTranscript& tr) {
  json o;
  o["epsilon"] = rat(tr.epsilon);
  o["policy"] = policy_name(tr.policy);
  o["tail"] = tr.tail;
  o["rounds"] = json::array();
  for (const auto& r : tr.rounds) {
    json d = json::array();
    for (const auto& [id, p] : r.declared) d.push_back({{"id", id}, {"size", rat(p)}});
    o["rounds"].push_back({{"c", r.c},
                           {"t_c", rat(r.t_c)},
                           {"t_prime", rat(r.t_prime)},
                           {"t_dprime", rat(r.t_dprime)},
                           {"gamma", rat(r.gamma)},
                           {"r_star", rat(r.r_star)},
                           {"j_c", r.j_c},
                           {"j_max", r.j_max},
                           {"j_min", r.j_min},
                           {"declared", d},
                           {"alg_count", r.alg_count},
                           {"smart_count", r.smart_count},
                           {"srpt_count", r.opt_count},
                           {"claim_ok", r.claim_ok}});
  }
  o["flow_alg"] = rat(tr.flow_alg);
  o["flow_opt"] = rat(tr.flow_opt);
  o["ratio"] = rat(tr.ratio);
  o["ratio_approx"] = to_double(tr.ratio);
  o["replay_ok"] = tr.replay_ok;
  return o.dump(2) + "\n";
}

std::string lb_rows_csv(const LbSummary& sum, bool header) {
  std::ostringstream os;
  if (header) os << "kind,param,epsilon,seed,n,delta_alg,delta_opt,flow_alg,flow_opt,ratio\n";
  os.precision(17);
  for (const auto& r : sum.rows)
    os << sampler_kind_name(sum.kind) << ',' << sum.param << ',' << to_string(sum.epsilon) << ',' << r.seed << ','
       << r.n << ',' << r.delta_alg << ',' << r.delta_opt << ',' << to_string(r.flow_alg) << ','
       << to_string(r.flow_opt) << ',' << r.ratio << '\n';
  return os.str();
}

std::string lb_summary_json(const LbSummary& sum) {
  json o;
  o["kind"] = sampler_kind_name(sum.kind);
  o["param"] = sum.param;
  o["epsilon"] = rat(sum.epsilon);
  o["samples"] = sum.rows.size();
  o["mean_delta_alg"] = sum.mean_delta_alg;
  o["mean_delta_opt"] = sum.mean_delta_opt;
  o["delta_ratio"] = sum.delta_ratio;
  o["mean_ratio"] = sum.mean_ratio;
  o["ratio_half_width"] = sum.ratio_half_width;
  if (sum.kind == SamplerKind::exponential) o["target"] = sum.target;
  return o.dump(2) + "\n";
}

}  // namespace slf
