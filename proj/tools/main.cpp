// SPDX-License-Identifier: Apache-2.0
//
// slf: command-line front end.
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slf/adversary.hpp"
#include "slf/certifier.hpp"
#include "slf/io.hpp"
#include "slf/metrics.hpp"
#include "slf/reduction.hpp"
#include "slf/sim.hpp"

namespace fs = std::filesystem;
using namespace slf;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Globals {
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
};

std::string out_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out);
  return (fs::path(g.out) / name).string();
}

Rat rat_arg(const std::string& s, const char* what) {
  try {
    return parse_rat(s);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

Instance load_with(const std::string& path, const std::string& eps) {
  Instance inst = load_instance(path);
  if (!eps.empty()) {
    inst.epsilon = rat_arg(eps, "--epsilon");
    validate_instance(inst);
  }
  return inst;
}

std::uint64_t need_seed(const Globals& g) {
  if (!g.seed) throw InputError("--seed is required for sampling commands");
  return *g.seed;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string instance, policy = "slf", eps, speed = "1", forbidden;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  Instance inst = load_with(a.instance, a.eps);
  SimOptions o;
  o.speed = rat_arg(a.speed, "--speed");
  if (!a.forbidden.empty()) {
    std::ifstream in(a.forbidden);
    if (!in) throw InputError("cannot read " + a.forbidden);
    std::stringstream ss;
    ss << in.rdbuf();
    o.forbidden = parse_intervals(ss.str());
  }
  Policy p = parse_policy(a.policy);
  Schedule s = simulate(inst, p, o);
  Schedule opt = simulate(inst, Policy::srpt);
  Rat rho = sgn(inst.epsilon) > 0 ? Rat(ceil_inverse(inst.epsilon)) : Rat(static_cast<long>(inst.jobs.size()));
  auto local = local_competitiveness(s, opt, rho);
  std::string m = metrics_json(total_flow_time(s, inst), total_flow_time(opt, inst), local);
  write_text(out_path(g, "schedule.csv"), schedule_csv(s));
  write_text(out_path(g, "events.jsonl"), events_jsonl(s));
  write_text(out_path(g, "metrics.json"), m);
  std::cout << m;
  return kOk;
}

struct CompareArgs {
  std::string instance, eps;
};

int cmd_compare(const Globals& g, const CompareArgs& a) {
  Instance inst = load_with(a.instance, a.eps);
  if (sgn(inst.epsilon) <= 0) throw InputError("compare needs epsilon > 0");
  Schedule s = simulate(inst, Policy::slf);
  Schedule opt = simulate(inst, Policy::srpt);
  auto local = local_competitiveness(s, opt, Rat(ceil_inverse(inst.epsilon)));
  std::string m = metrics_json(total_flow_time(s, inst), total_flow_time(opt, inst), local);
  write_text(out_path(g, "metrics.json"), m);
  write_text(out_path(g, "counts.csv"), counts_csv(local));
  std::cout << m;
  return local.pass ? kOk : kFail;
}

struct CertifyArgs {
  std::string instance, eps, time;
};

int cmd_certify(const Globals& g, const CertifyArgs& a) {
  Instance inst = load_with(a.instance, a.eps);
  Rat t = rat_arg(a.time, "--time");
  try {
    Certificate cert = create_valid_assignment(inst, t);
    VerifyReport rep = verify_certificate(cert);
    write_text(out_path(g, "certificate.json"), certificate_json(cert));
    write_text(out_path(g, "transcript.jsonl"), transcript_jsonl(cert.transcript));
    std::string v = verify_json(rep);
    write_text(out_path(g, "verify.json"), v);
    std::cout << v;
    return rep.pass() ? kOk : kFail;
  } catch (const CertificationFailure& f) {
    std::string c = counterexample_json(f.report);
    write_text(out_path(g, "counterexample.json"), c);
    std::cout << c;
    return kFail;
  }
}

struct AdversaryArgs {
  std::string eps = "1/2", policy = "slf";
  int rounds = 1;
  std::int64_t tail = 0;
};

int cmd_adversary_det(const Globals& g, const AdversaryArgs& a) {
  Rat eps = rat_arg(a.eps, "--epsilon");
  try {
    AdversaryTranscript tr = deterministic_lb_run(parse_policy(a.policy), eps, a.rounds, a.tail);
    std::string j = adversary_json(tr);
    write_text(out_path(g, "adversary.json"), j);
    write_text(out_path(g, "instance.json"), serialize_instance(tr.instance));
    std::cout << j;
    return tr.replay_ok ? kOk : kFail;
  } catch (const AdversaryClaimFailure& e) {
    std::cerr << "claim failed: " << e.what() << "\n";
    return kFail;
  }
}

struct SampleArgs {
  std::string kind = "geometric", eps = "1/2", file;
  int k = 1, n = 1;
};

int cmd_sample(const Globals& g, const SampleArgs& a) {
  std::uint64_t seed = need_seed(g);
  Instance inst;
  switch (parse_sampler_kind(a.kind)) {
    case SamplerKind::geometric: {
      auto s = randomized_lb_sample(a.k, seed);
      inst = std::move(s.instance);
      inst.meta["tau"] = to_string(s.tau);
      break;
    }
    case SamplerKind::phase: inst = phase_lb_sample(rat_arg(a.eps, "--epsilon"), a.k, seed); break;
    case SamplerKind::exponential: inst = exp_simultaneous_sample(a.n, seed, rat_arg(a.eps, "--epsilon")); break;
  }
  std::string text = serialize_instance(inst);
  if (a.file.empty())
    std::cout << text;
  else
    write_text(a.file, text);
  return kOk;
}

struct SweepArgs {
  std::string kind = "exp", policy = "slf";
  std::vector<int> params;
  std::vector<std::string> epsilons{"1/2"};
  int samples = 10;
};

int cmd_sweep(const Globals& g, const SweepArgs& a) {
  std::uint64_t seed = need_seed(g);
  SamplerKind kind = parse_sampler_kind(a.kind);
  if (a.samples < 0) throw InputError("--samples must be non-negative");
  if (a.params.empty()) throw InputError("--param needs at least one value");
  Policy p = parse_policy(a.policy);
  std::string rows = "kind,param,epsilon,seed,n,delta_alg,delta_opt,flow_alg,flow_opt,ratio\n";
  std::ostringstream agg;
  agg << "kind,param,epsilon,samples,mean_ratio,half_width,delta_ratio,target\n";
  agg.precision(10);
  std::vector<std::string> eps_list = kind == SamplerKind::geometric ? std::vector<std::string>{"-"} : a.epsilons;
  for (int param : a.params)
    for (const auto& es : eps_list) {
      Rat eps = es == "-" ? Rat(0) : rat_arg(es, "--epsilon");
      LbSummary s = lb_statistics(kind, param, eps, a.samples, p, seed, g.jobs);
      rows += lb_rows_csv(s, false);
      agg << sampler_kind_name(kind) << ',' << param << ',' << to_string(s.epsilon) << ',' << s.rows.size() << ','
          << s.mean_ratio << ',' << s.ratio_half_width << ',' << s.delta_ratio << ',' << s.target << '\n';
    }
  write_text(out_path(g, "sweep.csv"), rows);
  write_text(out_path(g, "sweep_summary.csv"), agg.str());
  std::cout << agg.str();
  return kOk;
}

struct ReduceArgs {
  std::string instance, eps;
};

int cmd_reduce(const Globals& g, const ReduceArgs& a) {
  Instance inst = load_instance(a.instance);
  Rat eps = a.eps.empty() ? inst.epsilon : rat_arg(a.eps, "--epsilon");
  ReductionReport rep = reduction_check(inst, eps);
  std::string j = reduction_json(rep);
  write_text(out_path(g, "reduction.json"), j);
  std::cout << j;
  return rep.pass() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic lab for epsilon-clairvoyant flow-time scheduling"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed for sampling commands");
  app.add_option("--jobs", g.jobs, "worker threads for batch commands")->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "simulate one policy; writes schedule.csv, events.jsonl, metrics.json");
  c_sim->add_option("instance", sim.instance)->required();
  c_sim->add_option("--policy", sim.policy)->capture_default_str();
  c_sim->add_option("--epsilon", sim.eps, "override the instance epsilon");
  c_sim->add_option("--speed", sim.speed)->capture_default_str();
  c_sim->add_option("--forbidden", sim.forbidden, "JSON file of [a,b) intervals");

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "SLF against SRPT with the local check at ceil(1/eps)");
  c_cmp->add_option("instance", cmp.instance)->required();
  c_cmp->add_option("--epsilon", cmp.eps);

  CertifyArgs cert;
  auto* c_cert = app.add_subcommand("certify", "build and verify a valid assignment at --time");
  c_cert->add_option("instance", cert.instance)->required();
  c_cert->add_option("--time", cert.time)->required();
  c_cert->add_option("--epsilon", cert.eps);

  auto* c_adv = app.add_subcommand("adversary", "lower-bound constructions");
  c_adv->require_subcommand(1);
  AdversaryArgs adv;
  auto* c_det = c_adv->add_subcommand("det", "adaptive round adversary");
  c_det->add_option("--epsilon", adv.eps)->capture_default_str();
  c_det->add_option("--rounds", adv.rounds)->capture_default_str()->check(CLI::NonNegativeNumber);
  c_det->add_option("--tail", adv.tail)->capture_default_str()->check(CLI::NonNegativeNumber);
  c_det->add_option("--policy", adv.policy)->capture_default_str();

  SampleArgs smp;
  auto add_sample_opts = [&](CLI::App* c) {
    c->add_option("--kind", smp.kind, "geometric | phase | exp")->capture_default_str();
    c->add_option("--k", smp.k, "k (geometric) or phase count")->capture_default_str();
    c->add_option("--n", smp.n, "job count (exp)")->capture_default_str();
    c->add_option("--epsilon", smp.eps)->capture_default_str();
    c->add_option("--file", smp.file, "write the instance here instead of stdout");
  };
  auto* c_asmp = c_adv->add_subcommand("sample", "draw one randomized instance");
  add_sample_opts(c_asmp);
  auto* c_smp = app.add_subcommand("sample", "same as 'adversary sample'");
  add_sample_opts(c_smp);

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "Monte-Carlo campaign; writes sweep.csv and sweep_summary.csv");
  c_sw->add_option("--kind", sw.kind)->capture_default_str();
  c_sw->add_option("--param", sw.params, "k (geometric, phase) or n (exp) values")->required();
  c_sw->add_option("--epsilon", sw.epsilons)->capture_default_str();
  c_sw->add_option("--samples", sw.samples)->capture_default_str();
  c_sw->add_option("--policy", sw.policy)->capture_default_str();

  ReduceArgs red;
  auto* c_red = app.add_subcommand("reduce", "SLF / SETF / SETFI chain report");
  c_red->add_option("instance", red.instance)->required();
  c_red->add_option("--epsilon", red.eps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*c_sim) return cmd_simulate(g, sim);
    if (*c_cmp) return cmd_compare(g, cmp);
    if (*c_cert) return cmd_certify(g, cert);
    if (*c_det) return cmd_adversary_det(g, adv);
    if (*c_asmp || *c_smp) return cmd_sample(g, smp);
    if (*c_sw) return cmd_sweep(g, sw);
    if (*c_red) return cmd_reduce(g, red);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kInput;
}
