// Batch front door: construct / verify / sweep / enumerate over k-ary n-cube
// Hamiltonian embedding instances.
//
// Exit codes: 0 success, 2 precondition violated (the clause is printed),
// 3 budget or capability exceeded (or a sweep failure), 4 malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "kcube/campaign.hpp"
#include "kcube/construction.hpp"
#include "kcube/io.hpp"
#include "kcube/search.hpp"

using namespace kcube;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitBudget = 3;
constexpr int kExitMalformed = 4;

struct ConstructArgs {
  int n = 0, k = 0;
  std::string matching_file;
  std::string lemma;
  std::string policy = "relaxed";
  int base_n = 4;
  uint64_t budget_nodes = 50'000'000ULL;
  uint64_t seed = 0;
  std::string out_file;
  std::string format = "json";
  std::string trace_file;
};

RangeView view_from_instance(const InstanceFile& inst) {
  if (!inst.split_d) throw InputError("lemma requires a split section (d, p, q)");
  SplitContext ctx{inst.shape, *inst.split_d, inst.split_rotation.value_or(0),
                   inst.split_flip};
  if (ctx.d < 1 || ctx.d > inst.shape.n) throw InputError("split: d out of range");
  return make_range(ctx, inst.split_p.value_or(0), inst.split_q.value_or(0));
}

const Vertex& endpoint(const InstanceFile& inst, size_t i) {
  if (inst.endpoints.size() <= i)
    throw InputError("lemma requires at least " + std::to_string(i + 1) + " endpoints");
  return inst.endpoints[i];
}

int run_construct(const ConstructArgs& args) {
  nlohmann::json mj = read_json_file(args.matching_file);
  InstanceFile inst;
  if (mj.is_object() && mj.contains("schema")) {
    inst = instance_from_json(mj);
    if (inst.shape.n != args.n || inst.shape.k != args.k)
      throw InputError("instance file shape disagrees with --n/--k");
  } else {
    inst.shape = CubeShape{args.n, args.k};
    validate_shape(inst.shape);
    inst.matching = jsonio::matching_from_json(mj, inst.shape);
  }
  if (!args.lemma.empty()) inst.lemma = args.lemma;

  Policy policy;
  policy.mode = args.policy == "strict" ? Policy::Mode::Strict : Policy::Mode::Relaxed;
  policy.base_n = args.base_n;
  ProviderOptions opts;
  opts.budget.max_nodes = args.budget_nodes;
  opts.budget.seed = args.seed;
  Env env = Env::make(policy, opts);

  CertificateFile cert;
  cert.instance = inst;
  const CubeShape s = inst.shape;
  std::string op = inst.lemma.value_or("theorem3");
  ConstructionTrace trace;

  if (op == "theorem3") {
    auto [cycle, tr] = theorem3_ham_cycle(env, s, inst.matching);
    trace = std::move(tr);
    cert.kind = "cycle";
    cert.sequences = {cycle.order};
    cert.verified = true;
  } else {
    PathSystem sys;
    if (op == "lemma9") {
      sys = lemma9_range_path_m1(env, view_from_instance(inst), endpoint(inst, 0),
                                 endpoint(inst, 1), inst.matching);
    } else if (op == "lemma10") {
      sys = lemma10_range_2path_m1(env, view_from_instance(inst), endpoint(inst, 0),
                                   endpoint(inst, 1), endpoint(inst, 2), endpoint(inst, 3),
                                   inst.matching);
    } else if (op == "lemma11") {
      sys = lemma11_path_m2(env, s, endpoint(inst, 0), endpoint(inst, 1), inst.matching);
    } else if (op == "lemma12") {
      sys = lemma12_range_path_m2(env, view_from_instance(inst), endpoint(inst, 0),
                                  endpoint(inst, 1), inst.matching);
    } else if (op == "lemma13") {
      sys = lemma13_path_minus_uv(env, s, endpoint(inst, 0), endpoint(inst, 1),
                                  endpoint(inst, 2), endpoint(inst, 3), inst.matching);
    } else if (op == "lemma14") {
      sys = lemma14_2path_same_parity(env, s, endpoint(inst, 0), endpoint(inst, 1),
                                      endpoint(inst, 2), endpoint(inst, 3));
    } else if (op == "lemma15") {
      sys = lemma15_3path_matching(env, s, endpoint(inst, 0), endpoint(inst, 1),
                                   endpoint(inst, 2), endpoint(inst, 3), endpoint(inst, 4),
                                   endpoint(inst, 5), inst.matching);
    } else if (op == "lemma16") {
      sys = lemma16_path_dist3(env, s, endpoint(inst, 0), endpoint(inst, 1), inst.matching);
    } else {
      throw InputError("unknown lemma: " + op);
    }
    trace.root = env.trace.take();
    trace.fallbacks = env.fallbacks;
    cert.kind = "m-path";
    cert.sequences = sys.paths;
    cert.verified = true;
  }

  if (!args.trace_file.empty()) {
    std::ofstream tf(args.trace_file);
    trace.serialize(tf);
    cert.trace_ref = args.trace_file;
  }

  std::string payload;
  if (args.format == "dot") {
    if (cert.kind != "cycle") throw InputError("dot output is for cycles only");
    // cluster along the split dimension chosen at the trace root
    int cluster_dim = 1;
    for (const auto& child : trace.root.children)
      for (const auto& note : child.notes)
        if (note.rfind("split d=", 0) == 0) {
          cluster_dim = std::stoi(note.substr(8));
          break;
        }
    payload = cycle_to_dot(s, cert.sequences[0], cluster_dim);
  } else {
    payload = to_json(cert).dump(2) + "\n";
  }
  if (args.out_file.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(args.out_file);
    if (!out) throw InputError("cannot write " + args.out_file);
    out << payload;
  }
  std::cerr << "constructed " << cert.kind << " on Q_" << s.n << "^" << s.k
            << " (fallbacks: " << trace.fallbacks << ")\n";
  return kExitOk;
}

int run_verify(int n, int k, const std::string& matching_file,
               const std::string& certificate_file) {
  CubeShape s{n, k};
  validate_shape(s);
  nlohmann::json mj = read_json_file(matching_file);
  Matching m = mj.is_object() && mj.contains("schema")
                   ? instance_from_json(mj).matching
                   : jsonio::matching_from_json(mj, s);
  CertificateFile cert = certificate_from_json(read_json_file(certificate_file));
  if (!(cert.instance.shape == s))
    throw InputError("certificate shape disagrees with --n/--k");
  VerifyReport rep;
  if (cert.kind == "cycle") {
    if (cert.sequences.size() != 1) throw InputError("cycle certificate needs one sequence");
    HamCycleCertificate c{cert.sequences[0]};
    rep = check_ham_cycle(s, c, m);
  } else {
    PathSystem sys;
    sys.paths = cert.sequences;
    sys.region = Region::whole(s).minus(cert.instance.forbidden);
    std::vector<VertexPair> pairs;
    for (const auto& path : cert.sequences) {
      if (path.empty()) throw InputError("empty sequence in certificate");
      pairs.push_back({path.front(), path.back()});
    }
    rep = check_path_system(s, sys, pairs, m);
  }
  if (rep.ok) {
    std::cout << "ok\n";
    return kExitOk;
  }
  std::cout << "violation: " << rep.first_violation << "\n";
  return 1;
}

int run_sweep(const std::string& mode, int n, int k, int max_size, int samples,
              uint64_t seed) {
  CubeShape s{n, k};
  validate_shape(s);
  if (mode == "theorem1") {
    int bound = std::min(max_size, 2 * n - 1);
    auto out = campaign::sweep_theorem1(s, bound, samples, seed);
    std::cout << "theorem1 on Q_" << n << "^" << k << ": " << out.passed << "/"
              << out.instances << " forests (size <= " << bound << ") on Hamiltonian cycles"
              << (out.exhaustive ? " [exhaustive]" : "") << "\n";
    return out.passed == out.instances ? kExitOk : kExitBudget;
  }
  if (mode == "theorem2") {
    int bound = std::min(max_size, 3 * n - 8);
    auto out = campaign::sweep_theorem2(s, bound, samples, seed);
    std::cout << "theorem2 on Q_" << n << "^" << k << ": " << out.passed << "/"
              << out.instances << " matchings (size <= " << bound << ") on Hamiltonian cycles"
              << (out.exhaustive ? " [exhaustive]" : "") << "\n";
    return out.passed == out.instances ? kExitOk : kExitBudget;
  }
  if (mode == "lemma-campaign") {
    campaign::CampaignConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    auto report = campaign::run_lemma_campaign(s, cfg);
    bool all_ok = true;
    for (const auto& [name, out] : report) {
      if (out.skipped) {
        std::cout << name << ": skipped (hypotheses inapplicable at this shape)\n";
        continue;
      }
      std::cout << name << ": " << out.certified << "/" << out.attempted << " certified\n";
      all_ok = all_ok && out.certified == out.attempted;
    }
    return all_ok ? kExitOk : kExitBudget;
  }
  throw InputError("unknown sweep mode: " + mode);
}

int run_enumerate(int n, int k, int d, int p, int q, uint64_t limit, bool count_only) {
  CubeShape s{n, k};
  validate_shape(s);
  ConstraintSpec spec;
  if (d > 0) {
    SplitContext ctx = split(s, d);
    spec.region = Region::of_range(make_range(ctx, p, q));
  } else {
    spec.region = Region::whole(s);
  }
  auto res = enumerate(spec, limit == 0 ? SIZE_MAX : limit);
  std::cout << "solutions: " << res.count() << (res.complete ? "" : "+ (limit reached)")
            << "\n";
  if (!count_only) {
    int shown = 0;
    for (const auto& c : res.cycles) {
      if (shown++ >= 5) break;
      std::cout << " cycle:";
      for (const Vertex& v : c.order) std::cout << " " << to_string(v);
      std::cout << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian cycles through prescribed matchings in k-ary n-cubes"};
  app.require_subcommand(1);

  ConstructArgs cargs;
  auto* construct = app.add_subcommand("construct", "build a certificate");
  construct->add_option("--n", cargs.n)->required();
  construct->add_option("--k", cargs.k)->required();
  construct->add_option("--matching", cargs.matching_file, "matching or instance JSON file")
      ->required();
  construct->add_option("--lemma", cargs.lemma, "lemma9..lemma16 (default: theorem3)");
  construct->add_option("--policy", cargs.policy)->check(CLI::IsMember({"strict", "relaxed"}));
  construct->add_option("--base-n", cargs.base_n);
  construct->add_option("--budget-nodes", cargs.budget_nodes);
  construct->add_option("--seed", cargs.seed);
  construct->add_option("--out", cargs.out_file);
  construct->add_option("--format", cargs.format)->check(CLI::IsMember({"json", "dot"}));
  construct->add_option("--trace", cargs.trace_file);

  int vn = 0, vk = 0;
  std::string vmatch, vcert;
  auto* verify = app.add_subcommand("verify", "check a certificate file");
  verify->add_option("--n", vn)->required();
  verify->add_option("--k", vk)->required();
  verify->add_option("--matching", vmatch)->required();
  verify->add_option("--certificate", vcert)->required();

  std::string smode;
  int sn = 0, sk = 0, smax = 64, ssamples = 0;
  uint64_t sseed = 1;
  auto* sweep = app.add_subcommand("sweep", "theorem reproductions and lemma campaigns");
  sweep->add_option("--mode", smode)
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "lemma-campaign"}));
  sweep->add_option("--n", sn)->required();
  sweep->add_option("--k", sk)->required();
  sweep->add_option("--max-size", smax);
  sweep->add_option("--samples", ssamples);
  sweep->add_option("--seed", sseed);

  int en = 0, ek = 0, ed = 0, ep = 0, eq = 0;
  uint64_t elimit = 0;
  bool ecount = false;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "exhaustive oracle on tiny regions");
  enumerate_cmd->add_option("--n", en)->required();
  enumerate_cmd->add_option("--k", ek)->required();
  enumerate_cmd->add_option("--d", ed, "split dimension for a range region");
  enumerate_cmd->add_option("--p", ep);
  enumerate_cmd->add_option("--q", eq);
  enumerate_cmd->add_option("--limit", elimit);
  enumerate_cmd->add_flag("--count", ecount, "print the count only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) return run_construct(cargs);
    if (*verify) return run_verify(vn, vk, vmatch, vcert);
    if (*sweep) return run_sweep(smode, sn, sk, smax, ssamples, sseed);
    if (*enumerate_cmd) return run_enumerate(en, ek, ed, ep, eq, elimit, ecount);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.clause << "\n";
    return kExitPrecondition;
  } catch (const BudgetError& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const CapabilityError& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const InputError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency alarm: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitMalformed;
}
