// File-driven frontend: one scenario file, one operation, one JSON report on
// stdout. Logs (timing) go to stderr so reports stay byte-identical across
// runs. Exit codes: 0 ok, 2 bad input, 3 mathematical failure.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stable/basis.hpp"
#include "stable/compactness.hpp"
#include "stable/json_io.hpp"
#include "stable/metrics.hpp"
#include "stable/optimize.hpp"
#include "stable/parallel.hpp"
#include "stable/seminorms.hpp"
#include "stable/sets.hpp"

namespace {

using stable::Json;

struct CliOptions {
  std::string scenario_path;
  std::uint64_t seed = 0;
  int threads = 0;
  int depth = 16;  // demo-cluster-lemma
  int n = 8;       // demo-cluster-lemma
};

[[noreturn]] void bad_command(const std::string& msg, const std::string& path) {
  throw stable::PathError(stable::ErrorKind::ValidationError, msg, path);
}

const Json& command_field(const Json& cmd, const char* key) {
  if (!cmd.is_object() || !cmd.contains(key))
    bad_command(std::string("command needs field '") + key + "'",
                std::string("/command/") + key);
  return cmd[key];
}

std::string name_field(const Json& cmd, const char* key) {
  const Json& v = command_field(cmd, key);
  if (!v.is_string())
    bad_command(std::string("'") + key + "' must be a name string",
                std::string("/command/") + key);
  return v.get<std::string>();
}

const stable::StableSet& need_set(const stable::Scenario& sc, const Json& cmd,
                                  const char* key) {
  const std::string name = name_field(cmd, key);
  auto it = sc.sets.find(name);
  if (it == sc.sets.end())
    bad_command("no set named '" + name + "' in scenario",
                std::string("/command/") + key);
  return it->second;
}

// vectors may be referenced by name or written inline
stable::L0Vector need_vector(const stable::Scenario& sc, const Json& cmd,
                             const char* key) {
  const Json& v = command_field(cmd, key);
  if (v.is_string()) {
    auto it = sc.vectors.find(v.get<std::string>());
    if (it == sc.vectors.end())
      bad_command("no vector named '" + v.get<std::string>() + "' in scenario",
                  std::string("/command/") + key);
    return it->second;
  }
  return stable::vector_from_json(v, sc.algebra, std::string("/command/") + key);
}

stable::L0Scalar need_scalar(const stable::Scenario& sc, const Json& cmd,
                             const char* key) {
  const Json& v = command_field(cmd, key);
  if (v.is_string()) {
    auto it = sc.scalars.find(v.get<std::string>());
    if (it == sc.scalars.end())
      bad_command("no scalar named '" + v.get<std::string>() + "' in scenario",
                  std::string("/command/") + key);
    return it->second;
  }
  return stable::scalar_from_json(v, sc.algebra, std::string("/command/") + key);
}

Json scalar_json(const stable::L0Scalar& x) { return stable::to_json(x); }

int run_check_compact(const stable::Scenario& sc) {
  const stable::StableSet& k = need_set(sc, sc.command, "set");
  stable::CompactnessReport rep = stable::is_stably_compact(k);
  Json out{{"command", "check-compact"},
           {"set", name_field(sc.command, "set")},
           {"compact", rep.compact},
           {"reason", rep.reason}};
  out["radius"] = rep.radius ? scalar_json(*rep.radius) : Json();
  out["bad_atom"] = rep.bad_atom ? Json(*rep.bad_atom) : Json();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_argmin(const stable::Scenario& sc) {
  const stable::StableSet& k = need_set(sc, sc.command, "set");
  const std::string fname = name_field(sc.command, "fn");
  auto it = sc.functions.find(fname);
  if (it == sc.functions.end())
    bad_command("no function named '" + fname + "' in scenario", "/command/fn");
  stable::ArgminResult res =
      stable::conditional_argmin(it->second, k, stable::Exec::parallel);
  Json out{{"command", "argmin"},
           {"set", name_field(sc.command, "set")},
           {"fn", fname},
           {"minimizer", stable::to_json(res.x0)},
           {"value", scalar_json(res.value)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_fixpoint(const stable::Scenario& sc, std::uint64_t seed) {
  const Json& cmd = sc.command;
  const Json& mj = command_field(cmd, "map");
  if (!mj.is_object() || mj.value("kind", "") != std::string("affine"))
    bad_command("only {\"kind\":\"affine\",...} maps are supported",
                "/command/map/kind");
  stable::L0Scalar a = need_scalar(sc, mj, "a");
  stable::L0Vector b = need_vector(sc, mj, "b");

  stable::ContractionSpec spec{
      [a, b](const stable::L0Vector& x) { return x.scaled(a) + b; },
      cmd.contains("rate") ? need_scalar(sc, cmd, "rate") : a.abs(),
      need_set(sc, cmd, "domain"),
      need_scalar(sc, cmd, "tol"),
      /*max_iterations=*/cmd.value("max_iterations", 100000),
      /*spot_samples=*/16,
      seed};
  stable::L0Vector start = need_vector(sc, cmd, "start");
  stable::FixpointResult res = stable::banach_fixpoint(spec, start);

  std::vector<std::int64_t> iters(sc.algebra.atoms());
  for (std::size_t at = 0; at < iters.size(); ++at) iters[at] = res.iters[at];
  stable::L0Scalar residual = (res.z - (res.z.scaled(a) + b)).norm2();
  Json out{{"command", "fixpoint"},
           {"z", stable::to_json(res.z)},
           {"iters", iters},
           {"residual", scalar_json(residual)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_separate(const stable::Scenario& sc) {
  const stable::StableSet& s1 = need_set(sc, sc.command, "a");
  const stable::StableSet& s2 = need_set(sc, sc.command, "b");
  stable::SeparationCertificate cert = stable::strong_separation(s1, s2);
  Json dirs = Json::array();
  for (std::size_t at = 0; at < sc.algebra.atoms(); ++at) {
    std::vector<double> row(s1.dim());
    for (std::size_t j = 0; j < s1.dim(); ++j) row[j] = cert.functional.entry(at, 0, j);
    dirs.push_back(row);
  }
  Json out{{"command", "separate"},
           {"a", name_field(sc.command, "a")},
           {"b", name_field(sc.command, "b")},
           {"disjoint", true},
           {"direction", dirs},
           {"gap", scalar_json(cert.gap)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_bipolar(const stable::Scenario& sc) {
  const stable::StableSet& k = need_set(sc, sc.command, "set");
  stable::PolarResult res = stable::polar_and_bipolar(k);
  Json out{{"command", "bipolar"},
           {"set", name_field(sc.command, "set")},
           {"bounded", res.bounded}};
  out["polar"] = res.polar ? stable::to_json(*res.polar) : Json();
  out["bipolar"] = res.bipolar ? stable::to_json(*res.bipolar) : Json();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_basis(const stable::Scenario& sc) {
  const Json& gj = command_field(sc.command, "generators");
  if (!gj.is_array() || gj.empty())
    bad_command("'generators' must be a non-empty array of vector names",
                "/command/generators");
  std::vector<stable::L0Vector> gens;
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const std::string p = "/command/generators/" + std::to_string(i);
    if (!gj[i].is_string()) bad_command("generator entries are vector names", p);
    auto it = sc.vectors.find(gj[i].get<std::string>());
    if (it == sc.vectors.end())
      bad_command("no vector named '" + gj[i].get<std::string>() + "' in scenario", p);
    gens.push_back(it->second);
  }
  stable::StableBasis basis =
      stable::extract_stable_basis(gens, stable::Exec::parallel);
  Json blocks = Json::array(), block_ranks = Json::array();
  for (std::size_t kk = 0; kk < basis.vectors().block_count(); ++kk) {
    blocks.push_back(stable::to_json(basis.vectors().block(kk)));
    block_ranks.push_back(basis.vectors().items(kk).size());
  }
  Json out{{"command", "basis"},
           {"dim", basis.dim()},
           {"ranks", basis.ranks()},
           {"block_ranks", block_ranks},
           {"blocks", blocks},
           {"basis", stable::to_json(basis.vectors())}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_net(const stable::Scenario& sc) {
  const Json& cmd = sc.command;
  const stable::StableSet& k = need_set(sc, cmd, "set");
  stable::L0Scalar radius = need_scalar(sc, cmd, "radius");
  stable::StableMetric metric =
      stable::StableMetric::euclidean(sc.algebra, k.dim());
  if (cmd.contains("metric")) {
    const Json& mj = cmd["metric"];
    const std::string kind = mj.is_object() ? mj.value("kind", "") : std::string();
    if (kind == "euclidean") {
      // default, keep
    } else if (kind == "seminorm") {
      metric = stable::StableMetric::seminorm_induced(stable::seminorm_from_json(
          command_field(mj, "seminorm"), sc.algebra, "/command/metric/seminorm"));
    } else {
      bad_command("metric kind must be 'euclidean' or 'seminorm'",
                  "/command/metric/kind");
    }
  }
  stable::EpsNet net = stable::stable_eps_net(k, metric, radius,
                                              stable::Exec::parallel);
  Json out{{"command", "net"},
           {"set", name_field(cmd, "set")},
           {"radius", scalar_json(net.radius)},
           {"sizes", net.centers.counts()},
           {"centers", stable::to_json(net.centers)},
           {"center_indices", net.center_indices}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_demo_cluster(const CliOptions& opt) {
  if (opt.depth < 0 || opt.depth > 20)
    bad_command("--depth must lie in [0, 20]", "--depth");
  if (opt.n < 1) bad_command("--n must be >= 1", "--n");
  const std::size_t atoms = std::size_t{1} << opt.depth;
  stable::MeasureAlgebra alg = stable::MeasureAlgebra::uniform(atoms);
  std::vector<stable::L0Scalar> rs(static_cast<std::size_t>(opt.n),
                                   stable::L0Scalar::one(alg));
  stable::ClusterCertificate cert = stable::cluster_lemma_construct(rs);

  double r_min = cert.r[0], r_max = cert.r[0];
  for (std::size_t a = 1; a < atoms; ++a) {
    r_min = std::min(r_min, cert.r[a]);
    r_max = std::max(r_max, cert.r[a]);
  }
  Json bs = Json::array(), cs = Json::array();
  bool disjoint = true, positive = true;
  for (std::size_t i = 0; i < cert.bs.size(); ++i) {
    bs.push_back(Json{{"prob", cert.bs[i].prob()}, {"atoms", cert.bs[i].count()}});
    cs.push_back(Json{{"prob", cert.cs[i].prob()}, {"atoms", cert.cs[i].count()}});
    positive = positive && cert.cs[i].prob() > 0.0;
    for (std::size_t j = i + 1; j < cert.cs.size(); ++j)
      disjoint = disjoint && cert.cs[i].disjoint_from(cert.cs[j]);
  }
  Json out{{"command", "demo-cluster-lemma"},
           {"atoms", atoms},
           {"n", opt.n},
           {"r_min", r_min},
           {"r_max", r_max},
           {"bs", bs},
           {"cs", cs},
           {"cs_disjoint", disjoint},
           {"cs_positive", positive}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_audit_topology(const stable::Scenario& sc, std::uint64_t seed) {
  const Json& cmd = sc.command;
  const std::string fname = name_field(cmd, "family");
  auto it = sc.families.find(fname);
  if (it == sc.families.end())
    bad_command("no seminorm family named '" + fname + "' in scenario",
                "/command/family");
  const stable::SeminormFamily& fam = it->second;
  const Json& ej = command_field(cmd, "eps");
  const Json& lj = command_field(cmd, "lam");
  if (!ej.is_number() || ej.get<double>() <= 0.0)
    bad_command("'eps' must be a positive number", "/command/eps");
  if (!lj.is_number() || lj.get<double>() <= 0.0 || lj.get<double>() >= 1.0)
    bad_command("'lam' must lie in (0, 1)", "/command/lam");
  const double eps = ej.get<double>();
  const double lam = lj.get<double>();
  const int samples = cmd.value("samples", 1000);
  if (samples < 1) bad_command("'samples' must be >= 1", "/command/samples");

  const stable::MeasureAlgebra& alg = sc.algebra;
  const std::size_t dim = fam.dim();
  stable::L0Vector center = stable::L0Vector::zero(alg, dim);
  stable::Neighborhood u_s = stable::Neighborhood::stable_ball(
      center, stable::StableFamily<stable::Seminorm>::constant(alg, fam.members()),
      stable::L0Scalar::constant(alg, eps));
  stable::Neighborhood u_0 = stable::Neighborhood::l0_ball(
      center, fam.members(), stable::L0Scalar::constant(alg, eps));
  stable::Neighborhood u_el =
      stable::Neighborhood::eps_lambda(center, fam.members(), eps, lam);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  int in_s = 0, in_0 = 0, in_el = 0, violations = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> flat(alg.atoms() * dim);
    const double scale = std::exp(unif(rng));
    for (double& v : flat) v = scale * eps * gauss(rng);
    stable::L0Vector x(alg, dim, std::move(flat));
    const bool bs = u_s.contains(x), b0 = u_0.contains(x), bel = u_el.contains(x);
    in_s += bs;
    in_0 += b0;
    in_el += bel;
    if ((bs && !b0) || (b0 && !bel)) ++violations;
  }

  stable::EpsLambdaWitness wit =
      stable::epslambda_witness(stable::Seminorm::sup_hull(fam.members()), eps, lam);
  Json out{{"command", "audit-topology"},
           {"family", fname},
           {"eps", eps},
           {"lam", lam},
           {"samples", samples},
           {"in_stable_ball", in_s},
           {"in_l0_ball", in_0},
           {"in_eps_lambda_ball", in_el},
           {"implication_violations", violations},
           {"witness",
            Json{{"members", wit.members.size()},
                 {"eps", wit.eps},
                 {"lam", wit.lam},
                 {"blocks_kept", wit.blocks_kept}}}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int print_error(const std::exception& e) {
  Json err{{"message", e.what()}};
  int code = 3;
  if (const auto* pe = dynamic_cast<const stable::PathError*>(&e)) {
    err["kind"] = stable::error_kind_name(pe->kind());
    err["path"] = pe->path();
    code = stable::is_input_error(pe->kind()) ? 2 : 3;
  } else if (const auto* me = dynamic_cast<const stable::MaxIterationsError*>(&e)) {
    err["kind"] = stable::error_kind_name(me->kind());
    err["atoms"] = me->atoms();
    err["iterations"] = me->iterations();
    code = 3;
  } else if (const auto* ce =
                 dynamic_cast<const stable::ConstructionImpossibleError*>(&e)) {
    err["kind"] = stable::error_kind_name(ce->kind());
    err["achievable_prefix"] = ce->achievable_prefix();
    code = 3;
  } else if (const auto* ee = dynamic_cast<const stable::EventError*>(&e)) {
    err["kind"] = stable::error_kind_name(ee->kind());
    err["atoms"] = ee->atoms();
    code = stable::is_input_error(ee->kind()) ? 2 : 3;
  } else if (const auto* se = dynamic_cast<const stable::StableError*>(&e)) {
    err["kind"] = stable::error_kind_name(se->kind());
    code = stable::is_input_error(se->kind()) ? 2 : 3;
  } else {
    err["kind"] = "internal";
  }
  std::cout << Json{{"error", err}}.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable: compactness, optimization and duality over finite "
               "atomic measure algebras"};
  app.require_subcommand(1);
  CliOptions opt;
  app.add_option("--seed", opt.seed, "seed for all sampling audits");
  app.add_option("--threads", opt.threads,
                 "worker threads for per-atom kernels (0 = auto)");

  struct Sub {
    CLI::App* cmd;
    int (*run)(const stable::Scenario&);
  };
  std::vector<Sub> subs;
  auto scenario_sub = [&](const char* name, const char* desc,
                          int (*run)(const stable::Scenario&)) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("scenario", opt.scenario_path, "scenario JSON file")->required();
    subs.push_back({c, run});
  };
  scenario_sub("check-compact", "closed/bounded certificate for a stable set",
               run_check_compact);
  scenario_sub("argmin", "per-atom minimizer of a stable function over a set",
               run_argmin);
  scenario_sub("separate", "strict separating functional for two disjoint sets",
               run_separate);
  scenario_sub("bipolar", "polar and bipolar of a stable set", run_bipolar);
  scenario_sub("basis", "stable basis of a finitely generated submodule",
               run_basis);
  scenario_sub("net", "greedy eps-net of a finite stable set", run_net);

  CLI::App* fixpoint = app.add_subcommand(
      "fixpoint", "Banach iteration for an affine per-atom contraction");
  fixpoint->add_option("scenario", opt.scenario_path, "scenario JSON file")
      ->required();
  CLI::App* audit = app.add_subcommand(
      "audit-topology", "sampled membership chain across the three topologies");
  audit->add_option("scenario", opt.scenario_path, "scenario JSON file")
      ->required();
  CLI::App* demo = app.add_subcommand(
      "demo-cluster-lemma", "mass-halving chain on a dyadic algebra");
  demo->add_option("--depth", opt.depth, "log2 of the atom count");
  demo->add_option("--n", opt.n, "chain length");

  CLI11_PARSE(app, argc, argv);
  stable::set_configured_threads(opt.threads);

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (demo->parsed()) {
      code = run_demo_cluster(opt);
    } else {
      stable::Scenario sc = stable::load_scenario(opt.scenario_path);
      if (fixpoint->parsed()) {
        code = run_fixpoint(sc, opt.seed);
      } else if (audit->parsed()) {
        code = run_audit_topology(sc, opt.seed);
      } else {
        for (const Sub& s : subs)
          if (s.cmd->parsed()) {
            code = s.run(sc);
            break;
          }
      }
    }
  } catch (const std::exception& e) {
    code = print_error(e);
  }
  const auto t1 = std::chrono::steady_clock::now();
  std::cerr << "wall_ms="
            << std::chrono::duration<double, std::milli>(t1 - t0).count() << "\n";
  return code;
}
