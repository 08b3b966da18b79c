// Command-line driver: exact formula evaluation, isotropic-subspace
// enumeration and caching, family construction, and the verification and
// search suites. Reports are machine-readable JSON; exit codes are
// 0 = all checks passed, 1 = a check failed or data was corrupt,
// 2 = bad flags or parameters, 3 = feasibility refusal.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polarx/errors.hpp"
#include "polarx/io.hpp"
#include "polarx/qarith.hpp"
#include "polarx/verify.hpp"

namespace {

using nlohmann::json;
using polarx::ExactInt;
using polarx::to_decimal;
namespace qa = polarx::qarith;
namespace vf = polarx::verify;

constexpr const char* kCacheEnvVar = "POLARX_CACHE_DIR";

struct CommonOpts {
  std::int64_t nu = 0, q = 0, m1 = 0, m2 = 0, t = 0;
  std::string mode = "exact";
  std::uint64_t budget = 0;
  std::uint64_t seed = 42;
  std::string cache_dir;
  std::string output;
  std::uint64_t cap = polarx::symplectic::kDefaultEnumerationCap;
  std::uint64_t exact_cap = 2'000'000;
  std::uint64_t table_cap = 400'000'000;
  bool no_timings = false;
  int samples = 10;
};

std::string effective_cache_dir(const CommonOpts& o) {
  if (!o.cache_dir.empty()) return o.cache_dir;
  if (const char* env = std::getenv(kCacheEnvVar)) return env;
  return {};
}

vf::VerifyOptions verify_options(const CommonOpts& o) {
  vf::VerifyOptions opts;
  opts.enumeration_cap = o.cap;
  opts.exact_search_cap = o.exact_cap;
  opts.table_cap = o.table_cap;
  opts.cache_dir = effective_cache_dir(o);
  return opts;
}

json run_params(const CommonOpts& o, const std::string& subcommand) {
  return json{{"subcommand", subcommand},
              {"nu", o.nu},
              {"q", o.q},
              {"m1", o.m1},
              {"m2", o.m2},
              {"t", o.t},
              {"mode", o.mode},
              {"budget", o.budget},
              {"seed", o.seed},
              {"cache_dir", effective_cache_dir(o)},
              {"cache_env_var", kCacheEnvVar},
              {"output", o.output.empty() ? "-" : o.output},
              {"enumeration_cap", o.cap},
              {"exact_search_cap", o.exact_cap},
              {"table_cap", o.table_cap},
              {"include_timings", !o.no_timings},
              {"samples", o.samples}};
}

void emit(const CommonOpts& o, const json& doc) {
  if (o.output.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output: " + o.output);
    f << doc.dump(2) << "\n";
  }
}

void emit_text(const CommonOpts& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output: " + o.output);
    f << text;
  }
}

int report_and_exit_code(const CommonOpts& o, const std::string& subcommand,
                         const std::vector<vf::CheckResult>& results) {
  emit(o, vf::report_emit(results, run_params(o, subcommand), !o.no_timings));
  return vf::any_failure(results) ? 1 : 0;
}

int cmd_formulas(const CommonOpts& o) {
  json doc;
  doc["params"] = json{{"nu", o.nu}, {"q", o.q}, {"m1", o.m1},
                       {"m2", o.m2}, {"t", o.t}};
  doc["c1"] = to_decimal(qa::c1_exact(o.nu, o.m1, o.m2, o.t, o.q));
  doc["c2"] = to_decimal(qa::c2_exact(o.nu, o.m1, o.m2, o.t, o.q));
  doc["c3"] = to_decimal(qa::c2_exact(o.nu, o.m1, o.m2, o.t, o.q) -
                         qa::c1_exact(o.nu, o.m1, o.m2, o.t, o.q));
  doc["c0"] = to_decimal(qa::c0(o.nu, o.m1, o.m2, o.t, o.q));
  doc["s0"] = to_decimal(qa::s0(o.nu, o.m1, o.m2 + 1, o.t, o.q));
  doc["trivial"] = to_decimal(qa::trivial_product(o.nu, o.m1, o.m2, o.t, o.q));
  doc["n_prime_m1"] = to_decimal(qa::n_prime(o.t, o.m1, o.nu, o.q));
  doc["n_prime_m2"] = to_decimal(qa::n_prime(o.t, o.m2, o.nu, o.q));
  doc["polar_m1"] = to_decimal(qa::polar_count(o.nu, o.m1, o.q));
  doc["polar_m2"] = to_decimal(qa::polar_count(o.nu, o.m2, o.q));
  const auto [c1a, c1b] = qa::c1_factors(o.nu, o.m1, o.m2, o.t, o.q);
  const auto [c2a, c2b] = qa::c2_factors(o.nu, o.m1, o.m2, o.t, o.q);
  doc["c1_sides"] = json::array({to_decimal(c1a), to_decimal(c1b)});
  doc["c2_sides"] = json::array({to_decimal(c2a), to_decimal(c2b)});
  try {
    const auto pred = qa::predict_extremal(o.nu, o.m1, o.m2, o.t, o.q);
    doc["predicted"] = json{{"tag", qa::to_string(pred.tag)},
                            {"value", to_decimal(pred.value)},
                            {"orientation_swappable",
                             pred.orientation_swappable},
                            {"consistent", pred.consistent}};
  } catch (const polarx::ParameterError& e) {
    doc["predicted"] = json{{"error", e.what()}};
  }
  emit(o, doc);
  return 0;
}

int cmd_enumerate(const CommonOpts& o, std::int64_t m) {
  const auto space = polarx::symplectic::make_space(o.nu, o.q);
  const std::string dir = effective_cache_dir(o);
  if (dir.empty()) {
    const auto members = polarx::symplectic::enumerate_isotropic(
        space, static_cast<std::uint32_t>(m), o.cap);
    std::ostringstream os;
    polarx::io::write_polar1(os, space, static_cast<std::uint32_t>(m),
                             members);
    emit_text(o, os.str());
    return 0;
  }
  const auto path =
      polarx::io::cache_build(dir, space, static_cast<std::uint32_t>(m),
                              o.cap);
  emit(o, json{{"file", path.string()},
               {"count", to_decimal(qa::polar_count(o.nu, m, o.q))}});
  return 0;
}

int cmd_construct(const CommonOpts& o, const std::string& family) {
  using polarx::families::Family;
  using polarx::symplectic::Subspace;
  const auto space = polarx::symplectic::make_space(o.nu, o.q);

  auto pick = [&](std::uint32_t dim) {
    std::vector<Subspace> all =
        polarx::symplectic::enumerate_isotropic(space, dim, o.cap);
    std::mt19937_64 gen(o.seed);
    return all[o.seed == 0 ? 0 : gen() % all.size()];
  };

  Family built;
  std::uint32_t t = static_cast<std::uint32_t>(o.t);
  std::vector<std::pair<std::string, Subspace>> choices;
  if (family == "c1" || family == "c2") {
    const Subspace M = pick(static_cast<std::uint32_t>(o.m2 + 1));
    const auto t_subs = polarx::symplectic::subspaces_within(space, M, t);
    std::mt19937_64 gen(o.seed + 1);
    const Subspace T = t_subs[o.seed == 0 ? 0 : gen() % t_subs.size()];
    choices = {{"M", M}, {"T", T}};
    built = family == "c1"
                ? polarx::families::build_c1(
                      space, M, T, static_cast<std::uint32_t>(o.m1), t, o.cap)
                : polarx::families::build_c2(
                      space, M, T, static_cast<std::uint32_t>(o.m2), o.cap);
  } else if (family == "c3" || family == "c4") {
    const Subspace S = pick(t + 1);
    choices = {{"S", S}};
    built = family == "c3"
                ? polarx::families::build_c3(
                      space, S, static_cast<std::uint32_t>(o.m1), o.cap)
                : polarx::families::build_c4(
                      space, S, static_cast<std::uint32_t>(o.m2), t, o.cap);
  } else if (family == "trivial") {
    const Subspace T = pick(t);
    choices = {{"T", T}};
    built = polarx::families::build_trivial(
        space, T, static_cast<std::uint32_t>(o.m1), o.cap);
  } else {
    throw polarx::ParameterError("unknown family tag: " + family);
  }

  std::ostringstream os;
  polarx::io::write_family1(os, space, built, t, family, choices);
  emit_text(o, os.str());
  return 0;
}

int cmd_cache(const CommonOpts& o, const std::string& action, std::int64_t m) {
  const std::string dir = effective_cache_dir(o);
  if (dir.empty())
    throw polarx::ParameterError(
        "cache: set --cache-dir or " + std::string(kCacheEnvVar));
  if (action == "status") {
    json entries = json::array();
    for (const auto& e : polarx::io::cache_status(dir)) {
      entries.push_back(json{{"file", e.path.string()},
                             {"nu", e.nu},
                             {"p", e.p},
                             {"e", e.e},
                             {"m", e.m},
                             {"declared_count", e.declared_count},
                             {"expected_count", e.expected_count},
                             {"ok", e.ok},
                             {"note", e.note}});
    }
    emit(o, json{{"cache_dir", dir}, {"entries", std::move(entries)}});
    return 0;
  }
  if (action == "build") {
    const auto space = polarx::symplectic::make_space(o.nu, o.q);
    const auto path = polarx::io::cache_build(
        dir, space, static_cast<std::uint32_t>(m), o.cap);
    emit(o, json{{"file", path.string()},
                 {"count", to_decimal(qa::polar_count(o.nu, m, o.q))}});
    return 0;
  }
  if (action == "clear") {
    emit(o, json{{"removed", polarx::io::cache_clear(dir)}});
    return 0;
  }
  throw polarx::ParameterError("cache: unknown action " + action);
}

std::vector<std::int64_t> parse_dims(const std::string& dims) {
  std::vector<std::int64_t> out;
  std::istringstream ss(dims);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for cross-intersecting families of totally "
               "isotropic subspaces"};
  app.require_subcommand(1);

  CommonOpts o;
  std::int64_t m = 0, m_max = -1, d = 3;
  std::string family = "trivial", dims = "2,1,1", cache_action;
  vf::InequalityGrid grid;

  auto add_common = [&](CLI::App* cmd, bool with_params = true) {
    if (with_params) {
      cmd->add_option("--nu", o.nu, "rank of the symplectic space");
      cmd->add_option("--q", o.q, "field order (prime power)");
      cmd->add_option("--m1", o.m1, "first family dimension");
      cmd->add_option("--m2", o.m2, "second family dimension");
      cmd->add_option("--t", o.t, "intersection threshold");
    }
    cmd->add_option("--cache-dir", o.cache_dir,
                    "POLAR1 cache directory (also " +
                        std::string(kCacheEnvVar) + ")");
    cmd->add_option("--output", o.output, "output file (default stdout)");
    cmd->add_option("--cap", o.cap, "enumeration feasibility cap");
    cmd->add_option("--exact-cap", o.exact_cap,
                    "exact-search ground set cap");
    cmd->add_option("--table-cap", o.table_cap,
                    "cross-table feasibility cap (bytes)");
    cmd->add_flag("--no-timings", o.no_timings,
                  "omit volatile runtime_ms fields (byte-stable reports)");
  };

  auto* formulas = app.add_subcommand(
      "formulas", "print every closed-formula value for the parameters");
  add_common(formulas);

  auto* enumerate = app.add_subcommand(
      "enumerate", "enumerate P_m (and populate the cache when set)");
  add_common(enumerate);
  enumerate->add_option("--m", m, "member dimension")->required();

  auto* construct = app.add_subcommand(
      "construct", "build and serialize a named family (FAMILY1)");
  add_common(construct);
  construct->add_option("--family", family, "c1|c2|c3|c4|trivial");
  construct->add_option("--seed", o.seed,
                        "0: first canonical choice; else random choice");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);

  auto* v_counts = verify->add_subcommand("counts", "enumeration vs formulas");
  add_common(v_counts);
  v_counts->add_option("--m-max", m_max, "largest member dimension");

  auto* v_ineq = verify->add_subcommand("inequalities",
                                        "exact inequality grids");
  add_common(v_ineq);
  v_ineq->add_option("--ratio-max-m", grid.ratio_max_m);
  v_ineq->add_option("--max-nu", grid.max_nu);
  v_ineq->add_option("--max-dim", grid.max_dim);
  v_ineq->add_option("--mono-max-nu", grid.mono_max_nu);
  v_ineq->add_option("--mono-max-b", grid.mono_max_b);
  v_ineq->add_option("--gap-max-nu", grid.gap_max_nu);
  v_ineq->add_option("--gap-max-dim", grid.gap_max_dim);

  auto* v_fam = verify->add_subcommand("families",
                                       "construction size identities");
  add_common(v_fam);
  v_fam->add_option("--seed", o.seed);
  v_fam->add_option("--samples", o.samples);

  auto* v_t1 = verify->add_subcommand("theorem1", "exact product optimum");
  add_common(v_t1);
  v_t1->add_option("--mode", o.mode, "exact|stochastic");
  v_t1->add_option("--budget", o.budget);
  v_t1->add_option("--seed", o.seed);

  auto* v_t2 = verify->add_subcommand("theorem2",
                                      "extremal structure properties");
  add_common(v_t2);
  v_t2->add_option("--budget", o.budget);
  v_t2->add_option("--seed", o.seed);

  auto* v_dw = verify->add_subcommand("dwise", "d-wise product maximum");
  add_common(v_dw);
  v_dw->add_option("--d", d);
  v_dw->add_option("--dims", dims, "comma-separated dimensions, largest first");
  v_dw->add_option("--mode", o.mode);
  v_dw->add_option("--budget", o.budget);
  v_dw->add_option("--seed", o.seed);

  auto* search = app.add_subcommand("search", "run the product search");
  add_common(search);
  search->add_option("--mode", o.mode, "exact|stochastic");
  search->add_option("--budget", o.budget);
  search->add_option("--seed", o.seed);

  auto* cache = app.add_subcommand("cache", "manage the POLAR1 cache");
  add_common(cache);
  cache->add_option("action", cache_action, "status|build|clear")->required();
  cache->add_option("--m", m, "member dimension (build)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*formulas) return cmd_formulas(o);
    if (*enumerate) return cmd_enumerate(o, m);
    if (*construct) return cmd_construct(o, family);
    if (*cache) return cmd_cache(o, cache_action, m);

    const auto opts = verify_options(o);
    if (*v_counts) {
      if (m_max < 0) m_max = o.nu;
      return report_and_exit_code(
          o, "verify counts", vf::check_counts(o.nu, o.q, m_max, opts));
    }
    if (*v_ineq) {
      return report_and_exit_code(o, "verify inequalities",
                                  vf::check_inequalities(grid));
    }
    if (*v_fam) {
      return report_and_exit_code(
          o, "verify families",
          {vf::check_family_identities(o.nu, o.q, o.m1, o.m2, o.t, o.seed,
                                       o.samples, opts)});
    }
    if (*v_t1) {
      if (o.budget == 0) o.budget = 50'000'000;
      return report_and_exit_code(
          o, "verify theorem1",
          vf::check_theorem1(o.nu, o.q, o.m1, o.m2, o.t,
                             vf::parse_mode(o.mode), o.budget, o.seed, opts));
    }
    if (*v_t2) {
      if (o.budget == 0) o.budget = 100'000;
      return report_and_exit_code(
          o, "verify theorem2",
          vf::check_theorem2(o.nu, o.q, o.m1, o.m2, o.t, o.budget, o.seed,
                             opts));
    }
    if (*v_dw) {
      if (o.budget == 0) o.budget = 20'000;
      return report_and_exit_code(
          o, "verify dwise",
          {vf::check_dwise(d, o.nu, o.q, parse_dims(dims), o.t,
                           vf::parse_mode(o.mode), o.budget, o.seed, opts)});
    }
    if (*search) {
      if (o.budget == 0)
        o.budget = o.mode == "exact" ? 50'000'000 : 100'000;
      auto outcome =
          vf::search_max_product(o.nu, o.q, o.m1, o.m2, o.t,
                                 vf::parse_mode(o.mode), o.budget, o.seed,
                                 opts);
      std::vector<vf::CheckResult> results{outcome.result};
      return report_and_exit_code(o, "search", results);
    }
  } catch (const polarx::FeasibilityError& e) {
    std::cerr << "feasibility refusal: " << e.what()
              << " (predicted " << e.predicted() << ", cap " << e.cap()
              << ")\n";
    return 3;
  } catch (const polarx::IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return 1;
  } catch (const polarx::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const polarx::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
