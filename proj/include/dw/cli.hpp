#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.

#include "dw/geometry.hpp"
#include "dw/io.hpp"
#include "dw/pachner.hpp"
#include "dw/statesum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string subcommand;
  std::string manifold;
  std::string group = "Z2";
  std::string cocycle = "trivial";
  std::size_t modulus = 0;
  std::uint64_t seed = 1;
  std::size_t moves = 10;
  std::string output;
  std::string relabel;
  std::string orientation = "forward";
  std::string enumeration = "gauge";
  std::size_t threads = 1;
  std::size_t dim = 2;
  std::size_t samples = 200;
  bool pretty = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "p0,p1,...,p(a-1)" or "random:<seed>".
inline std::vector<Vertex> parse_permutation(const std::string& spec, std::size_t vertex_count) {
  std::vector<Vertex> perm;
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw UsageError("--relabel random:<seed> needs an integer seed");
    }
    perm.resize(vertex_count);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = vertex_count; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    return perm;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string::npos) end = spec.size();
    const std::string tok = spec.substr(pos, end - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--relabel expects comma-separated vertex indices, got '" + spec + "'");
    perm.push_back(static_cast<Vertex>(std::stoul(tok)));
    pos = end + 1;
  }
  return perm;
}

namespace detail {

inline Triangulation load_manifold(const RunConfig& cfg) {
  Triangulation t = load_triangulation(cfg.manifold);
  if (!cfg.relabel.empty()) t = t.relabeled(parse_permutation(cfg.relabel, t.vertex_count()));
  return t;
}

inline StateSumOptions statesum_options(const RunConfig& cfg) {
  return {cfg.enumeration == "full" ? Gauge::None : Gauge::TreeFixed, cfg.threads};
}

inline json cmd_validate(const RunConfig& cfg) {
  const Triangulation t = load_manifold(cfg);
  return {{"valid", true},
          {"vertices", t.vertex_count()},
          {"edges", t.edges().size()},
          {"triangles", t.triangles().size()},
          {"tets", t.tets().size()},
          {"euler_characteristic", t.euler_characteristic()},
          {"signs", t.signs()}};
}

inline json cmd_compute(const RunConfig& cfg) {
  const Triangulation t = load_manifold(cfg);
  const FiniteGroup g = resolve_group(cfg.group);
  const Cochain alpha = resolve_cocycle(cfg.cocycle, g, cfg.modulus);
  const auto opts = statesum_options(cfg);
  if (cfg.orientation == "reversed") return invariant_to_json(partition_function_reversed(t, g, alpha, opts));
  json out = invariant_to_json(partition_function(t, g, alpha, opts));
  if (cfg.orientation == "both") out["reversed"] = invariant_to_json(partition_function_reversed(t, g, alpha, opts));
  return out;
}

inline json cmd_count(const RunConfig& cfg) {
  const Triangulation t = load_manifold(cfg);
  const FiniteGroup g = resolve_group(cfg.group);
  const auto opts = statesum_options(cfg);
  return {{"colorings", integer_to_json(count_flat(t, g, opts.gauge, opts.threads))},
          {"vertices", t.vertex_count()},
          {"group_order", g.order()}};
}

inline json cmd_check_cocycle(const RunConfig& cfg) {
  const FiniteGroup g = resolve_group(cfg.group);
  const Cochain alpha = resolve_cocycle(cfg.cocycle, g, cfg.modulus);
  const CocycleCheck c = is_cocycle(alpha);
  json out = {{"is_cocycle", c.is_cocycle}, {"modulus", alpha.modulus()}, {"degree", alpha.degree()}};
  if (c.witness) out["witness"] = *c.witness;
  return out;
}

inline json cmd_fuzz(const RunConfig& cfg, bool& pass) {
  const Triangulation t = load_manifold(cfg);
  const FiniteGroup g = resolve_group(cfg.group);
  const Cochain alpha = resolve_cocycle(cfg.cocycle, g, cfg.modulus);
  const FuzzReport r = fuzz_invariance(t, g, alpha, cfg.moves, cfg.seed, statesum_options(cfg));
  pass = r.pass;
  return fuzz_report_to_json(r);
}

inline json cmd_volume_check(const RunConfig& cfg, bool& pass) {
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    const auto pts = random_rational_points(cfg.dim + 2, cfg.dim, rng);
    const Rational sum = facet_volume_alternating_sum(pts);
    if (sum != 0) {
      pass = false;
      json points = json::array();
      for (const auto& p : pts) points.push_back(rationals_to_json(p.coords));
      return {{"status", "FAIL"}, {"dim", cfg.dim}, {"sample", s}, {"sum", to_string(sum)}, {"points", points}};
    }
  }
  pass = true;
  return {{"status", "PASS"}, {"dim", cfg.dim}, {"samples", cfg.samples}, {"seed", cfg.seed}};
}

inline std::size_t default_threads() {
  if (const char* env = std::getenv("DW_THREADS")) {
    try {
      const auto n = std::stoul(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name). Writes the JSON
/// result to `out` (or to --output), diagnostics to `err`. Returns 0 on
/// success, 1 on domain errors or failed checks, 2 on usage errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = detail::default_threads();

  CLI::App app{"Exact Dijkgraaf-Witten invariants of triangulated 3-manifolds", "dwcalc"};
  app.require_subcommand(1);
  app.add_flag("--pretty", cfg.pretty, "Indent JSON output");
  app.add_option("--threads", cfg.threads, "Worker threads (default: $DW_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "Write JSON here instead of stdout");

  auto manifold_opts = [&](CLI::App* sub) {
    sub->add_option("--manifold", cfg.manifold, "Triangulation file (.tri text or JSON)")->required();
    sub->add_option("--relabel", cfg.relabel, "Vertex permutation p0,p1,... or random:<seed>");
  };
  auto group_opt = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "Z<n>, S3, or a group JSON file")->capture_default_str();
  };
  auto cocycle_opts = [&](CLI::App* sub) {
    sub->add_option("--cocycle", cfg.cocycle, "trivial, carry:n:p, product:Z2, or a cocycle JSON file")
        ->capture_default_str();
    sub->add_option("--modulus", cfg.modulus, "Coefficient modulus k (default: natural for the cocycle)")
        ->check(CLI::PositiveNumber);
  };
  auto enumeration_opt = [&](CLI::App* sub) {
    sub->add_option("--enumeration", cfg.enumeration, "gauge (tree-fixed) or full")
        ->check(CLI::IsMember({"gauge", "full"}))
        ->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate a triangulation");
  manifold_opts(validate);

  auto* compute = app.add_subcommand("compute", "Evaluate the state sum exactly");
  manifold_opts(compute);
  group_opt(compute);
  cocycle_opts(compute);
  enumeration_opt(compute);
  compute->add_option("--orientation", cfg.orientation, "forward, reversed, or both")
      ->check(CLI::IsMember({"forward", "reversed", "both"}))
      ->capture_default_str();

  auto* count = app.add_subcommand("count-colorings", "Count flat colorings");
  manifold_opts(count);
  group_opt(count);
  enumeration_opt(count);

  auto* check = app.add_subcommand("check-cocycle", "Check the 3-cocycle condition");
  group_opt(check);
  cocycle_opts(check);

  auto* fuzz = app.add_subcommand("fuzz", "Random Pachner moves with the invariant recomputed after each");
  manifold_opts(fuzz);
  group_opt(fuzz);
  cocycle_opts(fuzz);
  enumeration_opt(fuzz);
  fuzz->add_option("--moves", cfg.moves, "Number of moves")->capture_default_str();
  fuzz->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();

  auto* volume = app.add_subcommand("volume-check", "Check the signed facet-volume identity on random points");
  volume->add_option("--dim", cfg.dim, "Dimension n (points in R^n)")->check(CLI::Range(1, 8))->capture_default_str();
  volume->add_option("--samples", cfg.samples, "Number of random point sets")->capture_default_str();
  volume->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();

  auto emit = [&](const json& j) {
    const std::string text = cfg.pretty ? j.dump(2) : j.dump();
    if (cfg.output.empty()) {
      out << text << "\n";
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw Error("FileNotWritable", "cannot write " + cfg.output);
      f << text << "\n";
    }
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    err << app.help();
    return kExitUsage;
  }

  try {
    bool pass = true;
    json result;
    if (validate->parsed()) {
      result = detail::cmd_validate(cfg);
    } else if (compute->parsed()) {
      result = detail::cmd_compute(cfg);
    } else if (count->parsed()) {
      result = detail::cmd_count(cfg);
    } else if (check->parsed()) {
      result = detail::cmd_check_cocycle(cfg);
    } else if (fuzz->parsed()) {
      result = detail::cmd_fuzz(cfg, pass);
    } else if (volume->parsed()) {
      result = detail::cmd_volume_check(cfg, pass);
    }
    emit(result);
    return pass ? kExitOk : kExitDomain;
  } catch (const UsageError& e) {
    out << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    out << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    out << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return kExitDomain;
  }
}

}  // namespace dw::cli
