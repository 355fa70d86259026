// localcast: scenario generation, simulation runs, sweeps, invariant checks,
// lower-bound numerics and scaling fits.
//
//   localcast gen --kind uniform_square --n 64 --out s.json
//   localcast run --scenario s.json --variant alg1 --seed 7 --out trace.jsonl
//   localcast sweep --kind clustered --n-list 256 --nx-list 8,16,32 --variant alg2 --trials 20
//   localcast verify --suite delivery --trials 50 --n 128
//   localcast lowerbound --n 256 --policy fixed:auto --tmax 4096
//   localcast fit --summary sweep.csv --form N_plus_log2
//
// Exit status: 0 success, 1 a verification check failed, 2 bad configuration.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "localcast/analysis.hpp"
#include "localcast/generate.hpp"
#include "localcast/io.hpp"
#include "localcast/lowerbound.hpp"
#include "localcast/sim.hpp"
#include "localcast/trials.hpp"
#include "localcast/verify.hpp"

using namespace localcast;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  Slot max_slots = 0;
  std::string out;
  std::string format;
};

struct GenOptions {
  std::string kind = "uniform_square";
  std::string wake = "all_zero";
  GenSpec spec;
  double alpha = 3.0, beta = 2.0, noise = 0.5, phi = 1.0 / 6.0;
  Slot lifetime = 0;

  void attach(CLI::App* app) {
    app->add_option("--kind", kind, "uniform_square|clustered|two_region|line");
    app->add_option("--n", spec.n, "node count");
    app->add_option("--side", spec.side, "uniform_square side length");
    app->add_option("--cluster-size", spec.cluster_size, "nodes per cluster (0 = one cluster)");
    app->add_option("--cluster-radius", spec.cluster_radius, "cluster radius (default r_b/2)");
    app->add_option("--cluster-spacing", spec.cluster_spacing, "distance between cluster centers");
    app->add_option("--dense", spec.dense, "two_region: dense region size");
    app->add_option("--sparse", spec.sparse, "two_region: sparse region size");
    app->add_option("--r-t", spec.r_t, "two_region: protocol transmission radius");
    app->add_option("--r-i", spec.r_i, "two_region: protocol interference radius");
    app->add_option("--line-spacing", spec.line_spacing, "line spacing (default r_b)");
    app->add_option("--wake", wake, "all_zero|staggered|random_window");
    app->add_option("--wake-rate", spec.wake_rate, "staggered: wake-ups per slot");
    app->add_option("--wake-window", spec.wake_window, "random_window: window length");
    app->add_option("--lifetime", lifetime, "slots between wake and shutdown (0 = never)");
    app->add_option("--n-bound", spec.n_bound, "bound on n known to nodes (0 = node count)");
    app->add_option("--alpha", alpha);
    app->add_option("--beta", beta);
    app->add_option("--noise", noise);
    app->add_option("--phi", phi);
    app->add_option("--delta", spec.delta, "inner-loop multiplier");
    app->add_option("--gamma", spec.gamma, "halting budget multiplier");
  }

  GenSpec build(std::uint64_t seed) const {
    GenSpec s = spec;
    s.kind = parse_layout(kind);
    s.wake = parse_wake(wake);
    s.phys = PhysParams(alpha, beta, noise, phi);
    s.lifetime = lifetime > 0 ? lifetime : kNever;
    s.seed = seed;
    return s;
  }
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const Globals& g, const std::string& content) {
  if (g.out.empty() || g.out == "-")
    std::cout << content;
  else
    io::write_file(g.out, content);
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw ConfigError("empty list '" + text + "'");
  return out;
}

std::vector<Variant> parse_variants(const std::string& text) {
  if (text == "both") return {Variant::Alg1, Variant::Alg2};
  return {parse_variant(text)};
}

int cmd_gen(const Globals& g, const GenOptions& gen) {
  const Scenario s = generate_scenario(gen.build(g.seed));
  emit(g, io::scenario_to_json(s));
  std::cerr << "gen: " << s.size() << " nodes, cover constant K = " << cover_constant(s.phys()) << "\n";
  return 0;
}

int cmd_run(const Globals& g, const std::string& scenario_path, const std::string& variant) {
  const Scenario s = io::read_scenario(scenario_path);
  RunOptions opts;
  opts.variant = parse_variant(variant);
  opts.seed = g.seed;
  opts.max_slots = g.max_slots;
  opts.record_outcomes = g.format != "csv";
  const Trace trace = run(s, opts);
  std::ostringstream os;
  if (g.format == "csv")
    io::write_summary_csv(os, summarize(trace, s.n_bound(), g.seed, opts.variant));
  else
    io::write_trace_jsonl(os, s, trace);
  emit(g, os.str());
  if (trace.timed_out) std::cerr << "warning: run hit the slot cap (" << trace.slots_run << ")\n";
  return 0;
}

int cmd_sweep(const Globals& g, const GenOptions& gen, const std::string& n_list,
              const std::string& nx_list, std::size_t clusters, const std::string& variant) {
  const auto ns = parse_list(n_list);
  const std::vector<std::uint64_t> nxs = nx_list.empty() ? std::vector<std::uint64_t>{0} : parse_list(nx_list);
  std::vector<verify::CorpusJob> jobs;
  for (Variant v : parse_variants(variant))
    for (std::uint64_t n : ns)
      for (std::uint64_t nx : nxs)
        for (std::size_t trial = 0; trial < g.trials; ++trial) {
          verify::CorpusJob job;
          job.gen = gen.build(g.seed + trial);
          job.gen.n_bound = n;
          if (nx > 0) {
            job.gen.cluster_size = nx;
            job.gen.n = nx * clusters;
          } else {
            job.gen.n = n;
          }
          job.variant = v;
          job.seed = g.seed + trial;
          job.max_slots = g.max_slots;
          jobs.push_back(job);
        }
  const auto stats = verify::scan_corpus(jobs, {false, false, false});
  std::ostringstream os;
  if (g.format == "jsonl") {
    for (const auto& r : stats.rows) {
      nlohmann::json j = {{"node_id", r.node_id}, {"n", r.n}, {"N_x", r.n_x}, {"wake", r.wake},
                          {"halt", r.halt ? nlohmann::json(*r.halt) : nlohmann::json(nullptr)},
                          {"first_success", r.first_success ? nlohmann::json(*r.first_success) : nlohmann::json(nullptr)},
                          {"reason", std::string(to_string(r.reason))}, {"fallbacks", r.fallbacks},
                          {"seed", r.seed}, {"variant", std::string(to_string(r.variant))},
                          {"transmissions", r.transmissions}};
      os << j.dump() << '\n';
    }
  } else {
    io::write_summary_csv(os, stats.rows);
  }
  emit(g, os.str());
  std::cerr << "sweep: " << stats.trials << " trials, " << stats.slots << " slots, "
            << stats.timeouts << " timed out\n";
  return 0;
}

int cmd_verify(const Globals& g, const std::string& suite, std::size_t n, double side,
               const std::string& variant) {
  const bool all = suite == "all";
  if (!all && suite != "delivery" && suite != "mass" && suite != "disjoint" && suite != "calculus")
    throw ConfigError("unknown suite '" + suite + "'");
  bool ok = true;

  if (all || suite != "calculus") {
    std::vector<verify::CorpusJob> jobs;
    for (Variant v : parse_variants(variant))
      for (std::size_t trial = 0; trial < g.trials; ++trial) {
        verify::CorpusJob job;
        job.gen.kind = LayoutKind::UniformSquare;
        job.gen.n = n;
        job.gen.side = side;
        job.gen.seed = g.seed + trial;
        job.variant = v;
        job.seed = g.seed + trial;
        job.max_slots = g.max_slots;
        jobs.push_back(job);
      }
    verify::ScanFlags flags{all || suite == "delivery", all || suite == "mass", all || suite == "disjoint"};
    const auto st = verify::scan_corpus(jobs, flags);
    std::cout << "corpus: " << st.trials << " trials, " << st.slots << " slots, " << st.timeouts
              << " timed out, cover constant K = " << cover_constant(PhysParams()) << "\n";
    if (flags.delivery) {
      const bool pass = st.delivery_violations == 0 && st.kernel_mismatches == 0;
      std::cout << (pass ? "PASS" : "FAIL") << " delivery: " << st.lp_transmissions
                << " LowPower transmissions, " << st.delivery_checks << " receiver checks, "
                << st.delivery_violations << " violations, " << st.kernel_mismatches << " kernel mismatches\n";
      ok = ok && pass;
    }
    if (flags.mass) {
      const bool pass = st.mass_violations == 0;
      std::cout << (pass ? "PASS" : "FAIL") << " mass: max region mass " << st.max_mass << ", "
                << st.mass_violations << " slots above 1/2\n";
      ok = ok && pass;
    }
    if (flags.disjoint) {
      const bool pass = st.disjoint_violations == 0;
      std::cout << (pass ? "PASS" : "FAIL") << " disjoint: " << st.disjoint_pairs
                << " LowPower transmitter pairs, " << st.disjoint_violations << " sharing a region\n";
      ok = ok && pass;
    }
  }
  if (all || suite == "calculus") {
    const auto a = verify::calculus_claim_violations(100000);
    const auto ms = verify::log_spaced(2, 1000000, 200);
    const auto b = verify::single_tx_peak_violations(ms);
    std::cout << (a == 0 ? "PASS" : "FAIL") << " calculus: 1-x >= 16^-x on [0,2/e], " << a
              << " violations\n";
    std::cout << (b == 0 ? "PASS" : "FAIL") << " calculus: single-transmission peak <= 2/e over "
              << ms.size() << " sizes, " << b << " violations\n";
    ok = ok && a == 0 && b == 0;
  }
  return ok ? 0 : 1;
}

int cmd_lowerbound(const Globals& g, std::uint64_t n, const std::string& policy_text, Slot t_max,
                   std::size_t sparse, int j_override, int delta, double gamma) {
  const auto policy = lowerbound::parse_policy(policy_text, n, delta, gamma);
  const auto rep = lowerbound::analyze_policy(
      n, policy, t_max, sparse, j_override >= 0 ? std::optional<int>(j_override) : std::nullopt);
  std::ostringstream os;
  io::write_bound_csv(os, rep.rows);
  emit(g, os.str());
  std::cerr << "lowerbound: n=" << n << " r=" << rep.r << " j_cap=" << rep.j_cap << " j=" << rep.j
            << " score=" << rep.score << " (unconstrained j=" << rep.j_unconstrained
            << " score=" << rep.score_unconstrained << ") Delta=" << rep.delta
            << " chained_bound=" << rep.chained_bound
            << " P(N_t)=" << (rep.rows.empty() ? 1.0 : rep.rows.back().cumulative_exact) << '\n';
  bool ok = rep.all_hold;
  if (g.trials > 1) {
    const auto ex = lowerbound::run_nt_experiment(rep.delta + sparse, policy, n, t_max, g.trials, g.seed);
    const auto& last = ex.records.back();
    const double sigma = std::sqrt(last.exact_cum * (1.0 - last.exact_cum) / static_cast<double>(g.trials));
    const bool match = std::abs(last.empirical_cum - last.exact_cum) <= 4.0 * sigma;
    std::cerr << "monte carlo: " << g.trials << " trials, empirical " << last.empirical_cum
              << " vs exact " << last.exact_cum << (match ? " (within 4 sigma)" : " (MISMATCH)") << '\n';
    ok = ok && match;
  }
  return ok ? 0 : 1;
}

int cmd_fit(const Globals& g, const std::string& summary_path, const std::string& form,
            const std::string& variant) {
  std::ifstream in(summary_path);
  if (!in) throw ConfigError("cannot open " + summary_path);
  auto rows = io::read_summary_csv(in);
  if (!variant.empty()) {
    const Variant v = parse_variant(variant);
    std::erase_if(rows, [&](const SummaryRow& r) { return r.variant != v; });
  }
  const auto fit = fit_bound(rows, parse_fit_form(form));
  emit(g, io::fit_to_json(fit));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local broadcast simulator and verification harness"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "base seed");
  app.add_option("--trials", g.trials, "number of trials");
  app.add_option("--max-slots", g.max_slots, "slot cap per trial (0 = default)");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "generate a scenario file");
  gen_opts.attach(gen);

  GenOptions sweep_opts;
  sweep_opts.kind = "clustered";
  std::size_t clusters = 1;
  std::string scenario_path, variant = "alg1", sweep_variant = "alg1", n_list = "256", nx_list;
  auto* runc = app.add_subcommand("run", "simulate one trial and emit its trace");
  runc->add_option("--scenario", scenario_path, "scenario JSON")->required();
  runc->add_option("--variant", variant, "alg1|alg2");

  auto* sweep = app.add_subcommand("sweep", "grid of trials, summary output");
  sweep_opts.attach(sweep);
  sweep->add_option("--n-list", n_list, "comma-separated n_bound values");
  sweep->add_option("--nx-list", nx_list, "comma-separated cluster sizes (clustered)");
  sweep->add_option("--variant", sweep_variant, "alg1|alg2|both");
  sweep->add_option("--clusters", clusters, "clusters per scenario when --nx-list is set")->check(CLI::PositiveNumber);

  std::string suite = "all", verify_variant = "alg1";
  std::size_t verify_n = 128;
  double verify_side = 8.0;
  auto* ver = app.add_subcommand("verify", "invariant and calculus checks");
  ver->add_option("--suite", suite, "delivery|mass|disjoint|calculus|all");
  ver->add_option("--n", verify_n, "nodes per uniform-square scenario");
  ver->add_option("--side", verify_side, "square side length");
  ver->add_option("--variant", verify_variant, "alg1|alg2|both");

  std::uint64_t lb_n = 256;
  std::string policy = "fixed:auto";
  Slot t_max = 4096;
  std::size_t sparse = 3;
  int j_override = -1, lb_delta = 16;
  double lb_gamma = 8.0;
  auto* lb = app.add_subcommand("lowerbound", "two-region lower-bound numerics");
  lb->add_option("--n", lb_n, "instance size n (power of two)");
  lb->add_option("--policy", policy, "fixed:<p>|fixed:auto|alg1");
  lb->add_option("--tmax", t_max, "number of slots");
  lb->add_option("--sparse", sparse, "sparse region size");
  lb->add_option("--j", j_override, "force range index j (default: capped argmin)");
  lb->add_option("--delta", lb_delta, "alg1 policy inner-loop multiplier");
  lb->add_option("--gamma", lb_gamma, "alg1 policy budget multiplier");

  std::string summary_path, form = "N_plus_log2", fit_variant;
  auto* fit = app.add_subcommand("fit", "fit completion times to a scaling form");
  fit->add_option("--summary", summary_path, "summary CSV from sweep")->required();
  fit->add_option("--form", form, "NlogN_plus_log2|N_plus_log2");
  fit->add_option("--variant", fit_variant, "only rows of this variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  if (seed_opt->count() == 0 && (runc->parsed() || sweep->parsed() || ver->parsed() || gen->parsed()))
    std::cerr << "notice: --seed not given, using 0\n";

  try {
    if (gen->parsed()) return cmd_gen(g, gen_opts);
    if (runc->parsed()) return cmd_run(g, scenario_path, variant);
    if (sweep->parsed()) return cmd_sweep(g, sweep_opts, n_list, nx_list, clusters, sweep_variant);
    if (ver->parsed()) return cmd_verify(g, suite, verify_n, verify_side, verify_variant);
    if (lb->parsed()) return cmd_lowerbound(g, lb_n, policy, t_max, sparse, j_override, lb_delta, lb_gamma);
    if (fit->parsed()) return cmd_fit(g, summary_path, form, fit_variant);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
