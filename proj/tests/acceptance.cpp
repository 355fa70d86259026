// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "localcast/analysis.hpp"
#include "localcast/generate.hpp"
#include "localcast/io.hpp"
#include "localcast/lowerbound.hpp"
#include "localcast/verify.hpp"

using namespace localcast;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& text) {
  std::printf("       %s\n", text.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

GenSpec uniform(std::size_t n, double side, std::uint64_t seed) {
  GenSpec g;
  g.kind = LayoutKind::UniformSquare;
  g.n = n;
  g.side = side;
  g.seed = seed;
  return g;
}

GenSpec clustered(std::size_t n, std::size_t cluster, std::uint64_t n_bound, std::uint64_t seed) {
  GenSpec g;
  g.kind = LayoutKind::Clustered;
  g.n = n;
  g.cluster_size = cluster;
  g.cluster_spacing = 2.0;
  g.n_bound = n_bound;
  g.seed = seed;
  return g;
}

verify::CorpusJob job(const GenSpec& g, Variant v, std::uint64_t seed) {
  verify::CorpusJob j;
  j.gen = g;
  j.variant = v;
  j.seed = seed;
  return j;
}

std::string trace_bytes(const verify::CorpusJob& j) {
  const Scenario s = generate_scenario(j.gen);
  RunOptions o;
  o.variant = j.variant;
  o.seed = j.seed;
  const Trace tr = run(s, o);
  std::ostringstream os;
  io::write_trace_jsonl(os, s, tr);
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<verify::CorpusJob> criterion1(void) {
  const auto t0 = Clock::now();
  std::vector<verify::CorpusJob> jobs;
  for (std::uint64_t k = 1; k <= 50; ++k)
    for (Variant v : {Variant::Alg1, Variant::Alg2}) jobs.push_back(job(uniform(128, 8.0, k), v, k));
  const auto st = verify::scan_corpus(jobs, {true, false, true});
  const double secs = seconds_since(t0);
  const bool pass = st.delivery_violations == 0 && st.kernel_mismatches == 0 && st.slots >= 100000 &&
                    st.timeouts == 0 && st.trials == 100;
  report(1, pass, "every non-transmitter in 2B_x decodes a LowPower transmitter",
         fmt("%llu trials, %llu slots, %llu LowPower transmissions, %llu receiver checks, "
             "%llu violations, %llu kernel mismatches, %llu timeouts, %.1fs",
             (unsigned long long)st.trials, (unsigned long long)st.slots,
             (unsigned long long)st.lp_transmissions, (unsigned long long)st.delivery_checks,
             (unsigned long long)st.delivery_violations, (unsigned long long)st.kernel_mismatches,
             (unsigned long long)st.timeouts, secs));
  info(fmt("disjointness of LowPower transmitters: %llu pairs, %llu sharing a broadcast region",
           (unsigned long long)st.disjoint_pairs, (unsigned long long)st.disjoint_violations));
  return jobs;
}

struct Corpus2 {
  std::vector<verify::CorpusJob> jobs;
  verify::CorpusStats stats;
};

Corpus2 criteria234() {
  const auto t0 = Clock::now();
  Corpus2 c;
  for (std::uint64_t n : {64u, 128u, 256u})
    for (std::uint64_t k = 1; k <= 100; ++k) {
      const std::uint64_t seed = n * 1000 + k;
      const double side = std::sqrt(static_cast<double>(n) / 2.0);
      for (Variant v : {Variant::Alg1, Variant::Alg2}) {
        c.jobs.push_back(job(uniform(n, side, seed), v, seed));
        c.jobs.push_back(job(clustered(n, 16, n, seed), v, seed));
      }
    }
  c.stats = verify::scan_corpus(c.jobs, {false, true, false});
  const double secs = seconds_since(t0);

  std::size_t budget = 0, budget_ok = 0, lps = 0, lps_ok = 0;
  for (const auto& r : c.stats.rows) {
    if (r.reason == HaltReason::Budget && r.variant == Variant::Alg1) {
      ++budget;
      budget_ok += r.first_success.has_value();
    }
    if (r.reason == HaltReason::LowPowerSuccess) {
      ++lps;
      lps_ok += r.first_success.has_value() && *r.first_success <= *r.halt;
    }
  }
  const double frac = budget ? static_cast<double>(budget_ok) / static_cast<double>(budget) : 0.0;
  const bool pass2 = budget > 0 && frac >= 0.98 && lps > 0 && lps_ok == lps && c.stats.timeouts == 0;
  report(2, pass2, "halting nodes have already broadcast",
         fmt("alg1 budget halts %zu, with success %.4f (>= 0.98); alg2 LowPower halts %zu, "
             "with success %zu; %llu trials, %llu timeouts, %.1fs",
             budget, frac, lps, lps_ok, (unsigned long long)c.stats.trials,
             (unsigned long long)c.stats.timeouts, secs));

  report(3, c.stats.mass_violations == 0, "broadcast-region probability mass stays <= 1/2",
         fmt("%llu slots scanned, max mass %.6f, %llu slots above 1/2",
             (unsigned long long)c.stats.slots, c.stats.max_mass,
             (unsigned long long)c.stats.mass_violations));

  const auto tc = verify::transmission_counts(c.stats.rows, 8.0);
  const double inside = tc.budget_halts
                            ? 1.0 - static_cast<double>(tc.outside_strict) / static_cast<double>(tc.budget_halts)
                            : 0.0;
  report(4, tc.budget_halts > 0 && tc.outside_wide == 0 && inside >= 0.99,
         "transmission counts of budget halts",
         fmt("%zu budget halts, %zu outside [g/2 - 3 sqrt(g), 2g], %.4f inside [g/2, 2g] (>= 0.99)",
             tc.budget_halts, tc.outside_wide, inside));
  return c;
}

struct Scaling {
  std::vector<SummaryRow> alg1, alg2;
  std::vector<verify::CorpusJob> jobs;
};

Scaling scaling_corpus(double gamma, std::uint64_t seeds, bool alg2) {
  Scaling sc;
  for (std::size_t nx : {8u, 16u, 32u, 64u, 128u})
    for (std::uint64_t k = 1; k <= seeds; ++k) {
      GenSpec g = clustered(nx, 0, 256, 7000 + nx * 100 + k);
      g.gamma = gamma;
      sc.jobs.push_back(job(g, Variant::Alg1, g.seed));
      if (alg2) sc.jobs.push_back(job(g, Variant::Alg2, g.seed));
    }
  const auto st = verify::scan_corpus(sc.jobs, {false, false, false});
  for (const auto& r : st.rows) (r.variant == Variant::Alg1 ? sc.alg1 : sc.alg2).push_back(r);
  if (st.timeouts) info(fmt("scaling corpus: %llu timeouts", (unsigned long long)st.timeouts));
  return sc;
}

std::map<std::size_t, double> cell_medians(const std::vector<SummaryRow>& rows) {
  std::map<std::size_t, std::vector<double>> by;
  for (const auto& r : rows)
    if (r.halt) by[r.n_x].push_back(static_cast<double>(*r.active_slots()));
  std::map<std::size_t, double> out;
  for (auto& [nx, v] : by) out[nx] = median(v);
  return out;
}

Scaling criteria56() {
  const auto t0 = Clock::now();
  Scaling sc = scaling_corpus(8.0, 50, true);
  const double secs = seconds_since(t0);

  const auto f1_lin = fit_bound(sc.alg1, FitForm::N_plus_log2);
  const auto f1_nlog = fit_bound(sc.alg1, FitForm::NlogN_plus_log2);
  const auto f2_lin = fit_bound(sc.alg2, FitForm::N_plus_log2);
  const auto m1 = cell_medians(sc.alg1);
  const auto m2 = cell_medians(sc.alg2);
  bool ratios_ok = true;
  std::string ratio_text;
  for (std::size_t nx : {32u, 64u}) {
    const double r = m2.at(2 * nx) / m2.at(nx);
    ratios_ok = ratios_ok && r >= 1.3 && r <= 2.7;
    ratio_text += fmt(" T(%zu)/T(%zu)=%.3f", 2 * nx, nx, r);
  }
  const bool pass5 = f2_lin.residual < f1_lin.residual && f1_nlog.residual < 0.15 && ratios_ok;
  report(5, pass5, "scaling separation between the two algorithms",
         fmt("alg2 N+log^2 residual %.4f < alg1 N+log^2 residual %.4f; alg1 NlogN+log^2 residual %.4f "
             "(< 0.15); alg2%s (in [1.3, 2.7]); %.1fs",
             f2_lin.residual, f1_lin.residual, f1_nlog.residual, ratio_text.c_str(), secs));
  std::string med;
  for (auto [nx, v] : m1) med += fmt(" %zu:%.0f/%.0f", nx, v, m2.at(nx));
  info("cell medians N_x:alg1/alg2 =" + med);

  const auto fb1 = fallback_stats(sc.alg1, Variant::Alg1);
  const auto fb2 = fallback_stats(sc.alg2, Variant::Alg2);
  report(6, fb1.max_ratio <= 4.0 && fb2.max_ratio <= 4.0, "FallBack counts",
         fmt("alg1 max k/N_x %.3f (node N_x=%zu, k=%d), alg2 max k log n/(N_x + log n) %.3f; both must be <= 4",
             fb1.max_ratio, fb1.worst_n_x, fb1.worst_fallbacks, fb2.max_ratio));
  return sc;
}

void gamma_note() {
  const auto t0 = Clock::now();
  const Scaling sc = scaling_corpus(4.0, 10, false);
  const auto fb = fallback_stats(sc.alg1, Variant::Alg1);
  const auto fit = fit_bound(sc.alg1, FitForm::NlogN_plus_log2);
  info(fmt("for comparison, gamma = 4 (10 seeds, not a verdict): alg1 max k/N_x %.3f, "
           "NlogN+log^2 residual %.4f, %.1fs",
           fb.max_ratio, fit.residual, seconds_since(t0)));
}

void criterion7() {
  using namespace lowerbound;
  const auto t0 = Clock::now();

  const auto a = verify::calculus_claim_violations(100000);
  const auto ms = verify::log_spaced(2, 1000000, 400);
  const auto b = verify::single_tx_peak_violations(ms);

  // (c) fixed-p sweep over every range at n = 256, every admissible j
  const std::uint64_t n = 256;
  const RangePartition part(n);
  std::uint64_t checked = 0, c_bad = 0;
  std::vector<double> ps{0.0, 1e-12, 1e-9, 1e-6};
  for (int i = 0; i <= part.r(); ++i) {
    const double lo = i == 0 ? part.upper(0) / 1e4 : part.lower(i);
    const double hi = std::min(1.0, part.upper(i));
    for (int k = 0; k < 64; ++k) ps.push_back(lo * std::pow(hi / lo, k / 64.0));
  }
  ps.push_back(1.0);
  for (int j = 0; j <= default_j_cap(n); ++j) ps.push_back(1.0 / static_cast<double>(delta_from_j(n, j)));
  for (double p : ps)
    for (int j = 0; j <= default_j_cap(n); ++j) {
      const auto chk = per_slot_bound_check(p, part.range_index(p), j, delta_from_j(n, j));
      ++checked;
      if (!chk.holds) ++c_bad;
    }

  // (d) chained value at n = 2^10, t = floor(log^2 n / 4)
  const std::uint64_t nd = 1024;
  const Slot t = static_cast<Slot>(std::floor(std::pow(std::log2(static_cast<double>(nd)), 2) / 4.0));
  const double floor_v = 1.0 / std::sqrt(static_cast<double>(nd));
  bool d_ok = true;
  std::string d_text;
  std::vector<std::pair<std::string, Policy>> policies;
  for (int k = 0; k <= default_j_cap(nd); ++k) {
    const double p = 1.0 / static_cast<double>(delta_from_j(nd, k));
    policies.emplace_back(fmt("p=1/%llu", (unsigned long long)delta_from_j(nd, k)), fixed_policy(p));
  }
  policies.emplace_back("alg1", alg1_policy(16, 8.0));
  std::uint64_t seed = 1;
  for (const auto& [name, policy] : policies) {
    const auto rep = analyze_policy(nd, policy, t);
    const double exact = rep.rows.back().cumulative_exact;
    const auto ex = run_nt_experiment(rep.delta + rep.sparse, policy, nd, t, 100000, seed++);
    const double emp = ex.records.back().empirical_cum;
    const double sigma = std::sqrt(exact * (1 - exact) / 100000.0);
    const bool mc = std::abs(emp - exact) <= 4 * sigma;
    const bool ok = rep.all_hold && exact >= rep.chained_bound && exact >= floor_v && mc &&
                    std::abs(ex.records.back().exact_cum - exact) <= 1e-12;
    d_ok = d_ok && ok;
    d_text += fmt(" [%s j=%d Delta=%llu exact=%.6f chain=%.6f mc=%.5f]", name.c_str(), rep.j,
                  (unsigned long long)rep.delta, exact, rep.chained_bound, emp);
  }

  const bool pass = a == 0 && b == 0 && c_bad == 0 && d_ok;
  report(7, pass, "lower-bound numerics",
         fmt("(a) %llu violations on 1e5 grid; (b) %llu violations over %zu sizes; "
             "(c) %llu/%llu per-slot checks fail; (d) t=%lld, floor n^-1/2=%.5f:%s; %.1fs",
             (unsigned long long)a, (unsigned long long)b, ms.size(), (unsigned long long)c_bad,
             (unsigned long long)checked, (long long)t, floor_v, d_text.c_str(), seconds_since(t0)));
}

void criterion8(const std::vector<verify::CorpusJob>& c1, const Corpus2& c2, const Scaling& sc) {
  const auto t0 = Clock::now();
  std::vector<verify::CorpusJob> sample;
  for (std::size_t k = 0; k < c1.size(); k += 25) sample.push_back(c1[k]);
  for (std::size_t k = 0; k < c2.jobs.size(); k += 97) sample.push_back(c2.jobs[k]);
  for (std::size_t k = 0; k < sc.jobs.size(); k += 61) {
    if (sc.jobs[k].gen.n > 32 && sc.jobs[k].variant == Variant::Alg1) continue;
    sample.push_back(sc.jobs[k]);
  }
  GenSpec two;
  two.kind = LayoutKind::TwoRegion;
  two.dense = 12;
  sample.push_back(job(two, Variant::Alg1, 5));

  std::size_t same = 0;
  for (const auto& j : sample) {
    const std::string a = trace_bytes(j);
    const std::string b = trace_bytes(j);
    same += a == b && io::fnv1a(a) == io::fnv1a(b);
  }
  // scheduling independence: one worker versus the default team
  std::vector<verify::CorpusJob> small(c2.jobs.begin(), c2.jobs.begin() + 24);
  const auto par = verify::scan_corpus(small, {false, true, false});
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto ser = verify::serial::scan_corpus(small, {false, true, false});
  omp_set_num_threads(saved);
  const bool sched_ok = par.rows == ser.rows && par.slots == ser.slots && par.max_mass == ser.max_mass;

  report(8, same == sample.size() && sched_ok, "re-runs are bit-identical",
         fmt("%zu/%zu trace files hash-identical on re-run; parallel vs serial corpus rows %s; %.1fs",
             same, sample.size(), sched_ok ? "identical" : "DIFFER", seconds_since(t0)));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const PhysParams phys;
  info(fmt("defaults: alpha=3 beta=2 noise=0.5 phi=1/6, r_t=%.3f r_b=%.4f, delta=16 gamma=8, "
           "cover constant K=%zu, %d worker(s)",
           phys.r_t(), phys.r_b(), cover_constant(phys), omp_get_max_threads()));

  const auto c1 = criterion1();
  const auto c2 = criteria234();
  const auto sc = criteria56();
  gamma_note();
  criterion7();
  criterion8(c1, c2, sc);

  std::printf("%d of 8 criteria failed (%.1fs total)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
