#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"
#include "effectplan/normal.hpp"
#include "effectplan/power.hpp"
#include "effectplan/random.hpp"

namespace effectplan {

namespace {

// Streams for the two families of simulation never share a key.
constexpr std::uint64_t kSmdStreamSalt = 0x534D440000000000ULL;
constexpr std::uint64_t kBinomialStreamSalt = 0x42494E0000000000ULL;

void check_inputs(long long n_per_group, double alpha, const SimConfig& sim) {
  if (sim.replications < 1) throw DomainError("simulation needs at least 1 replication");
  if (n_per_group < 2) throw DomainError("simulation needs at least 2 observations per group");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie strictly between 0 and 1 (got " + format_full(alpha) + ")");
  }
}

// Runs `reject(rep)` for every replication index and returns the rejection
// fraction. Each worker owns a contiguous index block; the total is an
// integer sum, so the result is independent of the worker count.
template <typename RejectFn>
double rejection_rate(const SimConfig& sim, RejectFn reject) {
  unsigned workers = sim.workers != 0 ? sim.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<long long>(workers, std::max<long long>(1, sim.replications / 1000)));

  std::vector<long long> counts(workers, 0);
  auto run_block = [&](unsigned w) {
    const long long begin = sim.replications * w / workers;
    const long long end = sim.replications * (w + 1) / workers;
    long long hits = 0;
    for (long long rep = begin; rep < end; ++rep) hits += reject(static_cast<std::uint64_t>(rep)) ? 1 : 0;
    counts[w] = hits;
  };

  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
  }

  long long total = 0;
  for (long long c : counts) total += c;
  return static_cast<double>(total) / static_cast<double>(sim.replications);
}

struct RunningMoments {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
};

}  // namespace

double simulate_power_smd(SmdValue d, long long n_per_group, double alpha, const SimConfig& sim) {
  check_inputs(n_per_group, alpha, sim);
  const double critical = normal_quantile(1.0 - alpha / 2.0);
  const double gap = d.value();
  const double n = static_cast<double>(n_per_group);

  return rejection_rate(sim, [&](std::uint64_t rep) {
    CounterRng rng(sim.seed, kSmdStreamSalt ^ rep);
    RunningMoments treated;
    RunningMoments control;
    for (long long i = 0; i < n_per_group; ++i) treated.add(gap + normal_quantile(rng.uniform()));
    for (long long i = 0; i < n_per_group; ++i) control.add(normal_quantile(rng.uniform()));
    const double pooled_var = (treated.m2 + control.m2) / (2.0 * n - 2.0);
    if (!(pooled_var > 0.0)) return false;
    const double stat = (treated.mean - control.mean) / std::sqrt(pooled_var * 2.0 / n);
    return std::fabs(stat) > critical;
  });
}

double simulate_power_two_proportions(OutcomeContext context, const TwoProportionEffect& effect,
                                      long long n_per_group, double alpha, const SimConfig& sim) {
  check_inputs(n_per_group, alpha, sim);
  const double p0 = context.p0();
  const double p1 = exposed_risk(context, effect);
  if (p1 < 0.0 || p1 > 1.0) {
    throw DomainError("risk under the effect is " + format_full(p1) + "; it must lie in [0, 1]");
  }
  const double critical = normal_quantile(1.0 - alpha / 2.0);
  const double n = static_cast<double>(n_per_group);

  return rejection_rate(sim, [&](std::uint64_t rep) {
    CounterRng rng(sim.seed, kBinomialStreamSalt ^ rep);
    long long control_events = 0;
    long long treated_events = 0;
    for (long long i = 0; i < n_per_group; ++i) control_events += rng.uniform() < p0 ? 1 : 0;
    for (long long i = 0; i < n_per_group; ++i) treated_events += rng.uniform() < p1 ? 1 : 0;
    const double pooled = static_cast<double>(control_events + treated_events) / (2.0 * n);
    if (pooled <= 0.0 || pooled >= 1.0) return false;
    const double diff = static_cast<double>(treated_events - control_events) / n;
    const double stat = diff / std::sqrt(pooled * (1.0 - pooled) * 2.0 / n);
    return std::fabs(stat) > critical;
  });
}

}  // namespace effectplan
