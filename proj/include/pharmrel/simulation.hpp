#pragma once

// Event-driven simulation of the component-level alternating renewal
// processes. Each component alternates exponential up periods (mean mtf) and
// down periods (mean mtr); the system state is the structure function of the
// joint component state. Used as an independent check on the closed forms.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pharmrel/types.hpp"

namespace pharmrel {

struct SimulationSpec {
  double horizon = 1.0e6;  // years, per replication
  int replications = 8;
  std::uint64_t seed = 42;
  double warmup = 0.0;  // years discarded at the start of each replication

  void validate() const
  {
    detail::require_positive_finite(horizon, "horizon");
    if (replications < 1) {
      throw Error(ErrorKind::InvalidParameter, "replications", "must be >= 1");
    }
    if (!std::isfinite(warmup) || warmup < 0.0) {
      throw Error(ErrorKind::InvalidParameter, "warmup", "must be finite and >= 0");
    }
    if (warmup >= horizon) {
      throw Error(ErrorKind::InvalidParameter, "warmup", "must be smaller than horizon");
    }
  }

  friend bool operator==(const SimulationSpec&, const SimulationSpec&) = default;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;

  /// Whether `value` lies within `k` standard errors of the mean.
  bool brackets(double value, double k = 3.0) const { return std::abs(value - mean) <= k * std_error; }

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// Raw tallies of one replication over its observation window [warmup, horizon].
struct ReplicationTally {
  double observed_time = 0.0;
  double up_time = 0.0;
  double down_time = 0.0;
  // Episodes that begin with a system transition inside the window and end
  // before the horizon.
  double complete_up_total = 0.0;
  double complete_down_total = 0.0;
  std::int64_t complete_up_count = 0;
  std::int64_t complete_down_count = 0;
  // In-window portions of episodes cut by the window edges.
  double truncated_up_total = 0.0;
  double truncated_down_total = 0.0;
  // Every up/down episode that overlaps the window, complete or not.
  std::int64_t up_episodes = 0;
  std::int64_t down_episodes = 0;
  std::int64_t component_events = 0;

  friend bool operator==(const ReplicationTally&, const ReplicationTally&) = default;
};

struct SimulationResult {
  Estimate availability;
  Estimate mean_uptime;
  Estimate mean_downtime;
  std::int64_t shortage_episode_count = 0;  // complete down episodes, all replications
  std::vector<ReplicationTally> replications;
  std::vector<std::string> warnings;

  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed for the stream owned by (replication, component). Independent of
/// thread scheduling.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replication, std::uint64_t component)
{
  std::uint64_t state = seed;
  std::uint64_t out = splitmix64(state);
  state = out ^ (replication * 0xD1B54A32D192ED03ull);
  out = splitmix64(state);
  state = out ^ (component * 0x8CB92BA72F3D8DD7ull);
  return splitmix64(state);
}

// mt19937_64's output sequence is fixed by the standard; the exponential
// transform is done by hand so results do not depend on the library's
// distribution implementation.
class ExponentialStream {
 public:
  explicit ExponentialStream(std::uint64_t seed) : engine_(seed) {}

  double next(double mean)
  {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
    return -mean * std::log1p(-u);
  }

 private:
  std::mt19937_64 engine_;
};

struct Event {
  double time;
  int component;

  bool operator>(const Event& other) const
  {
    if (time != other.time) return time > other.time;
    return component > other.component;
  }
};

// Splits the observation window into batches so that a single long
// replication still yields a standard error (batch means).
struct BatchTally {
  double up_time = 0.0;
  double complete_up_total = 0.0;
  double complete_down_total = 0.0;
  std::int64_t complete_up_count = 0;
  std::int64_t complete_down_count = 0;
};

struct ReplicationOutput {
  ReplicationTally tally;
  std::vector<BatchTally> batches;
};

inline ReplicationOutput run_replication(const Configuration& cfg, const EchelonRates& rates,
                                         const SimulationSpec& spec, int replication, int batch_count)
{
  const int n = cfg.total_components();
  std::vector<Echelon> kind(static_cast<std::size_t>(n));
  std::vector<int> plant_of(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (i < cfg.z_api) {
      kind[i] = Echelon::Supplier;
    } else if (i < cfg.z_api + cfg.z_p) {
      kind[i] = Echelon::Plant;
      plant_of[i] = i - cfg.z_api;
    } else {
      kind[i] = Echelon::Line;
      plant_of[i] = (i - cfg.z_api - cfg.z_p) / cfg.z_l;
    }
  }

  std::vector<ExponentialStream> streams;
  streams.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    streams.emplace_back(stream_seed(spec.seed, static_cast<std::uint64_t>(replication),
                                     static_cast<std::uint64_t>(i)));
  }

  // All components start up.
  std::vector<char> up(static_cast<std::size_t>(n), 1);
  int suppliers_up = cfg.z_api;
  std::vector<char> plant_up(static_cast<std::size_t>(cfg.z_p), 1);
  std::vector<int> lines_up(static_cast<std::size_t>(cfg.z_p), cfg.z_l);
  int working_plants = cfg.z_p;
  auto system_up = [&] { return suppliers_up > 0 && working_plants > 0; };

  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  for (int i = 0; i < n; ++i) queue.push({streams[i].next(rates[kind[i]].mtf), i});

  const double t0 = spec.warmup;
  const double t1 = spec.horizon;
  const double batch_len = (t1 - t0) / batch_count;

  ReplicationOutput out;
  out.batches.assign(static_cast<std::size_t>(batch_count), BatchTally{});
  ReplicationTally& tally = out.tally;
  tally.observed_time = t1 - t0;

  auto batch_of = [&](double t) {
    const int b = static_cast<int>((t - t0) / batch_len);
    return std::clamp(b, 0, batch_count - 1);
  };
  // Adds up-time over [a, b] clipped to the window, split across batches.
  auto add_up_time = [&](double a, double b) {
    a = std::max(a, t0);
    b = std::min(b, t1);
    if (b <= a) return;
    tally.up_time += b - a;
    int ba = batch_of(a);
    const int bb = batch_of(b);
    for (; ba <= bb; ++ba) {
      const double lo = std::max(a, t0 + ba * batch_len);
      const double hi = std::min(b, ba == batch_count - 1 ? t1 : t0 + (ba + 1) * batch_len);
      if (hi > lo) out.batches[static_cast<std::size_t>(ba)].up_time += hi - lo;
    }
  };

  bool state = true;
  double episode_start = 0.0;
  bool episode_from_transition = false;  // the initial episode starts from the all-up state

  // Closes the episode [episode_start, end]. `by_transition` is false when the
  // horizon cuts it.
  auto close_episode = [&](double end, bool by_transition) {
    if (end <= t0) return;
    const double lo = std::max(episode_start, t0);
    const double hi = std::min(end, t1);
    if (state) {
      add_up_time(episode_start, end);
      ++tally.up_episodes;
    } else {
      tally.down_time += hi - lo;
      ++tally.down_episodes;
    }
    const bool complete = by_transition && episode_from_transition && episode_start >= t0;
    const double len = end - episode_start;
    if (complete) {
      BatchTally& bt = out.batches[static_cast<std::size_t>(batch_of(end))];
      if (state) {
        tally.complete_up_total += len;
        ++tally.complete_up_count;
        bt.complete_up_total += len;
        ++bt.complete_up_count;
      } else {
        tally.complete_down_total += len;
        ++tally.complete_down_count;
        bt.complete_down_total += len;
        ++bt.complete_down_count;
      }
    } else if (state) {
      tally.truncated_up_total += hi - lo;
    } else {
      tally.truncated_down_total += hi - lo;
    }
  };

  while (!queue.empty()) {
    const Event ev = queue.top();
    if (ev.time > t1) break;
    queue.pop();
    ++tally.component_events;

    const int i = ev.component;
    const bool now_up = !up[i];
    up[i] = now_up ? 1 : 0;
    const int p = plant_of[i];
    switch (kind[i]) {
      case Echelon::Supplier:
        suppliers_up += now_up ? 1 : -1;
        break;
      case Echelon::Plant: {
        const bool was_working = plant_up[p] && lines_up[p] > 0;
        plant_up[p] = now_up ? 1 : 0;
        const bool is_working = plant_up[p] && lines_up[p] > 0;
        working_plants += static_cast<int>(is_working) - static_cast<int>(was_working);
        break;
      }
      case Echelon::Line: {
        const bool was_working = plant_up[p] && lines_up[p] > 0;
        lines_up[p] += now_up ? 1 : -1;
        const bool is_working = plant_up[p] && lines_up[p] > 0;
        working_plants += static_cast<int>(is_working) - static_cast<int>(was_working);
        break;
      }
    }
    const MeanTimes& m = rates[kind[i]];
    queue.push({ev.time + streams[i].next(now_up ? m.mtf : m.mtr), i});

    const bool next_state = system_up();
    if (next_state != state) {
      close_episode(ev.time, true);
      state = next_state;
      episode_start = ev.time;
      episode_from_transition = true;
    }
  }
  close_episode(t1, false);
  return out;
}

// Standard error of a ratio estimator sum(num)/sum(den) over independent units.
inline double ratio_std_error(const std::vector<double>& num, const std::vector<double>& den)
{
  const std::size_t k = num.size();
  if (k < 2) return std::numeric_limits<double>::quiet_NaN();
  double sn = 0.0;
  double sd = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sn += num[i];
    sd += den[i];
  }
  if (sd <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double ratio = sn / sd;
  const double mean_den = sd / static_cast<double>(k);
  double ss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double resid = num[i] - ratio * den[i];
    ss += resid * resid;
  }
  return std::sqrt(ss / static_cast<double>(k * (k - 1))) / mean_den;
}

}  // namespace detail

/// Horizon sanity check. The horizon should dwarf every component's cycle.
inline std::vector<std::string> simulation_warnings(const EchelonRates& rates, const SimulationSpec& spec)
{
  std::vector<std::string> out;
  double longest = 0.0;
  for (Echelon e : kEchelons) longest = std::max({longest, rates[e].mtf, rates[e].mtr});
  if (spec.horizon - spec.warmup < 1000.0 * longest) {
    out.push_back("observation window " + std::to_string(spec.horizon - spec.warmup) +
                  " y is less than 1000x the longest mean time (" + std::to_string(longest) +
                  " y); estimates may be noisy");
  }
  return out;
}

/// Runs `spec.replications` independent replications and pools them.
///
/// Results depend only on (cfg, rates, spec); `workers` (0 = hardware
/// concurrency) changes wall time, not output. With a single replication the
/// window is cut into 20 batches for the standard errors; otherwise each
/// replication is one unit.
inline SimulationResult simulate(const Configuration& cfg, const EchelonRates& rates,
                                 const SimulationSpec& spec, unsigned workers = 0)
{
  cfg.validate();
  rates.validate();
  spec.validate();

  const int reps = spec.replications;
  const int batch_count = reps == 1 ? 20 : 1;
  std::vector<detail::ReplicationOutput> outputs(static_cast<std::size_t>(reps));

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(reps));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < reps; r = next++) {
      outputs[static_cast<std::size_t>(r)] = detail::run_replication(cfg, rates, spec, r, batch_count);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  SimulationResult result;
  result.warnings = simulation_warnings(rates, spec);

  std::vector<double> up_time, window, up_total, up_count, down_total, down_count;
  const double batch_window = (spec.horizon - spec.warmup) / batch_count;
  for (const auto& o : outputs) {
    result.replications.push_back(o.tally);
    result.shortage_episode_count += o.tally.complete_down_count;
    for (const auto& b : o.batches) {
      up_time.push_back(b.up_time);
      window.push_back(batch_window);
      up_total.push_back(b.complete_up_total);
      up_count.push_back(static_cast<double>(b.complete_up_count));
      down_total.push_back(b.complete_down_total);
      down_count.push_back(static_cast<double>(b.complete_down_count));
    }
  }

  auto pooled = [](const std::vector<double>& num, const std::vector<double>& den) {
    double sn = 0.0;
    double sd = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
      sn += num[i];
      sd += den[i];
    }
    return sd > 0.0 ? sn / sd : std::numeric_limits<double>::quiet_NaN();
  };
  result.availability = {pooled(up_time, window), detail::ratio_std_error(up_time, window)};
  result.mean_uptime = {pooled(up_total, up_count), detail::ratio_std_error(up_total, up_count)};
  result.mean_downtime = {pooled(down_total, down_count), detail::ratio_std_error(down_total, down_count)};
  return result;
}

}  // namespace pharmrel
