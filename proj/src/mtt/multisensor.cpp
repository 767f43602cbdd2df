// SPDX-License-Identifier: Apache-2.0
#include "mtt/multisensor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>

#include "core/error.hpp"

namespace o2b::mtt {

std::vector<Point> t2t_fuse(const std::vector<std::vector<Point>>& per_filter, const SensorModel& sensor,
                            double gate_sigmas) {
  struct Track {
    Point sum = Point::Zero();
    int support = 0;
    std::vector<char> filters;
    Point centroid() const { return sum / support; }
  };
  const std::size_t nf = per_filter.size();
  if (nf == 0) return {};
  std::vector<Track> tracks;
  double total = 0.0;
  for (std::size_t f = 0; f < nf; ++f) {
    total += static_cast<double>(per_filter[f].size());
    struct Cand {
      double d;
      std::size_t est, track;
    };
    std::vector<Cand> cands;
    for (std::size_t e = 0; e < per_filter[f].size(); ++e)
      for (std::size_t k = 0; k < tracks.size(); ++k) {
        const Point c = tracks[k].centroid();
        const double d = (per_filter[f][e] - c).norm();
        if (d < gate_sigmas * sensor.mapped_sigma(c)) cands.push_back({d, e, k});
      }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });
    std::vector<char> est_used(per_filter[f].size(), 0), track_used(tracks.size(), 0);
    for (const auto& c : cands) {
      if (est_used[c.est] || track_used[c.track]) continue;
      est_used[c.est] = track_used[c.track] = 1;
      tracks[c.track].sum += per_filter[f][c.est];
      ++tracks[c.track].support;
      tracks[c.track].filters[f] = 1;
    }
    for (std::size_t e = 0; e < per_filter[f].size(); ++e) {
      if (est_used[e]) continue;
      Track t;
      t.sum = per_filter[f][e];
      t.support = 1;
      t.filters.assign(nf, 0);
      t.filters[f] = 1;
      tracks.push_back(std::move(t));
    }
  }
  const auto keep = static_cast<std::size_t>(std::lround(total / static_cast<double>(nf)));
  std::stable_sort(tracks.begin(), tracks.end(), [](const Track& a, const Track& b) { return a.support > b.support; });
  std::vector<Point> out;
  for (std::size_t k = 0; k < std::min(keep, tracks.size()); ++k) out.push_back(tracks[k].centroid());
  return out;
}

ScenarioKind parse_scenario(std::string_view name) {
  if (name == "ct") return ScenarioKind::ct;
  if (name == "ghost") return ScenarioKind::ghost;
  fail(ErrorKind::config, "unknown scenario '" + std::string(name) + "'");
}

Fusion parse_fusion(std::string_view name) {
  if (name == "none") return Fusion::none;
  if (name == "t2t") return Fusion::t2t;
  if (name == "oft") return Fusion::oft;
  if (name == "o2") return Fusion::o2;
  fail(ErrorKind::config, "unknown fusion strategy '" + std::string(name) + "'");
}

std::vector<SensorPtr> make_sensors(const MttConfig& cfg, int count, double noise_divisor) {
  std::vector<SensorPtr> out;
  for (int s = 0; s < count; ++s) {
    if (cfg.scenario == ScenarioKind::ct) {
      RangeBearingParams p = cfg.range_bearing;
      p.clutter_rate = cfg.clutter;
      p.sigma_r /= std::sqrt(noise_divisor);
      p.sigma_theta /= std::sqrt(noise_divisor);
      out.push_back(std::make_shared<RangeBearingSensor>(p));
    } else {
      DirectPositionParams p = cfg.direct;
      p.clutter_rate = cfg.clutter;
      p.noise_var /= noise_divisor;
      out.push_back(std::make_shared<DirectPositionSensor>(p));
    }
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<Point> positions_of(const std::vector<CtState>& xs) {
  std::vector<Point> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(position(x));
  return out;
}

}  // namespace

MttRunResult run_mtt(const MttConfig& cfg, const std::vector<TrackerSpec>& trackers, std::uint64_t seed,
                     std::uint64_t run) {
  if (cfg.sensors < 1 || cfg.steps < 1) fail(ErrorKind::config, "tracking needs sensors >= 1 and steps >= 1");
  const auto sensors = make_sensors(cfg, cfg.sensors);

  RngStream truth_rng(seed, stream_id(run, name_hash("mtt-truth")));
  Truth truth;
  if (cfg.scenario == ScenarioKind::ct) {
    CtScenarioConfig sc = cfg.ct;
    sc.steps = cfg.steps;
    truth = generate_ct_truth(sc, *sensors.front(), truth_rng);
  } else {
    GhostScenarioConfig gc = cfg.ghost;
    gc.steps = cfg.steps;
    gc.half_width = cfg.direct.half_width;
    truth = generate_ghost_truth(gc, truth_rng);
  }
  RngStream scan_rng(seed, stream_id(run, name_hash("mtt-scan")));
  const auto scans = generate_scans(truth, sensors, scan_rng);

  auto needs = [&](Fusion f) {
    return std::any_of(trackers.begin(), trackers.end(), [f](const TrackerSpec& t) { return t.fusion == f; });
  };
  const bool need_oft = needs(Fusion::oft);
  std::vector<SensorPtr> super;
  std::vector<ScanData> super_scans;
  if (need_oft) {
    if (cfg.sensors == 1) {
      super = sensors;
      super_scans = scans;
    } else {
      super = make_sensors(cfg, 1, static_cast<double>(cfg.sensors));
      RngStream oft_rng(seed, stream_id(run, name_hash("mtt-scan-oft")));
      super_scans = generate_scans(truth, super, oft_rng);
    }
  }

  // Filters are shared across trackers that need the same one.
  const bool need_single = needs(Fusion::none);
  const bool need_t2t = needs(Fusion::t2t);
  std::vector<SmcPhdFilter> per_sensor;
  if (need_single || need_t2t) {
    if (cfg.scenario != ScenarioKind::ct) fail(ErrorKind::config, "PHD trackers need the CT scenario");
    const int count = need_t2t ? cfg.sensors : 1;
    for (int s = 0; s < count; ++s)
      per_sensor.emplace_back(sensors[static_cast<std::size_t>(s)], cfg.phd,
                              RngStream(seed, stream_id(run, name_hash("mtt-phd-" + std::to_string(s)))));
  }
  std::vector<SmcPhdFilter> oft_filter;
  if (need_oft)
    oft_filter.emplace_back(super.front(), cfg.phd, RngStream(seed, stream_id(run, name_hash("mtt-phd-oft"))));

  // Extractors: one per tracker, plus one per sensor filter for T2T.
  std::vector<Extractor> extractors;
  std::vector<std::vector<Extractor>> t2t_extractors(trackers.size());
  for (std::size_t k = 0; k < trackers.size(); ++k) {
    const auto& tr = trackers[k];
    RngStream er(seed, stream_id(run, name_hash("mtt-extract-" + tr.name)));
    extractors.emplace_back(tr.extractor, er, cfg.phd.identify_threshold);
    if (tr.fusion == Fusion::t2t)
      for (int s = 0; s < cfg.sensors; ++s)
        t2t_extractors[k].emplace_back(tr.extractor, er.derive(static_cast<std::uint64_t>(s)),
                                       cfg.phd.identify_threshold);
  }

  MttRunResult res;
  res.per_tracker.assign(trackers.size(), std::vector<StepResult>(static_cast<std::size_t>(cfg.steps)));
  for (int t = 1; t <= cfg.steps; ++t) {
    const auto& scan = scans[static_cast<std::size_t>(t - 1)];
    const auto truth_pts = truth.positions(t);

    std::vector<double> filter_ms(per_sensor.size(), 0.0);
    for (std::size_t s = 0; s < per_sensor.size(); ++s) {
      const auto start = Clock::now();
      per_sensor[s].step(scan.sensors[s]);
      filter_ms[s] = ms_since(start);
    }
    double oft_ms = 0.0;
    if (need_oft) {
      const auto start = Clock::now();
      oft_filter.front().step(super_scans[static_cast<std::size_t>(t - 1)].sensors.front());
      oft_ms = ms_since(start);
    }
    std::vector<MappedPoint> mapped;
    double map_ms = 0.0;

    for (std::size_t k = 0; k < trackers.size(); ++k) {
      const auto& tr = trackers[k];
      std::vector<Point> est;
      double ms = 0.0;
      const auto start = Clock::now();
      switch (tr.fusion) {
        case Fusion::none:
          est = positions_of(extractors[k].extract(per_sensor.front(), scan.sensors.front()));
          ms = filter_ms.front();
          break;
        case Fusion::oft:
          est = positions_of(extractors[k].extract(oft_filter.front(),
                                                   super_scans[static_cast<std::size_t>(t - 1)].sensors.front()));
          ms = oft_ms;
          break;
        case Fusion::t2t: {
          std::vector<std::vector<Point>> sets;
          for (int s = 0; s < cfg.sensors; ++s)
            sets.push_back(positions_of(t2t_extractors[k][static_cast<std::size_t>(s)].extract(
                per_sensor[static_cast<std::size_t>(s)], scan.sensors[static_cast<std::size_t>(s)])));
          est = t2t_fuse(sets, *sensors.front());
          for (double f : filter_ms) ms += f;
          break;
        }
        case Fusion::o2: {
          if (cfg.sensors < 2) fail(ErrorKind::config, "the clustering tracker needs at least two sensors");
          if (mapped.empty()) {
            const auto m0 = Clock::now();
            mapped = map_scan(scan, sensors);
            map_ms = ms_since(m0);
          }
          est = cluster_clutter_filter(mapped, sensors, cfg.cluster);
          ms = map_ms;
          break;
        }
      }
      ms += ms_since(start);
      auto& out = res.per_tracker[k][static_cast<std::size_t>(t - 1)];
      out.ospa = ospa(truth_pts, est, cfg.ospa);
      out.card_true = static_cast<int>(truth_pts.size());
      out.card_est = static_cast<int>(est.size());
      out.wall_ms = ms;
    }
  }
  for (const auto& f : per_sensor) res.degeneracy_events += f.degeneracy_events();
  for (const auto& f : oft_filter) res.degeneracy_events += f.degeneracy_events();
  return res;
}

}  // namespace o2b::mtt
