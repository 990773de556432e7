// SPDX-License-Identifier: Apache-2.0
#include "vaba/sim/batch.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace vaba::sim {

namespace {

// Nearest-rank quantile on a sorted sample.
double quantile(std::vector<double>& sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  std::size_t rank = static_cast<std::size_t>(std::max(
      0.0, std::ceil(q * static_cast<double>(sorted.size())) - 1.0));
  return sorted[std::min(rank, sorted.size() - 1)];
}

}  // namespace

AggregateSummary aggregate(std::span<const RunMetrics> metrics) {
  if (metrics.empty()) throw std::invalid_argument("aggregate: no runs");
  AggregateSummary s;
  s.runs = metrics.size();
  double views = 0.0;
  double durations = 0.0;
  std::size_t view1 = 0;
  std::size_t quality = 0;
  std::vector<double> view_samples;
  std::vector<double> duration_samples;
  view_samples.reserve(metrics.size());
  duration_samples.reserve(metrics.size());
  for (const auto& m : metrics) {
    views += static_cast<double>(m.views_to_decide);
    durations += m.duration;
    view_samples.push_back(static_cast<double>(m.views_to_decide));
    duration_samples.push_back(m.duration);
    if (m.all_honest_decided && m.views_to_decide == 1) ++view1;
    if (m.quality_flag) ++quality;
    if (!m.all_honest_decided) ++s.failed_runs;
    if (!m.violations.empty()) ++s.violation_runs;
    double ratio = static_cast<double>(m.max_words_per_view()) /
                   (static_cast<double>(m.n) * static_cast<double>(m.n));
    s.max_words_per_view_over_n2 = std::max(s.max_words_per_view_over_n2, ratio);
  }
  s.mean_views_to_decide = views / static_cast<double>(s.runs);
  s.p50_views_to_decide = quantile(view_samples, 0.5);
  s.p90_views_to_decide = quantile(view_samples, 0.9);
  s.p_decide_view1 = static_cast<double>(view1) / static_cast<double>(s.runs);
  s.quality_rate = static_cast<double>(quality) / static_cast<double>(s.runs);
  s.mean_duration = durations / static_cast<double>(s.runs);
  s.p90_duration = quantile(duration_samples, 0.9);
  return s;
}

std::string summary_to_json(const AggregateSummary& s) {
  nlohmann::json j;
  j["runs"] = s.runs;
  j["mean_views_to_decide"] = s.mean_views_to_decide;
  j["p50_views_to_decide"] = s.p50_views_to_decide;
  j["p90_views_to_decide"] = s.p90_views_to_decide;
  j["p_decide_view1"] = s.p_decide_view1;
  j["max_words_per_view_over_n2"] = s.max_words_per_view_over_n2;
  j["quality_rate"] = s.quality_rate;
  j["mean_duration"] = s.mean_duration;
  j["p90_duration"] = s.p90_duration;
  j["failed_runs"] = s.failed_runs;
  j["violation_runs"] = s.violation_runs;
  return j.dump(2);
}

std::string metrics_csv_header() {
  return "run_seed,views_to_decide,words_view1,max_words_per_view,decided_value_honest,duration\n";
}

std::string metrics_csv_row(const RunMetrics& m) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%llu,%llu,%llu,%llu,%d,%.6f\n",
                static_cast<unsigned long long>(m.seed),
                static_cast<unsigned long long>(m.views_to_decide),
                static_cast<unsigned long long>(m.words_in_view(1)),
                static_cast<unsigned long long>(m.max_words_per_view()), m.quality_flag ? 1 : 0,
                m.duration);
  return buf;
}

BatchResult run_batch(const ExperimentConfig& cfg, bool parallel, bool capture_trace) {
  cfg.validate();
  std::vector<RunResult> results(cfg.runs);

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(cfg.runs); ++i) {
      results[static_cast<std::size_t>(i)] =
          run_one(cfg, cfg.seed + static_cast<std::uint64_t>(i), capture_trace);
    }
  } else {
    for (std::uint32_t i = 0; i < cfg.runs; ++i) {
      results[i] = run_one(cfg, cfg.seed + i, capture_trace);
    }
  }

  BatchResult out;
  out.metrics.reserve(cfg.runs);
  out.csv = metrics_csv_header();
  for (std::uint32_t i = 0; i < cfg.runs; ++i) {
    out.csv += metrics_csv_row(results[i].metrics);
    if (capture_trace) {
      if (cfg.runs > 1) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "{\"run_seed\":%llu}\n",
                      static_cast<unsigned long long>(results[i].metrics.seed));
        out.trace += buf;
      }
      out.trace += results[i].trace;
    }
    out.metrics.push_back(std::move(results[i].metrics));
  }
  out.summary = aggregate(out.metrics);
  return out;
}

}  // namespace vaba::sim
