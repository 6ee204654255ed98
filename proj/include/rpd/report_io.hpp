#ifndef RPD_REPORT_IO_HPP
#define RPD_REPORT_IO_HPP

// Experiment configuration (JSON in) and report (JSON + CSV out).
//
// Config keys, all optional:
//   n_clean, n_outliers, grid_points, M, runs, seed   (non-negative integers)
//   u        number or array of numbers in [0, 1)
//   depths   array drawn from "rpd", "fd", "id"
//   threads  worker threads, 0 = all cores (never echoed in the report)
//
// The CSV mirrors the layout of the comparison table: one row per u, a
// mean/sd column pair per depth notion. RHD and RHD6 columns are present
// and always "NA" (not implemented). FD and ID do not depend on u and
// repeat on every row.

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rpd/curve_io.hpp"
#include "rpd/simulation.hpp"

namespace rpd {

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n_clean") c.n_clean = value.get<std::size_t>();
      else if (key == "n_outliers") c.n_outliers = value.get<std::size_t>();
      else if (key == "grid_points") c.grid_points = value.get<std::size_t>();
      else if (key == "M") c.M = value.get<std::size_t>();
      else if (key == "runs") c.runs = value.get<std::size_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "threads") c.threads = value.get<unsigned>();
      else if (key == "u") {
        c.u.clear();
        if (value.is_array())
          for (const auto& x : value)
            c.u.push_back(x.get<double>());
        else
          c.u.push_back(value.get<double>());
      } else if (key == "depths") {
        c.depths.clear();
        for (const auto& x : value)
          c.depths.push_back(parse_depth_notion(x.get<std::string>()));
      } else {
        throw ParseError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

inline ExperimentConfig read_config(std::istream& in, const std::string& name) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
  if (!j.is_object())
    throw ParseError(name + ": config must be a JSON object");
  return config_from_json(j);
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json depths = nlohmann::json::array();
  for (DepthNotion n : c.depths)
    depths.push_back(to_string(n));
  return {{"n_clean", c.n_clean},       {"n_outliers", c.n_outliers}, {"grid_points", c.grid_points},
          {"M", c.M},                   {"u", c.u},                   {"runs", c.runs},
          {"seed", c.seed},             {"depths", depths}};
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  json runs = json::array();
  for (const RunResult& run : r.runs) {
    json jr{{"run", run.run}, {"seed", std::to_string(run.seed)}, {"failed", run.failed}};
    if (run.failed)
      jr["failure"] = run.failure;
    if (!run.betas.empty())
      jr["beta"] = run.betas;
    if (!run.rpd_mean_rank.empty())
      jr["RPD"] = run.rpd_mean_rank;
    if (run.fd_mean_rank)
      jr["FD"] = *run.fd_mean_rank;
    if (run.id_mean_rank)
      jr["ID"] = *run.id_mean_rank;
    runs.push_back(std::move(jr));
  }
  json summary = json::array();
  for (const SummaryCell& c : r.summary)
    summary.push_back({{"depth", to_string(c.notion)},
                       {"u", opt(c.u)},
                       {"runs_used", c.runs_used},
                       {"mean", opt(c.mean)},
                       {"sd", opt(c.sd)}});
  json out{{"config", config_to_json(r.config)},
           {"failed_runs", r.failed_runs},
           {"aborted", r.aborted},
           {"single_run", r.single_run},
           {"metric_defined", r.metric_defined},
           {"summary", std::move(summary)},
           {"unimplemented", json::array({"RHD", "RHD6"})},
           {"runs", std::move(runs)}};
  if (!r.metric_defined)
    out["note"] = "no outliers: mean outlier rank is undefined";
  return out;
}

inline void write_report_csv(std::ostream& out, const ExperimentReport& r) {
  auto field = [](const SummaryCell* c, bool sd) -> std::string {
    if (!c)
      return "NA";
    const auto& v = sd ? c->sd : c->mean;
    return v ? format_real(*v) : "NA";
  };
  out << "u,RPD_mean,RPD_sd,RHD_mean,RHD_sd,RHD6_mean,RHD6_sd,FD_mean,FD_sd,ID_mean,ID_sd\n";
  const SummaryCell* fd = r.find(DepthNotion::fd);
  const SummaryCell* id = r.find(DepthNotion::id);
  std::vector<double> us = r.config.u;
  if (us.empty())
    us.push_back(0.0);
  for (double u : us) {
    const SummaryCell* rp = r.find(DepthNotion::rpd, u);
    out << format_real(u) << ',' << field(rp, false) << ',' << field(rp, true)
        << ",NA,NA,NA,NA," << field(fd, false) << ',' << field(fd, true) << ','
        << field(id, false) << ',' << field(id, true) << '\n';
  }
}

} // namespace rpd

#endif // RPD_REPORT_IO_HPP
