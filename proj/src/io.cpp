#include "photam/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace photam {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_config_comments(std::ostream& os, const ConfigDump& config) {
  for (const auto& [k, v] : config) os << "# " << k << " = " << v << "\n";
}

json config_json(const ConfigDump& config) {
  json j = json::object();
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

const char* kind_name(TableKind k) {
  switch (k) {
    case TableKind::DiscretePair: return "discrete_pair";
    case TableKind::Discrete: return "discrete";
    case TableKind::Binned: return "binned";
  }
  return "?";
}

}  // namespace

void write_table_csv(std::ostream& os, const DistributionTable& t, const ConfigDump& config) {
  write_config_comments(os, config);
  os << "# observable = " << t.observable << "\n";
  os << "# kind = " << kind_name(t.kind) << "\n";
  os << "# mass_deficit = " << format_double(t.mass_deficit) << "\n";
  if (t.observable == "Lzprime")
    os << "# j0_leakage = " << format_double(t.j0_leakage) << "\n";
  if (t.kind == TableKind::DiscretePair) {
    os << "m,ms,probability\n";
    for (std::size_t i = 0; i < t.prob.size(); ++i)
      os << t.m_label[i] << "," << t.ms_label[i] << "," << format_double(t.prob[i]) << "\n";
  } else if (t.kind == TableKind::Discrete) {
    os << "outcome,probability\n";
    for (std::size_t i = 0; i < t.prob.size(); ++i)
      os << t.outcome[i] << "," << format_double(t.prob[i]) << "\n";
  } else {
    os << "bin_low,bin_high,probability,outcome_mean,outcome_sqmean\n";
    for (std::size_t i = 0; i < t.prob.size(); ++i)
      os << format_double(t.edges[i]) << "," << format_double(t.edges[i + 1]) << ","
         << format_double(t.prob[i]) << "," << format_double(t.outcome_mean[i]) << ","
         << format_double(t.outcome_sqmean[i]) << "\n";
  }
}

std::string table_json(const DistributionTable& t, const ConfigDump& config) {
  json j;
  j["schema"] = "photam.distribution.v1";
  j["config"] = config_json(config);
  j["observable"] = t.observable;
  j["kind"] = kind_name(t.kind);
  j["a"] = t.a;
  j["mass_deficit"] = t.mass_deficit;
  if (t.observable == "Lzprime") j["j0_leakage"] = t.j0_leakage;
  if (t.kind == TableKind::DiscretePair) {
    j["m"] = t.m_label;
    j["ms"] = t.ms_label;
  } else if (t.kind == TableKind::Discrete) {
    j["outcome"] = t.outcome;
  } else {
    j["edges"] = t.edges;
    j["outcome_mean"] = t.outcome_mean;
    j["outcome_sqmean"] = t.outcome_sqmean;
  }
  j["probability"] = t.prob;
  return j.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& sweep,
                     const ConfigDump& config) {
  write_config_comments(os, config);
  os << "a,observable,mode,mean,variance,f_of_a,status\n";
  for (const auto& e : sweep) {
    if (!e.ok) {
      os << format_double(e.a) << ",,,,,," << "error:" << e.error << "\n";
      continue;
    }
    for (const auto& r : e.records) {
      const bool canonical = r.observable == "Lz" || r.observable == "Sz";
      os << format_double(e.a) << "," << r.observable << ","
         << (canonical ? "unsharp" : "sharp") << "," << format_double(r.mean) << ","
         << format_double(r.variance) << "," << format_double(e.f_value) << ",ok\n";
    }
  }
}

std::string sweep_json(const std::vector<SweepEntry>& sweep, const ConfigDump& config) {
  json j;
  j["schema"] = "photam.sweep.v1";
  j["config"] = config_json(config);
  json rows = json::array();
  for (const auto& e : sweep) {
    json row;
    row["a"] = e.a;
    row["status"] = e.ok ? "ok" : ("error:" + e.error);
    row["f_of_a"] = e.f_value;
    json recs = json::array();
    for (const auto& r : e.records) {
      recs.push_back({{"observable", r.observable},
                      {"mean", r.mean},
                      {"variance", r.variance}});
    }
    row["cumulants"] = recs;
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j.dump(2) + "\n";
}

void write_reports_text(std::ostream& os, const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    os << (r.pass ? "[pass] " : "[FAIL] ") << r.name << "  residual=" << format_double(r.worst_residual)
       << " tol=" << format_double(r.tolerance);
    if (!r.witness.empty()) os << "  worst at: " << r.witness;
    os << "\n";
    if (!r.note.empty()) os << "        " << r.note << "\n";
  }
}

std::string reports_json(const std::vector<CheckReport>& reports, const ConfigDump& config) {
  json j;
  j["schema"] = "photam.verify.v1";
  j["config"] = config_json(config);
  json rows = json::array();
  for (const auto& r : reports) {
    rows.push_back({{"name", r.name},
                    {"status", r.pass ? "pass" : "fail"},
                    {"residual", r.worst_residual},
                    {"tolerance", r.tolerance},
                    {"witness", r.witness},
                    {"seed", r.seed},
                    {"note", r.note}});
  }
  j["checks"] = rows;
  j["all_pass"] = all_pass(reports);
  return j.dump(2) + "\n";
}

}  // namespace photam
