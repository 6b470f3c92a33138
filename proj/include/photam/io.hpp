#ifndef PHOTAM_IO_HPP
#define PHOTAM_IO_HPP

/// CSV and JSON renderings of distribution tables, cumulant sweeps and check
/// reports. Every file embeds the effective configuration for provenance, and
/// all doubles print with max_digits10 so identical runs are byte-identical.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "photam/spectra.hpp"
#include "photam/verify.hpp"

namespace photam {

using ConfigDump = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);

void write_table_csv(std::ostream& os, const DistributionTable& t, const ConfigDump& config);
std::string table_json(const DistributionTable& t, const ConfigDump& config);

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& sweep,
                     const ConfigDump& config);
std::string sweep_json(const std::vector<SweepEntry>& sweep, const ConfigDump& config);

void write_reports_text(std::ostream& os, const std::vector<CheckReport>& reports);
std::string reports_json(const std::vector<CheckReport>& reports, const ConfigDump& config);

}  // namespace photam

#endif
