#pragma once

#include "lgsim/macrorealist.hpp"
#include "lgsim/protocols.hpp"

#include <string>
#include <vector>

namespace lgsim {

/// 17 significant digits, '.' decimal separator, no locale surprises.
std::string format_double(double value);

/// One engine's sweep results, tagged with the engine name used in the
/// `engine` CSV column.
struct SweepSeries {
    std::string engine_label;
    std::vector<std::pair<double, CorrelatorSet>> rows;
};

// CSV files use RFC 4180 line endings (CRLF). The sweep schema is fixed:
// theta,c12,c23,c13,k,engine. With several series the rows for one theta
// appear adjacently, one per engine.
std::string sweep_csv(const std::vector<SweepSeries>& series);
std::string invasiveness_csv(double theta,
                             const std::array<PerturbationReport, 3>& reports);
std::string coin_csv(const std::vector<CoinStep>& steps);
std::string key_value_csv(
    const std::vector<std::pair<std::string, std::string>>& rows);

/// Deterministic line plot of K versus theta, one polyline per series, with
/// the macrorealist bound K = 1 drawn as a dashed rule.
std::string sweep_svg(const std::vector<SweepSeries>& series);

/// Writes `contents` to `path`; throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace lgsim
