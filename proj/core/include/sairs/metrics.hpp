#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sairs/equilibria.hpp"
#include "sairs/simulate.hpp"
#include "sairs/types.hpp"

namespace sairs {

enum class CompartmentKind { Asymptomatic, Symptomatic };

struct PeakInfo {
    double time = 0.0;
    double magnitude = 0.0;
};

struct CommunitySummary {
    int group = 0;  // 1-based
    std::optional<double> a_start, i_start;
    PeakInfo a_peak, i_peak;
    std::optional<double> a_endemic, i_endemic;  // reference values when supplied
};

// Global maximum of A_i(t) and I_i(t) per group, refined by quadratic
// interpolation through the bracketing samples (earliest sample wins ties),
// paired with the event start times.
std::vector<CommunitySummary> peak_summary(const Trajectory& traj, const EventLog& events);
std::vector<CommunitySummary> peak_summary(const Trajectory& traj, const EventLog& events,
                                           const EquilibriumReport& endemic_reference);

struct TotalsSeries {
    std::vector<double> times;
    std::vector<double> sum_a;
    std::vector<double> sum_i;
};

// Pointwise sums of A and I across groups at each sample.
TotalsSeries totals(const Trajectory& traj);

enum class TableFormat { Csv, Text };

// One table per compartment kind with columns
// community,start_time,peak_time,peak_magnitude. Times are printed rounded to
// 2 decimals in Text format and at full precision in Csv.
std::string table_report(const std::vector<CommunitySummary>& summaries, CompartmentKind kind,
                         TableFormat format);

}  // namespace sairs
