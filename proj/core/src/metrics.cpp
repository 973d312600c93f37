#include "sairs/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sairs {

namespace {

PeakInfo refined_peak(const Trajectory& traj, int column) {
    std::size_t best = 0;
    double best_value = traj.states[0][column];
    for (std::size_t k = 1; k < traj.size(); ++k) {
        if (traj.states[k][column] > best_value) {  // strict: earliest sample wins ties
            best_value = traj.states[k][column];
            best = k;
        }
    }
    PeakInfo peak{traj.times[best], best_value};
    if (best == 0 || best + 1 == traj.size()) return peak;

    // parabola through the bracketing triple (handles nonuniform spacing)
    const double y0 = traj.states[best - 1][column];
    const double y1 = best_value;
    const double y2 = traj.states[best + 1][column];
    const double dl = traj.times[best] - traj.times[best - 1];
    const double dr = traj.times[best + 1] - traj.times[best];
    const double denom = (y0 - y1) * dr + (y2 - y1) * dl;
    if (denom >= 0.0) return peak;  // not locally concave; keep the sample
    double offset = 0.5 * ((y0 - y1) * dr * dr - (y2 - y1) * dl * dl) / denom;
    offset = std::clamp(offset, -dl, dr);
    peak.time = traj.times[best] + offset;
    // evaluate the same parabola at the vertex
    const double c2 = ((y2 - y1) / dr + (y0 - y1) / dl) / (dl + dr);
    const double c1 = ((y2 - y1) / dr * dl + (y1 - y0) / dl * dr) / (dl + dr);
    peak.magnitude = y1 + c1 * offset + c2 * offset * offset;
    return peak;
}

std::vector<CommunitySummary> summarize(const Trajectory& traj, const EventLog& events,
                                        const EquilibriumReport* endemic) {
    if (traj.size() == 0 || traj.states.front().size() % 3 != 0) {
        throw SairsError(Errc::DimensionMismatch, "trajectory does not hold reduced states");
    }
    const int n = static_cast<int>(traj.states.front().size()) / 3;
    if (static_cast<int>(events.a_first.size()) != n) {
        throw SairsError(Errc::DimensionMismatch, "event log does not match the trajectory");
    }
    std::vector<CommunitySummary> out(n);
    for (int g = 0; g < n; ++g) {
        CommunitySummary& row = out[g];
        row.group = g + 1;
        row.a_start = events.a_first[g];
        row.i_start = events.i_first[g];
        row.a_peak = refined_peak(traj, 3 * g + 1);
        row.i_peak = refined_peak(traj, 3 * g + 2);
        if (endemic) {
            row.a_endemic = endemic->state.a(g);
            row.i_endemic = endemic->state.i(g);
        }
    }
    return out;
}

}  // namespace

std::vector<CommunitySummary> peak_summary(const Trajectory& traj, const EventLog& events) {
    return summarize(traj, events, nullptr);
}

std::vector<CommunitySummary> peak_summary(const Trajectory& traj, const EventLog& events,
                                           const EquilibriumReport& endemic_reference) {
    return summarize(traj, events, &endemic_reference);
}

TotalsSeries totals(const Trajectory& traj) {
    TotalsSeries series;
    if (traj.size() == 0) return series;
    if (traj.states.front().size() % 3 != 0) {
        throw SairsError(Errc::DimensionMismatch, "trajectory does not hold reduced states");
    }
    const int n = static_cast<int>(traj.states.front().size()) / 3;
    series.times = traj.times;
    series.sum_a.reserve(traj.size());
    series.sum_i.reserve(traj.size());
    for (const Vector& state : traj.states) {
        double sa = 0.0, si = 0.0;
        for (int g = 0; g < n; ++g) {
            sa += state[3 * g + 1];
            si += state[3 * g + 2];
        }
        series.sum_a.push_back(sa);
        series.sum_i.push_back(si);
    }
    return series;
}

std::string table_report(const std::vector<CommunitySummary>& summaries, CompartmentKind kind,
                         TableFormat format) {
    if (summaries.empty()) {
        throw SairsError(Errc::InvalidArgument, "no community summaries to report");
    }
    const bool symptomatic = kind == CompartmentKind::Symptomatic;
    std::ostringstream out;
    char buffer[160];

    if (format == TableFormat::Csv) {
        out << "community,start_time,peak_time,peak_magnitude\n";
        for (const CommunitySummary& row : summaries) {
            const auto& start = symptomatic ? row.i_start : row.a_start;
            const auto& peak = symptomatic ? row.i_peak : row.a_peak;
            char start_text[32] = "";
            if (start) std::snprintf(start_text, sizeof start_text, "%.10g", *start);
            std::snprintf(buffer, sizeof buffer, "%d,%s,%.10g,%.10g\n", row.group, start_text,
                          peak.time, peak.magnitude);
            out << buffer;
        }
        return out.str();
    }

    out << (symptomatic ? "Symptomatic infected (I)\n" : "Asymptomatic infected (A)\n");
    out << "community  start_time  peak_time  peak_magnitude\n";
    for (const CommunitySummary& row : summaries) {
        const auto& start = symptomatic ? row.i_start : row.a_start;
        const auto& peak = symptomatic ? row.i_peak : row.a_peak;
        if (start) {
            std::snprintf(buffer, sizeof buffer, "%9d  %10.2f  %9.2f  %14.4f\n", row.group, *start,
                          peak.time, peak.magnitude);
        } else {
            std::snprintf(buffer, sizeof buffer, "%9d  %10s  %9.2f  %14.4f\n", row.group, "-",
                          peak.time, peak.magnitude);
        }
        out << buffer;
    }
    return out.str();
}

}  // namespace sairs
