#pragma once

#include <array>

#include "sairs/topology.hpp"

namespace sairs {

// Published reference values for the four bundled 9-community scenarios.
// The headline r0 values correspond to the gamma = 0.04 parameterization
// even though the published parameter table lists gamma = 0.02; the
// reproduce command runs both and reports the mismatch. Peak rows
// are reference start time / peak time / peak magnitude per community;
// start and peak times depend on the (unpublished) initial seed and are
// compared as deltas only, never asserted.
struct ReferencePeakRow {
    double start_time;
    double peak_time;
    double peak_magnitude;
};

struct TopologyReference {
    TopologyKind kind;
    const char* name;
    double rho_abar;      // spectral radius of adjacency + I
    double r0_headline;   // published value (gamma = 0.04)
    std::array<ReferencePeakRow, 9> i_rows;
    std::array<ReferencePeakRow, 9> a_rows;
};

// Table-1 gamma as published, and the variant matching the published r0.
inline constexpr double kGammaAsPrinted = 0.02;
inline constexpr double kGammaCalibrated = 0.04;

// Seed fraction calibrated against the reference symptomatic peak tables
// (grid search; best value preserving every reference peak-time ordering).
inline constexpr double kSeedFractionCalibrated = 0.05;

// Default seed fraction for scenarios (reproduces near-zero reference start
// times in the seed group's neighbors).
inline constexpr double kSeedFractionDefault = 0.01;

const std::array<TopologyReference, 4>& topology_references();

const TopologyReference& reference_for(TopologyKind kind);

}  // namespace sairs
