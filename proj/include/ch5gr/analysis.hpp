// SPDX-License-Identifier: Apache-2.0
//
// ch5gr - cluster-based time-variant channel simulator for 5G railway links
// Copyright (C) 2026 ch5gr contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ch5gr_analysis_H
#define ch5gr_analysis_H

#include "ch5gr/evolution.hpp"
#include "ch5gr/rng.hpp"
#include "ch5gr/trace.hpp"

#include <complex>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

namespace ch5gr
{
    // Power-delay profile on a uniform delay grid.
    struct Pdp
    {
        double time_s = 0.0;
        double delay_step_s = 0.0;
        std::vector<double> power; // linear, >= 0
    };

    // Raised where a metric needs >= 2 valid paths but found one.
    class SinglePathError : public std::domain_error
    {
    public:
        SinglePathError() : std::domain_error("only one valid path, K-factor is infinite") {}
    };

    Pdp instantaneous_pdp(std::span<const std::complex<float>> taps, double delay_step_s,
                          double time_s);

    // Bin-wise mean over the window; bins below (noise floor + 6 dB) zeroed.
    // A non-finite noise floor keeps every bin.
    Pdp apdp(std::span<const Pdp> window, double noise_floor_db);

    // Median bin power in dB; a robust floor estimate for thresholding.
    double estimate_noise_floor_db(const Pdp &pdp);

    double rms_delay_spread(const Pdp &apdp); // throws on all-zero input

    // Moment form over explicit (delay, power) taps; shares no code path with
    // the gridded overload on purpose.
    double rms_delay_spread(std::span<const double> delays_s,
                            std::span<const double> powers_lin);

    // Strongest valid bin over the sum of the others, dB.
    double rice_k_factor_db(const Pdp &apdp);

    // -10 log10(mean |h|^2) per snapshot over a sliding window covering
    // `window_snapshots`, averaged across the grid and all element pairs.
    std::vector<double> extract_large_scale(const CirTrace &trace, int window_snapshots);

    struct PathLossFit
    {
        double intercept_db = 0.0; // A
        double exponent = 0.0;     // n
        double sf_sigma_db = 0.0;  // std of residuals
        std::vector<double> residuals_db;
    };

    PathLossFit fit_path_loss(std::span<const double> distances_m,
                              std::span<const double> large_scale_db, double d0_m);

    // Temporal PDP correlation coefficient, in [0, 1], symmetric.
    double tpcc(const Pdp &a, const Pdp &b);

    struct StationarityRegion
    {
        int anchor_snapshot = 0;
        double delta_w_s = 0.0;  // forward-maximal window
        double distance_m = 0.0; // v * delta_w
    };

    std::vector<StationarityRegion> stationarity_regions(std::span<const Pdp> pdps,
                                                         double threshold,
                                                         double speed_mps,
                                                         double snapshot_dt_s);

    // One estimated or ground-truth multipath component.
    struct MpcEntry
    {
        int snapshot = 0;
        std::complex<double> amplitude{0.0, 0.0};
        double delay_s = 0.0;
        double aoa_rad = 0.0; // azimuth
        double eoa_rad = 0.0; // zenith
        int cluster_label = -1;
        int track_id = -1;
    };

    enum class AngleDim
    {
        Azimuth,
        Elevation,
    };

    // Power-weighted RMS spread about the power-weighted mean; azimuths are
    // handled on the circle with minimal-arc deviations.
    double angular_spread_rad(std::span<const MpcEntry> mpcs, AngleDim dim);

    struct McdParams
    {
        double xi = 1.0;            // delay-term weight
        double tau_std_s = 0.0;     // delay std over the snapshot union
        double delta_tau_max_s = 0.0;
    };

    McdParams mcd_params_for(std::span<const MpcEntry> a, std::span<const MpcEntry> b,
                             double xi = 1.0);

    // Combined angle/delay distance; zero iff both coordinates coincide.
    double mcd(const MpcEntry &x, const MpcEntry &y, const McdParams &params);

    struct McdCentroid
    {
        double delay_s = 0.0;
        double aoa_rad = 0.0;
        double eoa_rad = 0.0;
        double power = 0.0;
        Vec3 dir; // embedded mean direction (inside the unit sphere)
    };

    struct KpmResult
    {
        std::vector<int> labels;
        std::vector<McdCentroid> centroids;
        std::vector<double> cost_per_iteration; // non-increasing
        int iterations = 0;
    };

    // KPowerMeans: assignment by MCD, power-weighted centroid updates, at most
    // 100 iterations. Requires k <= number of MPCs.
    KpmResult kpowermeans(std::span<const MpcEntry> mpcs, int k, Rng &rng, double xi = 1.0);

    struct ClusterTrack
    {
        int id = 0;
        int birth_snapshot = 0;
        int death_snapshot = 0; // inclusive
        std::vector<McdCentroid> centroids;

        int lifetime_snapshots() const { return death_snapshot - birth_snapshot + 1; }
    };

    // Greedy nearest-MCD matching between consecutive snapshots; matches above
    // the threshold break tracks.
    std::vector<ClusterTrack> track_clusters(
        const std::vector<std::vector<McdCentroid>> &per_snapshot, double threshold = 0.06,
        double xi = 1.0);

    enum class DistFamily
    {
        Normal,
        LogNormal,
    };

    struct FitResult
    {
        DistFamily family = DistFamily::Normal;
        double mu = 0.0;
        double sigma = 0.0;
        double ks_stat = 0.0;
        std::size_t n = 0;
    };

    // Method-of-moments fit; the KS statistic against the fitted CDF is the
    // goodness metric. LogNormal requires positive samples.
    FitResult fit_distribution(std::span<const double> samples, DistFamily family);

    struct LifetimeStats
    {
        FitResult lifetime_fit;                 // lognormal on seconds
        std::map<int, int> count_histogram;     // alive tracks per snapshot
        std::vector<double> lifetimes_s;
    };

    LifetimeStats lifetime_stats(std::span<const ClusterTrack> tracks, double snapshot_dt_s,
                                 int n_snapshots);

    struct MarkovFit
    {
        MarkovMatrix matrix;
        std::array<bool, 4> row_has_data{};
    };

    // Empirical transition frequencies over a state sequence; rows without
    // departures come back uniform and flagged.
    MarkovFit fit_markov(std::span<const BdState> states);

    // Kolmogorov-Smirnov statistic of samples against the standard uniform.
    double ks_uniform01(std::span<const double> samples);

} // namespace ch5gr

#endif
