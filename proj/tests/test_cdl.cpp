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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ch5gr/analysis.hpp"
#include "ch5gr/cdl.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace ch5gr;

namespace
{
    // Brute-force second-central-moment oracle over explicit rows; kept
    // deliberately separate from the analysis implementation.
    double table_rmsds_oracle_ns(const CdlTable &t)
    {
        double total = 0.0, m1 = 0.0, m2 = 0.0;
        for (const auto &r : t.rows)
        {
            const double p = std::pow(10.0, r.power_db / 10.0);
            total += p;
            m1 += p * r.delay_ns;
            m2 += p * r.delay_ns * r.delay_ns;
        }
        return std::sqrt(m2 / total - (m1 / total) * (m1 / total));
    }
}

TEST_CASE("builtin tables carry the published rows")
{
    const auto tables = builtin_tables();
    REQUIRE(tables.size() == 2);

    const CdlTable &rural = tables[0];
    CHECK(rural.name == "5G-R-Rural");
    REQUIRE(rural.rows.size() == 5);
    CHECK(rural.rows[0].delay_ns == 0.0);
    CHECK(rural.rows[0].power_db == -0.5);
    CHECK(rural.rows[0].aoa_deg == 219.6);
    CHECK(rural.rows[0].eoa_deg == 65.5);
    CHECK(rural.rows[0].los);
    CHECK(rural.rows[4].delay_ns == 806.152);
    CHECK(rural.rows[4].power_db == -15.1);

    const CdlTable &rma = tables[1];
    CHECK(rma.name == "RMa-CDL-D");
    REQUIRE(rma.rows.size() == 5);
    CHECK(rma.rows[4].delay_ns == 220.674);
    CHECK(rma.rows[4].power_db == -17.9);
    CHECK(rma.rows[4].aoa_deg == 163.0);
    CHECK(rma.rows[4].eoa_deg == 79.4);
    CHECK_FALSE(rma.rows[4].los);
}

TEST_CASE("implied K factor of the rural table")
{
    // 10^-0.05 / (10^-2.37 + 10^-2.09 + 10^-1.14 + 10^-1.51) = 7.70
    const CdlTable *t = find_builtin("5G-R-Rural");
    REQUIRE(t != nullptr);
    CHECK(t->implied_k_factor() == doctest::Approx(7.7004).epsilon(1e-4));
    CHECK(10.0 * std::log10(t->implied_k_factor()) == doctest::Approx(8.865).epsilon(1e-3));
}

TEST_CASE("static RMS DS of the rural table: two code paths agree exactly")
{
    const CdlTable *t = find_builtin("5G-R-Rural");
    REQUIRE(t != nullptr);
    const double oracle = table_rmsds_oracle_ns(*t);
    CHECK(oracle == doctest::Approx(154.232).epsilon(1e-4));

    std::vector<double> delays, powers;
    for (const auto &r : t->rows)
    {
        delays.push_back(r.delay_ns * 1e-9);
        powers.push_back(std::pow(10.0, r.power_db / 10.0));
    }
    const double impl = rms_delay_spread(delays, powers) * 1e9;
    CHECK(std::fabs(impl - oracle) / oracle < 1e-9);
}

TEST_CASE("delay scaling: identity, doubling, RMS DS homogeneity")
{
    const CdlTable *t = find_builtin("5G-R-Rural");
    REQUIRE(t != nullptr);
    const CdlTable same = scale_normalized_delays(*t, 1.0);
    for (std::size_t i = 0; i < t->rows.size(); ++i)
        CHECK(same.rows[i].delay_ns == t->rows[i].delay_ns);

    const CdlTable twice = scale_normalized_delays(*t, 2.0);
    for (std::size_t i = 0; i < t->rows.size(); ++i)
    {
        CHECK(twice.rows[i].delay_ns == doctest::Approx(2.0 * t->rows[i].delay_ns));
        CHECK(twice.rows[i].power_db == t->rows[i].power_db);
        CHECK(twice.rows[i].aoa_deg == t->rows[i].aoa_deg);
    }
    CHECK(table_rmsds_oracle_ns(twice) ==
          doctest::Approx(2.0 * table_rmsds_oracle_ns(*t)).epsilon(1e-12));
    CHECK_THROWS_AS(scale_normalized_delays(*t, 0.0), std::invalid_argument);
}

TEST_CASE("instantiation satisfies the cluster-set invariants")
{
    const CdlTable *t = find_builtin("5G-R-Rural");
    REQUIRE(t != nullptr);
    const ScenarioConfig sc = scenario_preset(AreaTag::Rural5GRA);
    Rng rng(60);
    const CdlInstance inst = instantiate_cdl(*t, sc, 20, rng);
    REQUIRE(inst.set.clusters.size() == 5);
    double sum = 0.0;
    for (const auto &c : inst.set.clusters)
        sum += c.power_lin;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inst.set.clusters[0].delay_s == 0.0);
    CHECK(inst.set.clusters[0].is_los);
    CHECK(inst.k_factor_linear == doctest::Approx(7.7004).epsilon(1e-4));
    for (const auto &c : inst.set.clusters)
        CHECK(c.rays.size() == 20);
}

TEST_CASE("instantiation with one ray per cluster sits on the row angles")
{
    const CdlTable *t = find_builtin("5G-R-Rural");
    const ScenarioConfig sc = scenario_preset(AreaTag::Rural5GRA);
    Rng rng(61);
    const CdlInstance inst = instantiate_cdl(*t, sc, 1, rng);
    constexpr double d2r = std::numbers::pi / 180.0;
    for (std::size_t i = 0; i < inst.set.clusters.size(); ++i)
    {
        const auto &c = inst.set.clusters[i];
        REQUIRE(c.rays.size() == 1);
        CHECK(c.rays[0].aoa_az ==
              doctest::Approx(SphericalAngles::wrap_azimuth(t->rows[i].aoa_deg * d2r)));
        CHECK(c.rays[0].eoa_zen == doctest::Approx(t->rows[i].eoa_deg * d2r));
    }
}

TEST_CASE("horizon convention converts EOA on instantiation")
{
    const CdlTable *t = find_builtin("5G-R-Rural");
    const ScenarioConfig sc = scenario_preset(AreaTag::Rural5GRA);
    Rng rng(62);
    const CdlInstance inst = instantiate_cdl(*t, sc, 1, rng, EoaConvention::Horizon);
    constexpr double d2r = std::numbers::pi / 180.0;
    CHECK(inst.set.clusters[0].eoa_zen ==
          doctest::Approx((90.0 - t->rows[0].eoa_deg) * d2r));
}

TEST_CASE("CSV round trip preserves the rows")
{
    const auto dir = std::filesystem::temp_directory_path() / "ch5gr_test_cdl";
    std::filesystem::create_directories(dir);
    const auto path = dir / "rural.csv";
    const CdlTable *t = find_builtin("5G-R-Rural");
    save_cdl_csv(*t, path);
    const CdlTable back = load_cdl_csv(path);
    REQUIRE(back.rows.size() == t->rows.size());
    for (std::size_t i = 0; i < t->rows.size(); ++i)
    {
        CHECK(back.rows[i].delay_ns == doctest::Approx(t->rows[i].delay_ns));
        CHECK(back.rows[i].power_db == doctest::Approx(t->rows[i].power_db));
        CHECK(back.rows[i].aoa_deg == doctest::Approx(t->rows[i].aoa_deg));
        CHECK(back.rows[i].eoa_deg == doctest::Approx(t->rows[i].eoa_deg));
        CHECK(back.rows[i].los == t->rows[i].los);
    }
}

TEST_CASE("table validation rejects malformed tables")
{
    CdlTable t;
    t.name = "bad";
    CHECK_THROWS_AS(t.validate(), std::invalid_argument); // empty

    t.rows = {{10.0, -1.0, 0.0, 45.0, true}};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument); // first delay nonzero

    t.rows = {{0.0, 1.0, 0.0, 45.0, true}};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument); // power above 0 dB
}
