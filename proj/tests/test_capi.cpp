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
//
// The shared-library surface, exercised the way an external client would.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ch5gr.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace
{
    std::filesystem::path fresh_dir(const std::string &name)
    {
        const auto p = std::filesystem::temp_directory_path() / "ch5gr_test_capi" / name;
        std::filesystem::remove_all(p);
        std::filesystem::create_directories(p);
        return p;
    }
}

TEST_CASE("version and last_error are always usable")
{
    CHECK(ch5gr_version() != nullptr);
    CHECK(ch5gr_last_error() != nullptr);
}

TEST_CASE("config handle lifecycle, defaults, set/get")
{
    ch5gr_config *cfg = nullptr;
    REQUIRE(ch5gr_config_new(&cfg) == CH5GR_OK);

    char buf[64];
    REQUIRE(ch5gr_config_get(cfg, "scenario", "carrier_frequency_hz", buf, sizeof(buf)) ==
            CH5GR_OK);
    CHECK(std::stod(buf) == doctest::Approx(2.16e9));

    REQUIRE(ch5gr_config_set(cfg, "scenario", "duration_s", "2.5") == CH5GR_OK);
    REQUIRE(ch5gr_config_get(cfg, "scenario", "duration_s", buf, sizeof(buf)) == CH5GR_OK);
    CHECK(std::string(buf) == "2.5");

    // Unknown keys and invalid values are usage errors with messages.
    CHECK(ch5gr_config_set(cfg, "scenario", "not_a_key", "1") == CH5GR_ERR_USAGE);
    CHECK(std::strlen(ch5gr_last_error()) > 0);
    CHECK(ch5gr_config_set(cfg, "scenario", "bandwidth_hz", "-5") == CH5GR_ERR_USAGE);
    CHECK(ch5gr_config_get(cfg, "scenario", "no_such", buf, sizeof(buf)) == CH5GR_ERR_USAGE);

    // A failed set leaves the previous value intact.
    REQUIRE(ch5gr_config_get(cfg, "scenario", "duration_s", buf, sizeof(buf)) == CH5GR_OK);
    CHECK(std::string(buf) == "2.5");

    uint64_t h1 = 0, h2 = 0;
    REQUIRE(ch5gr_config_hash(cfg, &h1) == CH5GR_OK);
    REQUIRE(ch5gr_config_set(cfg, "scenario", "duration_s", "3.0") == CH5GR_OK);
    REQUIRE(ch5gr_config_hash(cfg, &h2) == CH5GR_OK);
    CHECK(h1 != h2);

    ch5gr_config_free(cfg);
}

TEST_CASE("null arguments are usage errors, not crashes")
{
    CHECK(ch5gr_config_new(nullptr) == CH5GR_ERR_USAGE);
    CHECK(ch5gr_config_load(nullptr, nullptr) == CH5GR_ERR_USAGE);
    CHECK(ch5gr_simulate(nullptr, 0, "x") == CH5GR_ERR_USAGE);
    CHECK(ch5gr_analyze(nullptr, "rmsds", nullptr, "x") == CH5GR_ERR_USAGE);
    CHECK(ch5gr_trace_open(nullptr, nullptr) == CH5GR_ERR_USAGE);
    ch5gr_config_free(nullptr); // must be a no-op
    ch5gr_trace_free(nullptr);
}

TEST_CASE("config load failure modes map to the documented codes")
{
    ch5gr_config *cfg = nullptr;
    CHECK(ch5gr_config_load("/no/such/file.ini", &cfg) == CH5GR_ERR_IO);

    const auto dir = fresh_dir("cfg_errors");
    const auto bad = dir / "bad.ini";
    std::ofstream(bad) << "[scenario]\nduration_s = 1\n"; // missing profile
    CHECK(ch5gr_config_load(bad.string().c_str(), &cfg) == CH5GR_ERR_USAGE);
    CHECK(std::string(ch5gr_last_error()).find("[scenario] profile") != std::string::npos);
}

TEST_CASE("simulate/trace round trip through the C surface")
{
    const auto dir = fresh_dir("capi_sim");
    ch5gr_config *cfg = nullptr;
    REQUIRE(ch5gr_config_new(&cfg) == CH5GR_OK);
    REQUIRE(ch5gr_config_set(cfg, "scenario", "duration_s", "1") == CH5GR_OK);
    REQUIRE(ch5gr_config_set(cfg, "clusters", "rays_per_cluster", "4") == CH5GR_OK);

    REQUIRE(ch5gr_simulate(cfg, 99, dir.string().c_str()) == CH5GR_OK);
    const auto trace_path = dir / "trace.cir";
    REQUIRE(std::filesystem::exists(trace_path));

    ch5gr_trace *trace = nullptr;
    REQUIRE(ch5gr_trace_open(trace_path.string().c_str(), &trace) == CH5GR_OK);
    uint32_t t = 0, n = 0, u = 0, s = 0, domain = 9;
    REQUIRE(ch5gr_trace_dims(trace, &t, &n, &u, &s, &domain) == CH5GR_OK);
    CHECK(t == 16);
    CHECK(n == 513);
    CHECK(u == 1);
    CHECK(s == 1);
    CHECK(domain == 1); // frequency-domain default

    double dt = 0.0, step = 0.0;
    REQUIRE(ch5gr_trace_info(trace, &dt, &step) == CH5GR_OK);
    CHECK(dt == doctest::Approx(1.0 / 16.0));
    CHECK(step == doctest::Approx(10e6 / 513.0));

    float re = 0.0f, im = 0.0f;
    REQUIRE(ch5gr_trace_coeff(trace, 0, 0, 0, 0, &re, &im) == CH5GR_OK);
    CHECK((re != 0.0f || im != 0.0f));
    CHECK(ch5gr_trace_coeff(trace, t, 0, 0, 0, &re, &im) == CH5GR_ERR_USAGE);

    // Render the same config in memory: identical dimensions.
    ch5gr_trace *rendered = nullptr;
    REQUIRE(ch5gr_trace_render(cfg, 99, &rendered) == CH5GR_OK);
    uint32_t t2 = 0;
    REQUIRE(ch5gr_trace_dims(rendered, &t2, nullptr, nullptr, nullptr, nullptr) == CH5GR_OK);
    CHECK(t2 == t);

    const auto copy_path = dir / "copy.cir";
    REQUIRE(ch5gr_trace_save(trace, copy_path.string().c_str()) == CH5GR_OK);
    std::ifstream f1(trace_path, std::ios::binary), f2(copy_path, std::ios::binary);
    const std::string s1((std::istreambuf_iterator<char>(f1)),
                         std::istreambuf_iterator<char>());
    const std::string s2((std::istreambuf_iterator<char>(f2)),
                         std::istreambuf_iterator<char>());
    CHECK(s1 == s2);

    const auto csv_path = dir / "trace.csv";
    REQUIRE(ch5gr_trace_export_csv(trace, csv_path.string().c_str()) == CH5GR_OK);
    CHECK(std::filesystem::exists(csv_path));

    ch5gr_trace_free(trace);
    ch5gr_trace_free(rendered);
    ch5gr_config_free(cfg);
}

TEST_CASE("analyze and validate through the C surface")
{
    const auto dir = fresh_dir("capi_flow");
    ch5gr_config *cfg = nullptr;
    REQUIRE(ch5gr_config_new(&cfg) == CH5GR_OK);
    REQUIRE(ch5gr_config_set(cfg, "scenario", "duration_s", "2") == CH5GR_OK);
    REQUIRE(ch5gr_config_set(cfg, "clusters", "rays_per_cluster", "4") == CH5GR_OK);
    REQUIRE(ch5gr_config_set(cfg, "validate", "stationarity_links", "1") == CH5GR_OK);
    REQUIRE(ch5gr_config_set(cfg, "validate", "stationarity_duration_s", "4") == CH5GR_OK);

    REQUIRE(ch5gr_simulate(cfg, 5, dir.string().c_str()) == CH5GR_OK);

    const auto a_out = dir / "analysis";
    REQUIRE(ch5gr_analyze((dir / "trace.cir").string().c_str(), "rmsds", cfg,
                          a_out.string().c_str()) == CH5GR_OK);
    CHECK(std::filesystem::exists(a_out / "rmsds.csv"));

    // Unknown metric: usage; garbage input: format.
    CHECK(ch5gr_analyze((dir / "trace.cir").string().c_str(), "nonsense", cfg,
                        a_out.string().c_str()) == CH5GR_ERR_USAGE);
    const auto garbage = dir / "garbage.bin";
    std::ofstream(garbage) << "not a trace";
    CHECK(ch5gr_analyze(garbage.string().c_str(), "rmsds", cfg,
                        a_out.string().c_str()) == CH5GR_ERR_FORMAT);

    const auto v_out = dir / "validation";
    CHECK(ch5gr_validate(cfg, 2026, nullptr, v_out.string().c_str()) == CH5GR_OK);
    CHECK(std::filesystem::exists(v_out / "report.csv"));

    ch5gr_config_free(cfg);
}

TEST_CASE("cdl list and export")
{
    char buf[256];
    REQUIRE(ch5gr_cdl_list(buf, sizeof(buf)) == CH5GR_OK);
    const std::string names(buf);
    CHECK(names.find("5G-R-Rural") != std::string::npos);
    CHECK(names.find("RMa-CDL-D") != std::string::npos);

    char tiny[4];
    CHECK(ch5gr_cdl_list(tiny, sizeof(tiny)) == CH5GR_ERR_USAGE);

    const auto dir = fresh_dir("capi_cdl");
    const auto path = dir / "rural.csv";
    REQUIRE(ch5gr_cdl_export("5G-R-Rural", path.string().c_str()) == CH5GR_OK);
    CHECK(std::filesystem::exists(path));
    CHECK(ch5gr_cdl_export("NoSuchTable", path.string().c_str()) == CH5GR_ERR_USAGE);
}
