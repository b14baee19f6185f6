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

#include "ch5gr/cdl.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ch5gr
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        double zenith_from_table(double eoa_deg, EoaConvention conv)
        {
            const double rad = eoa_deg * pi / 180.0;
            return conv == EoaConvention::Zenith ? rad : pi / 2.0 - rad;
        }
    }

    void CdlTable::validate() const
    {
        if (rows.empty())
            throw std::invalid_argument("CdlTable: empty table");
        if (rows.front().delay_ns != 0.0)
            throw std::invalid_argument("CdlTable: first row must have zero delay");
        for (const auto &r : rows)
        {
            if (r.delay_ns < 0.0)
                throw std::invalid_argument("CdlTable: negative delay");
            if (r.power_db > 0.0)
                throw std::invalid_argument("CdlTable: power above 0 dB relative");
        }
    }

    double CdlTable::implied_k_factor() const
    {
        double los = 0.0, nlos = 0.0;
        for (const auto &r : rows)
        {
            const double p = std::pow(10.0, r.power_db / 10.0);
            (r.los ? los : nlos) += p;
        }
        if (nlos <= 0.0)
            throw std::domain_error("CdlTable: no NLOS power, K-factor undefined");
        return los / nlos;
    }

    std::vector<CdlTable> builtin_tables()
    {
        CdlTable rural;
        rural.name = "5G-R-Rural";
        rural.rows = {
            {0.0, -0.5, 219.6, 65.5, true},
            {70.787, -23.7, 153.5, 70.9, false},
            {180.345, -20.9, 166.6, 66.8, false},
            {282.813, -11.4, 153.5, 65.2, false},
            {806.152, -15.1, 66.2, 64.5, false},
        };

        CdlTable rma;
        rma.name = "RMa-CDL-D";
        rma.rows = {
            {0.0, -0.2, -180.0, 81.5, true},
            {5.497, -18.8, 89.2, 86.9, false},
            {96.123, -21.0, 89.2, 86.9, false},
            {214.08, -22.8, 89.2, 86.9, false},
            {220.674, -17.9, 163.0, 79.4, false},
        };
        return {rural, rma};
    }

    const CdlTable *find_builtin(const std::string &name)
    {
        static const std::vector<CdlTable> tables = builtin_tables();
        for (const auto &t : tables)
            if (t.name == name)
                return &t;
        return nullptr;
    }

    CdlTable load_cdl_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open CDL file: " + path.string());
        std::string line;
        if (!std::getline(in, line))
            throw std::runtime_error("CDL file is empty: " + path.string());
        if (line.find("delay_ns") == std::string::npos)
            throw std::runtime_error("CDL file missing header row: " + path.string());

        CdlTable t;
        t.name = path.stem().string();
        std::size_t lineno = 1;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.empty())
                continue;
            std::istringstream ss(line);
            std::string field;
            CdlRow row;
            try
            {
                std::getline(ss, field, ','); // row number, ignored
                std::getline(ss, field, ',');
                row.delay_ns = std::stod(field);
                std::getline(ss, field, ',');
                row.power_db = std::stod(field);
                std::getline(ss, field, ',');
                row.aoa_deg = std::stod(field);
                std::getline(ss, field, ',');
                row.eoa_deg = std::stod(field);
                std::getline(ss, field, ',');
                row.los = std::stoi(field) != 0;
            }
            catch (const std::exception &)
            {
                throw std::runtime_error("CDL file " + path.string() + ": bad row at line " +
                                         std::to_string(lineno));
            }
            t.rows.push_back(row);
        }
        t.validate();
        return t;
    }

    void save_cdl_csv(const CdlTable &table, const std::filesystem::path &path)
    {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write CDL file: " + tmp.string());
            out << "no.,delay_ns,power_db,aoa_deg,eoa_deg,los_flag\n";
            for (std::size_t i = 0; i < table.rows.size(); ++i)
            {
                const auto &r = table.rows[i];
                out << (i + 1) << ',' << r.delay_ns << ',' << r.power_db << ','
                    << r.aoa_deg << ',' << r.eoa_deg << ',' << (r.los ? 1 : 0) << '\n';
            }
            if (!out)
                throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    CdlTable scale_normalized_delays(const CdlTable &table, double factor)
    {
        if (factor <= 0.0)
            throw std::invalid_argument("scale_normalized_delays: factor must be > 0");
        CdlTable out = table;
        for (auto &r : out.rows)
            r.delay_ns *= factor;
        return out;
    }

    CdlInstance instantiate_cdl(const CdlTable &table, const ScenarioConfig &scenario,
                                int rays_per_cluster, Rng &rng, EoaConvention convention)
    {
        table.validate();
        if (rays_per_cluster < 1)
            throw std::invalid_argument("instantiate_cdl: need at least one ray");

        const LosDirections los = los_directions(scenario.bs_position, scenario.ut_position);
        const double base_delay =
            (scenario.ut_position - scenario.bs_position).norm() / speed_of_light_mps;

        double total = 0.0;
        for (const auto &r : table.rows)
            total += std::pow(10.0, r.power_db / 10.0);

        CdlInstance inst;
        inst.k_factor_linear = table.implied_k_factor();
        ClusterSet &set = inst.set;
        set.timestamp_s = 0.0;
        set.lsps.k_db = 10.0 * std::log10(inst.k_factor_linear);

        const double d2r = pi / 180.0;
        XprModel no_xpr{300.0, 0.0}; // effectively co-polar rows
        for (const auto &r : table.rows)
        {
            ClusterState c;
            c.id = set.next_id++;
            c.delay_abs_s = base_delay + r.delay_ns * 1e-9;
            c.delay_s = c.delay_abs_s - base_delay;
            c.power_lin = std::pow(10.0, r.power_db / 10.0) / total;
            c.aoa_az = SphericalAngles::wrap_azimuth(r.aoa_deg * d2r);
            c.eoa_zen = zenith_from_table(r.eoa_deg, convention);
            c.aod_az = los.departure.azimuth();
            c.eod_zen = los.departure.zenith();
            c.shadow_db = 0.0;
            c.is_los = r.los;
            c.specular_only = r.los; // published row power = the specular path
            ClusterMeanAngles mean{c.aod_az, c.eod_zen, c.aoa_az, c.eoa_zen};
            c.rays = spawn_rays(mean, table.c_asa_deg * d2r, table.c_esa_deg * d2r,
                                table.c_asa_deg * d2r, table.c_esa_deg * d2r,
                                rays_per_cluster, no_xpr, rng);
            set.clusters.push_back(std::move(c));
        }
        return inst;
    }

} // namespace ch5gr
