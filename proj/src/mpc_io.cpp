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

#include "ch5gr/mpc_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ch5gr
{
    void save_mpc_csv(std::span<const MpcEntry> mpcs, const std::filesystem::path &path)
    {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write MPC file: " + tmp.string());
            out << "snapshot,amp_real,amp_imag,delay_s,aoa_rad,eoa_rad,cluster_label,"
                   "track_id\n";
            out.precision(12);
            for (const auto &m : mpcs)
            {
                out << m.snapshot << ',' << m.amplitude.real() << ','
                    << m.amplitude.imag() << ',' << m.delay_s << ',' << m.aoa_rad << ','
                    << m.eoa_rad << ',';
                if (m.cluster_label >= 0)
                    out << m.cluster_label;
                out << ',';
                if (m.track_id >= 0)
                    out << m.track_id;
                out << '\n';
            }
            if (!out)
                throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    std::vector<MpcEntry> load_mpc_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open MPC file: " + path.string());
        std::string line;
        if (!std::getline(in, line) || line.find("snapshot") == std::string::npos ||
            line.find("delay_s") == std::string::npos)
            throw std::runtime_error("MPC file missing header: " + path.string());

        std::vector<MpcEntry> out;
        std::size_t lineno = 1;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.empty())
                continue;
            std::istringstream ss(line);
            std::string field;
            MpcEntry m;
            try
            {
                std::getline(ss, field, ',');
                m.snapshot = std::stoi(field);
                std::getline(ss, field, ',');
                const double re = std::stod(field);
                std::getline(ss, field, ',');
                const double im = std::stod(field);
                m.amplitude = {re, im};
                std::getline(ss, field, ',');
                m.delay_s = std::stod(field);
                std::getline(ss, field, ',');
                m.aoa_rad = std::stod(field);
                std::getline(ss, field, ',');
                m.eoa_rad = std::stod(field);
                if (std::getline(ss, field, ',') && !field.empty())
                    m.cluster_label = std::stoi(field);
                if (std::getline(ss, field, ',') && !field.empty())
                    m.track_id = std::stoi(field);
            }
            catch (const std::exception &)
            {
                throw std::runtime_error("MPC file " + path.string() + ": bad row at line " +
                                         std::to_string(lineno));
            }
            out.push_back(m);
        }
        return out;
    }

    std::vector<MpcEntry> mpc_records_from_clusters(const ClusterSet &set, int snapshot,
                                                    double amplitude_scale)
    {
        std::vector<MpcEntry> out;
        for (const auto &c : set.clusters)
        {
            if (!c.alive || c.specular_only || c.rays.empty())
                continue;
            const double amp = amplitude_scale *
                               std::sqrt(c.power_lin / static_cast<double>(c.rays.size()));
            for (const auto &ray : c.rays)
            {
                MpcEntry m;
                m.snapshot = snapshot;
                m.amplitude = {amp, 0.0};
                m.delay_s = c.delay_s;
                m.aoa_rad = ray.aoa_az;
                m.eoa_rad = ray.eoa_zen;
                m.cluster_label = static_cast<int>(c.id);
                out.push_back(m);
            }
        }
        return out;
    }

    std::vector<std::vector<MpcEntry>> group_by_snapshot(std::span<const MpcEntry> mpcs)
    {
        int max_snap = -1;
        for (const auto &m : mpcs)
        {
            if (m.snapshot < 0)
                throw std::invalid_argument("group_by_snapshot: negative snapshot index");
            max_snap = std::max(max_snap, m.snapshot);
        }
        std::vector<std::vector<MpcEntry>> out(static_cast<std::size_t>(max_snap + 1));
        for (const auto &m : mpcs)
            out[static_cast<std::size_t>(m.snapshot)].push_back(m);
        return out;
    }

} // namespace ch5gr
