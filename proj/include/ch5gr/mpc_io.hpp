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

#ifndef ch5gr_mpc_io_H
#define ch5gr_mpc_io_H

#include "ch5gr/analysis.hpp"

#include <filesystem>
#include <vector>

namespace ch5gr
{
    // CSV schema: snapshot,amp_real,amp_imag,delay_s,aoa_rad,eoa_rad with
    // optional trailing cluster_label and track_id columns.
    void save_mpc_csv(std::span<const MpcEntry> mpcs, const std::filesystem::path &path);
    std::vector<MpcEntry> load_mpc_csv(const std::filesystem::path &path);

    // Groups records by snapshot index (missing snapshots stay empty).
    std::vector<std::vector<MpcEntry>> group_by_snapshot(std::span<const MpcEntry> mpcs);

    // Per-ray records of a live cluster set (amplitude scale * sqrt(P_n/M),
    // cluster id as the label). Specular-only clusters contribute nothing.
    std::vector<MpcEntry> mpc_records_from_clusters(const ClusterSet &set, int snapshot,
                                                    double amplitude_scale = 1.0);

} // namespace ch5gr

#endif
