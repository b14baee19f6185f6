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

#include "ch5gr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ch5gr
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto a = s.find_first_not_of(" \t\r\n");
            if (a == std::string::npos)
                return "";
            const auto b = s.find_last_not_of(" \t\r\n");
            return s.substr(a, b - a + 1);
        }

        std::string key_name(const std::string &section, const std::string &key)
        {
            return "[" + section + "] " + key;
        }

        double parse_double(const std::string &section, const std::string &key,
                            const std::string &value)
        {
            try
            {
                std::size_t pos = 0;
                const double v = std::stod(value, &pos);
                if (trim(value.substr(pos)).empty())
                    return v;
            }
            catch (const std::exception &)
            {
            }
            throw ConfigError("invalid number for " + key_name(section, key) + ": '" +
                              value + "'");
        }

        int parse_int(const std::string &section, const std::string &key,
                      const std::string &value)
        {
            try
            {
                std::size_t pos = 0;
                const int v = std::stoi(value, &pos);
                if (trim(value.substr(pos)).empty())
                    return v;
            }
            catch (const std::exception &)
            {
            }
            throw ConfigError("invalid integer for " + key_name(section, key) + ": '" +
                              value + "'");
        }

        bool parse_bool(const std::string &section, const std::string &key,
                        const std::string &value)
        {
            std::string v = value;
            std::transform(v.begin(), v.end(), v.begin(), ::tolower);
            if (v == "true" || v == "1" || v == "yes" || v == "on")
                return true;
            if (v == "false" || v == "0" || v == "no" || v == "off")
                return false;
            throw ConfigError("invalid boolean for " + key_name(section, key) + ": '" +
                              value + "'");
        }

        Vec3 parse_vec3(const std::string &section, const std::string &key,
                        const std::string &value)
        {
            std::istringstream ss(value);
            Vec3 v;
            if (ss >> v.x >> v.y >> v.z)
            {
                std::string rest;
                if (!(ss >> rest))
                    return v;
            }
            throw ConfigError("expected three numbers for " + key_name(section, key) +
                              ": '" + value + "'");
        }

        std::string fmt(double v)
        {
            std::ostringstream ss;
            ss.precision(17);
            ss << v;
            return ss.str();
        }

        std::string fmt(const Vec3 &v)
        {
            return fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z);
        }

        PatternKind parse_pattern(const std::string &section, const std::string &key,
                                  const std::string &value)
        {
            if (value == "isotropic")
                return PatternKind::Isotropic;
            if (value == "omni-vertical")
                return PatternKind::OmniVertical;
            if (value == "directional-panel")
                return PatternKind::DirectionalPanel;
            throw ConfigError("unknown antenna pattern for " + key_name(section, key) +
                              ": '" + value + "'");
        }

        std::string pattern_name(PatternKind k)
        {
            switch (k)
            {
            case PatternKind::Isotropic:
                return "isotropic";
            case PatternKind::OmniVertical:
                return "omni-vertical";
            case PatternKind::DirectionalPanel:
                return "directional-panel";
            }
            return "isotropic";
        }
    }

    IniDoc IniDoc::parse_string(const std::string &text)
    {
        IniDoc doc;
        std::istringstream in(text);
        std::string line, section;
        std::size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto comment = line.find_first_of("#;");
            if (comment != std::string::npos)
                line = line.substr(0, comment);
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[')
            {
                if (line.back() != ']' || line.size() < 3)
                    throw ConfigError("malformed section header at line " +
                                      std::to_string(lineno));
                section = trim(line.substr(1, line.size() - 2));
                doc.sections_[section]; // materialize even if empty
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected key = value at line " + std::to_string(lineno));
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("empty key at line " + std::to_string(lineno));
            if (section.empty())
                throw ConfigError("key outside any [section] at line " +
                                  std::to_string(lineno));
            doc.sections_[section][key] = value;
        }
        return doc;
    }

    IniDoc IniDoc::parse_file(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config file: " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_string(ss.str());
    }

    std::optional<std::string> IniDoc::get(const std::string &section,
                                           const std::string &key) const
    {
        const auto s = sections_.find(section);
        if (s == sections_.end())
            return std::nullopt;
        const auto k = s->second.find(key);
        if (k == s->second.end())
            return std::nullopt;
        return k->second;
    }

    void IniDoc::set(const std::string &section, const std::string &key,
                     const std::string &value)
    {
        sections_[section][key] = value;
    }

    std::string IniDoc::serialize() const
    {
        std::ostringstream out;
        for (const auto &[section, keys] : sections_)
        {
            out << '[' << section << "]\n";
            for (const auto &[k, v] : keys)
                out << k << " = " << v << '\n';
            out << '\n';
        }
        return out.str();
    }

    void AnalysisConfig::validate() const
    {
        if (tpcc_threshold <= 0.0 || tpcc_threshold > 1.0)
            throw ConfigError("[analysis] tpcc_threshold must be in (0, 1]");
        if (mcd_xi < 0.0)
            throw ConfigError("[analysis] mcd_xi must be >= 0");
        if (track_threshold < 0.0)
            throw ConfigError("[analysis] track_threshold must be >= 0");
        if (window_wavelengths <= 0.0)
            throw ConfigError("[analysis] window_wavelengths must be > 0");
        if (kpm_k_max < 1)
            throw ConfigError("[analysis] kpm_k_max must be >= 1");
    }

    void ValidateConfig::validate() const
    {
        if (n_links < 2)
            throw ConfigError("[validate] n_links must be >= 2");
        if (drops_per_link < 1)
            throw ConfigError("[validate] drops_per_link must be >= 1");
        if (calibration_drops < 100)
            throw ConfigError("[validate] calibration_drops must be >= 100");
        if (tolerance_rel <= 0.0)
            throw ConfigError("[validate] tolerance_rel must be > 0");
        if (stationarity_links < 0)
            throw ConfigError("[validate] stationarity_links must be >= 0");
        if (stationarity_duration_s <= 0.0)
            throw ConfigError("[validate] stationarity_duration_s must be > 0");
        if (closure_shadow_db < 0.0)
            throw ConfigError("[validate] closure_shadow_db must be >= 0");
    }

    void SimConfig::validate() const
    {
        scenario.validate();
        clusters.validate();
        evolution.validate();
        analysis.validate();
        validate_cfg.validate();
        const double snapshot_dt = 1.0 / scenario.snapshot_rate_hz;
        if (evolution.dt_bd_s < snapshot_dt - 1e-12)
            throw ConfigError("[evolution] dt_bd_s must be >= the snapshot interval");
        if (!find_builtin(cdl.table) && !std::filesystem::exists(cdl.table))
            throw ConfigError("[cdl] table names no builtin table or readable file: " +
                              cdl.table);
    }

    namespace
    {
        void apply_scenario_key(SimConfig &cfg, const std::string &key,
                                const std::string &value)
        {
            const std::string sec = "scenario";
            ScenarioConfig &s = cfg.scenario;
            if (key == "profile")
                return; // handled up front
            if (key == "source")
            {
                if (value == "lsp")
                    cfg.source = ClusterSource::Lsp;
                else if (value == "cdl")
                    cfg.source = ClusterSource::Cdl;
                else
                    throw ConfigError("invalid value for [scenario] source: '" + value +
                                      "' (use lsp or cdl)");
            }
            else if (key == "propagation")
            {
                if (value == "LOS")
                    s.propagation = Propagation::Los;
                else if (value == "NLOS")
                    s.propagation = Propagation::Nlos;
                else
                    throw ConfigError("invalid value for [scenario] propagation: '" + value +
                                      "' (use LOS or NLOS)");
            }
            else if (key == "carrier_frequency_hz")
                s.carrier_hz = parse_double(sec, key, value);
            else if (key == "bandwidth_hz")
                s.bandwidth_hz = parse_double(sec, key, value);
            else if (key == "n_frequency_points")
                s.n_freq_points = parse_int(sec, key, value);
            else if (key == "bs_position")
                s.bs_position = parse_vec3(sec, key, value);
            else if (key == "ut_position")
                s.ut_position = parse_vec3(sec, key, value);
            else if (key == "ut_speed_mps")
                s.ut_speed_mps = parse_double(sec, key, value);
            else if (key == "ut_heading_rad")
                s.ut_heading_rad = parse_double(sec, key, value);
            else if (key == "duration_s")
                s.duration_s = parse_double(sec, key, value);
            else if (key == "snapshot_rate_hz")
                s.snapshot_rate_hz = parse_double(sec, key, value);
            else if (key == "tx_pattern")
                s.tx_antenna.kind = parse_pattern(sec, key, value);
            else if (key == "tx_gain_dbi")
                s.tx_antenna.gain_dbi = parse_double(sec, key, value);
            else if (key == "tx_beamwidth_3db_deg")
                s.tx_antenna.beamwidth_3db_deg = parse_double(sec, key, value);
            else if (key == "tx_front_back_db")
                s.tx_antenna.front_back_db = parse_double(sec, key, value);
            else if (key == "tx_slant_deg")
                s.tx_antenna.slant_deg = parse_double(sec, key, value);
            else if (key == "tx_elements")
                s.tx_antenna.n_elements = parse_int(sec, key, value);
            else if (key == "tx_array_radius_m")
                s.tx_antenna.array_radius_m = parse_double(sec, key, value);
            else if (key == "rx_pattern")
                s.rx_antenna.kind = parse_pattern(sec, key, value);
            else if (key == "rx_gain_dbi")
                s.rx_antenna.gain_dbi = parse_double(sec, key, value);
            else if (key == "rx_elements")
                s.rx_antenna.n_elements = parse_int(sec, key, value);
            else if (key == "rx_array_radius_m")
                s.rx_antenna.array_radius_m = parse_double(sec, key, value);
            else if (key == "pl_intercept_db")
                s.path_loss.intercept_db = parse_double(sec, key, value);
            else if (key == "pl_exponent")
                s.path_loss.exponent = parse_double(sec, key, value);
            else if (key == "pl_ref_distance_m")
                s.path_loss.ref_distance_m = parse_double(sec, key, value);
            else if (key == "pl_sf_sigma_db")
                s.path_loss.sf_sigma_db = parse_double(sec, key, value);
            else if (key == "near_field_cutoff_m")
                s.near_field_cutoff_m = parse_double(sec, key, value);
            else if (key == "apply_path_loss")
                s.apply_path_loss = parse_bool(sec, key, value);
            else
                throw ConfigError("unknown key " + key_name(sec, key));
        }

        void apply_lsp_key(SimConfig &cfg, const std::string &key, const std::string &value)
        {
            const std::string sec = "lsp";
            LspDistributions &l = cfg.scenario.lsp;
            if (key == "ds_log_mu")
                l.ds_ns.log_mu = parse_double(sec, key, value);
            else if (key == "ds_log_sigma")
                l.ds_ns.log_sigma = parse_double(sec, key, value);
            else if (key == "asa_log_mu")
                l.asa_deg.log_mu = parse_double(sec, key, value);
            else if (key == "asa_log_sigma")
                l.asa_deg.log_sigma = parse_double(sec, key, value);
            else if (key == "esa_log_mu")
                l.esa_deg.log_mu = parse_double(sec, key, value);
            else if (key == "esa_log_sigma")
                l.esa_deg.log_sigma = parse_double(sec, key, value);
            else if (key == "k_mu_db")
                l.k_db.mu = parse_double(sec, key, value);
            else if (key == "k_sigma_db")
                l.k_db.sigma = parse_double(sec, key, value);
            else if (key == "sf_sigma_db")
                l.sf_db.sigma = parse_double(sec, key, value);
            else if (key == "lifetime_log_mu")
                l.lifetime_s.log_mu = parse_double(sec, key, value);
            else if (key == "lifetime_log_sigma")
                l.lifetime_s.log_sigma = parse_double(sec, key, value);
            else if (key == "stationarity_log_mu")
                l.stationarity_m.log_mu = parse_double(sec, key, value);
            else if (key == "stationarity_log_sigma")
                l.stationarity_m.log_sigma = parse_double(sec, key, value);
            else
                throw ConfigError("unknown key " + key_name(sec, key));
        }

        void apply_clusters_key(SimConfig &cfg, const std::string &key,
                                const std::string &value)
        {
            const std::string sec = "clusters";
            ClusterGenConfig &c = cfg.clusters;
            if (key == "n_clusters")
                c.n_clusters = parse_int(sec, key, value);
            else if (key == "rays_per_cluster")
                c.rays_per_cluster = parse_int(sec, key, value);
            else if (key == "r_tau")
                c.r_tau = parse_double(sec, key, value);
            else if (key == "per_cluster_shadow_db")
                c.per_cluster_shadow_db = parse_double(sec, key, value);
            else if (key == "xpr_mu_db")
                c.xpr.mu_db = parse_double(sec, key, value);
            else if (key == "xpr_sigma_db")
                c.xpr.sigma_db = parse_double(sec, key, value);
            else if (key == "c_asa_deg")
                c.c_asa_deg = parse_double(sec, key, value);
            else if (key == "c_esa_deg")
                c.c_esa_deg = parse_double(sec, key, value);
            else if (key == "c_asd_deg")
                c.c_asd_deg = parse_double(sec, key, value);
            else if (key == "c_esd_deg")
                c.c_esd_deg = parse_double(sec, key, value);
            else if (key == "asd_deg")
                c.asd_deg = parse_double(sec, key, value);
            else if (key == "esd_deg")
                c.esd_deg = parse_double(sec, key, value);
            else
                throw ConfigError("unknown key " + key_name(sec, key));
        }

        void apply_evolution_key(SimConfig &cfg, const std::string &key,
                                 const std::string &value)
        {
            const std::string sec = "evolution";
            EvolutionParams &e = cfg.evolution;
            if (key == "driver")
            {
                if (value == "markov")
                    e.driver = BdDriver::Markov;
                else if (value == "poisson")
                    e.driver = BdDriver::Poisson;
                else
                    throw ConfigError("invalid value for [evolution] driver: '" + value +
                                      "' (use markov or poisson)");
            }
            else if (key == "dt_bd_s")
                e.dt_bd_s = parse_double(sec, key, value);
            else if (key == "lambda_g")
                e.lambda_g = parse_double(sec, key, value);
            else if (key == "lambda_r")
                e.lambda_r = parse_double(sec, key, value);
            else if (key == "d_c_m")
                e.d_c_m = parse_double(sec, key, value);
            else if (key == "markov_matrix")
            {
                std::istringstream ss(value);
                std::array<std::array<double, 4>, 4> m{};
                for (auto &row : m)
                    for (auto &x : row)
                        if (!(ss >> x))
                            throw ConfigError(
                                "expected 16 numbers for [evolution] markov_matrix");
                std::string rest;
                if (ss >> rest)
                    throw ConfigError("expected 16 numbers for [evolution] markov_matrix");
                try
                {
                    e.transition = MarkovMatrix(m);
                }
                catch (const std::exception &ex)
                {
                    throw ConfigError(std::string("[evolution] markov_matrix: ") + ex.what());
                }
            }
            else if (key == "rotation_matrix")
            {
                std::istringstream ss(value);
                std::array<std::array<double, 3>, 3> m{};
                for (auto &row : m)
                    for (auto &x : row)
                        if (!(ss >> x))
                            throw ConfigError(
                                "expected 9 numbers for [evolution] rotation_matrix");
                std::string rest;
                if (ss >> rest)
                    throw ConfigError("expected 9 numbers for [evolution] rotation_matrix");
                try
                {
                    e.rotation = RotationMatrix(m);
                }
                catch (const std::exception &ex)
                {
                    throw ConfigError(std::string("[evolution] rotation_matrix: ") +
                                      ex.what());
                }
            }
            else if (key == "lifetime_deaths")
                e.lifetime_deaths = parse_bool(sec, key, value);
            else if (key == "los_persistent")
                e.los_persistent = parse_bool(sec, key, value);
            else if (key == "tau_min_guard_s")
                e.tau_min_guard_s = parse_double(sec, key, value);
            else if (key == "sin_eps")
                e.sin_eps = parse_double(sec, key, value);
            else
                throw ConfigError("unknown key " + key_name(sec, key));
        }

        void apply_analysis_key(SimConfig &cfg, const std::string &key,
                                const std::string &value)
        {
            const std::string sec = "analysis";
            AnalysisConfig &a = cfg.analysis;
            if (key == "tpcc_threshold")
                a.tpcc_threshold = parse_double(sec, key, value);
            else if (key == "mcd_xi")
                a.mcd_xi = parse_double(sec, key, value);
            else if (key == "track_threshold")
                a.track_threshold = parse_double(sec, key, value);
            else if (key == "window_wavelengths")
                a.window_wavelengths = parse_double(sec, key, value);
            else if (key == "noise_floor_db")
                a.noise_floor_db = value == "auto"
                                       ? std::numeric_limits<double>::quiet_NaN()
                                       : parse_double(sec, key, value);
            else if (key == "kpm_k_max")
                a.kpm_k_max = parse_int(sec, key, value);
            else
                throw ConfigError("unknown key " + key_name(sec, key));
        }

        void apply_validate_key(SimConfig &cfg, const std::string &key,
                                const std::string &value)
        {
            const std::string sec = "validate";
            ValidateConfig &v = cfg.validate_cfg;
            if (key == "n_links")
                v.n_links = parse_int(sec, key, value);
            else if (key == "drops_per_link")
                v.drops_per_link = parse_int(sec, key, value);
            else if (key == "calibration_drops")
                v.calibration_drops = parse_int(sec, key, value);
            else if (key == "tolerance_rel")
                v.tolerance_rel = parse_double(sec, key, value);
            else if (key == "stationarity_links")
                v.stationarity_links = parse_int(sec, key, value);
            else if (key == "stationarity_duration_s")
                v.stationarity_duration_s = parse_double(sec, key, value);
            else if (key == "assert_stationarity")
                v.assert_stationarity = parse_bool(sec, key, value);
            else if (key == "closure_shadow_db")
                v.closure_shadow_db = parse_double(sec, key, value);
            else
                throw ConfigError("unknown key " + key_name(sec, key));
        }

        void apply_cdl_key(SimConfig &cfg, const std::string &key, const std::string &value)
        {
            const std::string sec = "cdl";
            if (key == "table")
                cfg.cdl.table = value;
            else if (key == "delay_scale")
                cfg.cdl.delay_scale = parse_double(sec, key, value);
            else if (key == "eoa_convention")
            {
                if (value == "zenith")
                    cfg.cdl.eoa_convention = EoaConvention::Zenith;
                else if (value == "horizon")
                    cfg.cdl.eoa_convention = EoaConvention::Horizon;
                else
                    throw ConfigError("invalid value for [cdl] eoa_convention: '" + value +
                                      "' (use zenith or horizon)");
            }
            else
                throw ConfigError("unknown key " + key_name(sec, key));
        }

        void apply_render_key(SimConfig &cfg, const std::string &key,
                              const std::string &value)
        {
            if (key == "domain")
            {
                if (value == "frequency")
                    cfg.render.domain = TraceDomain::Frequency;
                else if (value == "delay")
                    cfg.render.domain = TraceDomain::Delay;
                else
                    throw ConfigError("invalid value for [render] domain: '" + value +
                                      "' (use frequency or delay)");
            }
            else if (key == "overflow")
            {
                if (value == "truncate")
                    cfg.render.overflow = DelayOverflow::Truncate;
                else if (value == "wrap")
                    cfg.render.overflow = DelayOverflow::Wrap;
                else
                    throw ConfigError("invalid value for [render] overflow: '" + value +
                                      "' (use truncate or wrap)");
            }
            else
                throw ConfigError("unknown key " + key_name("render", key));
        }
    }

    SimConfig load_sim_config(const IniDoc &doc)
    {
        const auto profile = doc.get("scenario", "profile");
        if (!profile)
            throw ConfigError("missing required key: [scenario] profile "
                              "(5G-R-rural-A, 5G-R-rural-B, or custom)");

        SimConfig cfg;
        if (*profile == "5G-R-rural-A")
            cfg.scenario = scenario_preset(AreaTag::Rural5GRA);
        else if (*profile == "5G-R-rural-B")
            cfg.scenario = scenario_preset(AreaTag::Rural5GRB);
        else if (*profile == "custom")
            cfg.scenario = scenario_preset(AreaTag::Custom);
        else
            throw ConfigError("invalid value for [scenario] profile: '" + *profile + "'");

        for (const auto &[section, keys] : doc.sections())
        {
            for (const auto &[key, value] : keys)
            {
                if (section == "scenario")
                    apply_scenario_key(cfg, key, value);
                else if (section == "lsp")
                    apply_lsp_key(cfg, key, value);
                else if (section == "clusters")
                    apply_clusters_key(cfg, key, value);
                else if (section == "evolution")
                    apply_evolution_key(cfg, key, value);
                else if (section == "analysis")
                    apply_analysis_key(cfg, key, value);
                else if (section == "validate")
                    apply_validate_key(cfg, key, value);
                else if (section == "cdl")
                    apply_cdl_key(cfg, key, value);
                else if (section == "render")
                    apply_render_key(cfg, key, value);
                else
                    throw ConfigError("unknown section [" + section + "]");
            }
        }
        // Cluster lifetime is a large-scale parameter; evolution uses it.
        cfg.evolution.lifetime_s = cfg.scenario.lsp.lifetime_s;
        cfg.validate();
        return cfg;
    }

    SimConfig load_sim_config_file(const std::filesystem::path &path)
    {
        return load_sim_config(IniDoc::parse_file(path));
    }

    IniDoc to_ini(const SimConfig &cfg)
    {
        IniDoc doc;
        const ScenarioConfig &s = cfg.scenario;
        doc.set("scenario", "profile", to_string(s.area));
        doc.set("scenario", "source", cfg.source == ClusterSource::Lsp ? "lsp" : "cdl");
        doc.set("scenario", "propagation", to_string(s.propagation));
        doc.set("scenario", "carrier_frequency_hz", fmt(s.carrier_hz));
        doc.set("scenario", "bandwidth_hz", fmt(s.bandwidth_hz));
        doc.set("scenario", "n_frequency_points", std::to_string(s.n_freq_points));
        doc.set("scenario", "bs_position", fmt(s.bs_position));
        doc.set("scenario", "ut_position", fmt(s.ut_position));
        doc.set("scenario", "ut_speed_mps", fmt(s.ut_speed_mps));
        doc.set("scenario", "ut_heading_rad", fmt(s.ut_heading_rad));
        doc.set("scenario", "duration_s", fmt(s.duration_s));
        doc.set("scenario", "snapshot_rate_hz", fmt(s.snapshot_rate_hz));
        doc.set("scenario", "tx_pattern", pattern_name(s.tx_antenna.kind));
        doc.set("scenario", "tx_gain_dbi", fmt(s.tx_antenna.gain_dbi));
        doc.set("scenario", "tx_beamwidth_3db_deg", fmt(s.tx_antenna.beamwidth_3db_deg));
        doc.set("scenario", "tx_front_back_db", fmt(s.tx_antenna.front_back_db));
        doc.set("scenario", "tx_slant_deg", fmt(s.tx_antenna.slant_deg));
        doc.set("scenario", "tx_elements", std::to_string(s.tx_antenna.n_elements));
        doc.set("scenario", "tx_array_radius_m", fmt(s.tx_antenna.array_radius_m));
        doc.set("scenario", "rx_pattern", pattern_name(s.rx_antenna.kind));
        doc.set("scenario", "rx_gain_dbi", fmt(s.rx_antenna.gain_dbi));
        doc.set("scenario", "rx_elements", std::to_string(s.rx_antenna.n_elements));
        doc.set("scenario", "rx_array_radius_m", fmt(s.rx_antenna.array_radius_m));
        doc.set("scenario", "pl_intercept_db", fmt(s.path_loss.intercept_db));
        doc.set("scenario", "pl_exponent", fmt(s.path_loss.exponent));
        doc.set("scenario", "pl_ref_distance_m", fmt(s.path_loss.ref_distance_m));
        doc.set("scenario", "pl_sf_sigma_db", fmt(s.path_loss.sf_sigma_db));
        doc.set("scenario", "near_field_cutoff_m", fmt(s.near_field_cutoff_m));
        doc.set("scenario", "apply_path_loss", s.apply_path_loss ? "true" : "false");

        const LspDistributions &l = s.lsp;
        doc.set("lsp", "ds_log_mu", fmt(l.ds_ns.log_mu));
        doc.set("lsp", "ds_log_sigma", fmt(l.ds_ns.log_sigma));
        doc.set("lsp", "asa_log_mu", fmt(l.asa_deg.log_mu));
        doc.set("lsp", "asa_log_sigma", fmt(l.asa_deg.log_sigma));
        doc.set("lsp", "esa_log_mu", fmt(l.esa_deg.log_mu));
        doc.set("lsp", "esa_log_sigma", fmt(l.esa_deg.log_sigma));
        doc.set("lsp", "k_mu_db", fmt(l.k_db.mu));
        doc.set("lsp", "k_sigma_db", fmt(l.k_db.sigma));
        doc.set("lsp", "sf_sigma_db", fmt(l.sf_db.sigma));
        doc.set("lsp", "lifetime_log_mu", fmt(l.lifetime_s.log_mu));
        doc.set("lsp", "lifetime_log_sigma", fmt(l.lifetime_s.log_sigma));
        doc.set("lsp", "stationarity_log_mu", fmt(l.stationarity_m.log_mu));
        doc.set("lsp", "stationarity_log_sigma", fmt(l.stationarity_m.log_sigma));

        const ClusterGenConfig &c = cfg.clusters;
        doc.set("clusters", "n_clusters", std::to_string(c.n_clusters));
        doc.set("clusters", "rays_per_cluster", std::to_string(c.rays_per_cluster));
        doc.set("clusters", "r_tau", fmt(c.r_tau));
        doc.set("clusters", "per_cluster_shadow_db", fmt(c.per_cluster_shadow_db));
        doc.set("clusters", "xpr_mu_db", fmt(c.xpr.mu_db));
        doc.set("clusters", "xpr_sigma_db", fmt(c.xpr.sigma_db));
        doc.set("clusters", "c_asa_deg", fmt(c.c_asa_deg));
        doc.set("clusters", "c_esa_deg", fmt(c.c_esa_deg));
        doc.set("clusters", "c_asd_deg", fmt(c.c_asd_deg));
        doc.set("clusters", "c_esd_deg", fmt(c.c_esd_deg));
        doc.set("clusters", "asd_deg", fmt(c.asd_deg));
        doc.set("clusters", "esd_deg", fmt(c.esd_deg));

        const EvolutionParams &e = cfg.evolution;
        doc.set("evolution", "driver", e.driver == BdDriver::Markov ? "markov" : "poisson");
        doc.set("evolution", "dt_bd_s", fmt(e.dt_bd_s));
        doc.set("evolution", "lambda_g", fmt(e.lambda_g));
        doc.set("evolution", "lambda_r", fmt(e.lambda_r));
        doc.set("evolution", "d_c_m", fmt(e.d_c_m));
        std::ostringstream mm;
        for (int r = 0; r < 4; ++r)
            for (int col = 0; col < 4; ++col)
                mm << (r + col ? " " : "") << fmt(e.transition.at(r, col));
        doc.set("evolution", "markov_matrix", mm.str());
        std::ostringstream rot;
        for (int r = 0; r < 3; ++r)
            for (int col = 0; col < 3; ++col)
                rot << (r + col ? " " : "") << fmt(e.rotation.at(r, col));
        doc.set("evolution", "rotation_matrix", rot.str());
        doc.set("evolution", "lifetime_deaths", e.lifetime_deaths ? "true" : "false");
        doc.set("evolution", "los_persistent", e.los_persistent ? "true" : "false");
        doc.set("evolution", "tau_min_guard_s", fmt(e.tau_min_guard_s));
        doc.set("evolution", "sin_eps", fmt(e.sin_eps));

        const AnalysisConfig &a = cfg.analysis;
        doc.set("analysis", "tpcc_threshold", fmt(a.tpcc_threshold));
        doc.set("analysis", "mcd_xi", fmt(a.mcd_xi));
        doc.set("analysis", "track_threshold", fmt(a.track_threshold));
        doc.set("analysis", "window_wavelengths", fmt(a.window_wavelengths));
        doc.set("analysis", "noise_floor_db",
                std::isnan(a.noise_floor_db) ? "auto" : fmt(a.noise_floor_db));
        doc.set("analysis", "kpm_k_max", std::to_string(a.kpm_k_max));

        const ValidateConfig &v = cfg.validate_cfg;
        doc.set("validate", "n_links", std::to_string(v.n_links));
        doc.set("validate", "drops_per_link", std::to_string(v.drops_per_link));
        doc.set("validate", "calibration_drops", std::to_string(v.calibration_drops));
        doc.set("validate", "tolerance_rel", fmt(v.tolerance_rel));
        doc.set("validate", "stationarity_links", std::to_string(v.stationarity_links));
        doc.set("validate", "stationarity_duration_s", fmt(v.stationarity_duration_s));
        doc.set("validate", "assert_stationarity", v.assert_stationarity ? "true" : "false");
        doc.set("validate", "closure_shadow_db", fmt(v.closure_shadow_db));

        doc.set("cdl", "table", cfg.cdl.table);
        doc.set("cdl", "delay_scale", fmt(cfg.cdl.delay_scale));
        doc.set("cdl", "eoa_convention",
                cfg.cdl.eoa_convention == EoaConvention::Zenith ? "zenith" : "horizon");

        doc.set("render", "domain",
                cfg.render.domain == TraceDomain::Frequency ? "frequency" : "delay");
        doc.set("render", "overflow",
                cfg.render.overflow == DelayOverflow::Truncate ? "truncate" : "wrap");
        return doc;
    }

    std::uint64_t config_hash(const SimConfig &cfg)
    {
        return fnv1a64(to_ini(cfg).serialize());
    }

} // namespace ch5gr
