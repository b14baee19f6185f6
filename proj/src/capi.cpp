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

#include "ch5gr.h"

#include "ch5gr/config.hpp"
#include "ch5gr/pipeline.hpp"

#include <cstring>
#include <memory>
#include <optional>
#include <string>

// Opaque handle definitions; the C API owns the IniDoc so round trips keep
// user-set keys even when they only differ from defaults.
struct ch5gr_config
{
    ch5gr::IniDoc doc;
};

struct ch5gr_trace
{
    ch5gr::CirTrace trace;
};

namespace
{
    thread_local std::string g_last_error = "no error";

    ch5gr_status fail(ch5gr_status code, const std::string &message)
    {
        g_last_error = message;
        return code;
    }

    template <typename Fn>
    ch5gr_status guarded(Fn &&fn)
    {
        try
        {
            return fn();
        }
        catch (const ch5gr::ConfigError &e)
        {
            return fail(CH5GR_ERR_USAGE, e.what());
        }
        catch (const ch5gr::FormatError &e)
        {
            return fail(CH5GR_ERR_FORMAT, e.what());
        }
        catch (const std::invalid_argument &e)
        {
            return fail(CH5GR_ERR_USAGE, e.what());
        }
        catch (const std::domain_error &e)
        {
            return fail(CH5GR_ERR_USAGE, e.what());
        }
        catch (const std::filesystem::filesystem_error &e)
        {
            return fail(CH5GR_ERR_IO, e.what());
        }
        catch (const std::runtime_error &e)
        {
            // Runtime errors out of this codebase are I/O-flavored (missing
            // or unwritable files) unless tagged otherwise.
            return fail(CH5GR_ERR_IO, e.what());
        }
        catch (const std::exception &e)
        {
            return fail(CH5GR_ERR_INTERNAL, e.what());
        }
    }

    ch5gr::SimConfig materialize(const ch5gr_config *cfg)
    {
        return ch5gr::load_sim_config(cfg->doc);
    }

    ch5gr_status copy_out(const std::string &text, char *buf, size_t buf_size)
    {
        if (!buf || buf_size == 0)
            return fail(CH5GR_ERR_USAGE, "output buffer is null or empty");
        if (text.size() + 1 > buf_size)
            return fail(CH5GR_ERR_USAGE, "output buffer too small (" +
                                             std::to_string(text.size() + 1) +
                                             " bytes needed)");
        std::memcpy(buf, text.c_str(), text.size() + 1);
        return CH5GR_OK;
    }
}

extern "C"
{
    const char *ch5gr_version(void)
    {
        return ch5gr::tool_version();
    }

    const char *ch5gr_last_error(void)
    {
        return g_last_error.c_str();
    }

    ch5gr_status ch5gr_config_new(ch5gr_config **out)
    {
        if (!out)
            return fail(CH5GR_ERR_USAGE, "null output pointer");
        return guarded([&]
        {
            auto handle = std::make_unique<ch5gr_config>();
            handle->doc.set("scenario", "profile", "5G-R-rural-A");
            ch5gr::load_sim_config(handle->doc); // sanity
            *out = handle.release();
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_config_load(const char *path, ch5gr_config **out)
    {
        if (!path || !out)
            return fail(CH5GR_ERR_USAGE, "null path or output pointer");
        return guarded([&]
        {
            auto handle = std::make_unique<ch5gr_config>();
            handle->doc = ch5gr::IniDoc::parse_file(path);
            ch5gr::load_sim_config(handle->doc); // reject bad configs up front
            *out = handle.release();
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_config_set(ch5gr_config *cfg, const char *section, const char *key,
                                  const char *value)
    {
        if (!cfg || !section || !key || !value)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            ch5gr::IniDoc candidate = cfg->doc;
            candidate.set(section, key, value);
            ch5gr::load_sim_config(candidate); // validate before committing
            cfg->doc = std::move(candidate);
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_config_get(const ch5gr_config *cfg, const char *section,
                                  const char *key, char *buf, size_t buf_size)
    {
        if (!cfg || !section || !key)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            // Effective value: explicit doc entry, else the loaded default.
            if (const auto v = cfg->doc.get(section, key))
                return copy_out(*v, buf, buf_size);
            const ch5gr::IniDoc full = ch5gr::to_ini(materialize(cfg));
            if (const auto v = full.get(section, key))
                return copy_out(*v, buf, buf_size);
            return fail(CH5GR_ERR_USAGE, std::string("unknown key [") + section + "] " + key);
        });
    }

    ch5gr_status ch5gr_config_hash(const ch5gr_config *cfg, uint64_t *out_hash)
    {
        if (!cfg || !out_hash)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            *out_hash = ch5gr::config_hash(materialize(cfg));
            return CH5GR_OK;
        });
    }

    void ch5gr_config_free(ch5gr_config *cfg)
    {
        delete cfg;
    }

    ch5gr_status ch5gr_simulate(const ch5gr_config *cfg, uint64_t seed, const char *out_dir)
    {
        if (!cfg || !out_dir)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            ch5gr::cmd_simulate(materialize(cfg), seed, out_dir);
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_analyze(const char *input_path, const char *metric,
                               const ch5gr_config *cfg_or_null, const char *out_dir)
    {
        if (!input_path || !metric || !out_dir)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            std::optional<ch5gr::SimConfig> cfg;
            if (cfg_or_null)
                cfg = materialize(cfg_or_null);
            ch5gr::cmd_analyze(input_path, metric, cfg ? &*cfg : nullptr, out_dir);
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_validate(const ch5gr_config *cfg, uint64_t seed,
                                const char *reference_csv_or_null, const char *out_dir)
    {
        if (!cfg || !out_dir)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            std::optional<std::filesystem::path> ref;
            if (reference_csv_or_null)
                ref = std::filesystem::path(reference_csv_or_null);
            const auto report = ch5gr::cmd_validate(materialize(cfg), seed, ref, out_dir);
            if (!report.passed)
                return fail(CH5GR_ERR_VALIDATION,
                            "validation failed; see report.csv in " + std::string(out_dir));
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_cdl_list(char *buf, size_t buf_size)
    {
        return guarded([&]
        {
            std::string names;
            for (const auto &t : ch5gr::builtin_tables())
            {
                names += t.name;
                names += '\n';
            }
            return copy_out(names, buf, buf_size);
        });
    }

    ch5gr_status ch5gr_cdl_export(const char *name, const char *csv_path)
    {
        if (!name || !csv_path)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            const ch5gr::CdlTable *table = ch5gr::find_builtin(name);
            if (!table)
                return fail(CH5GR_ERR_USAGE, std::string("no builtin CDL table named '") +
                                                 name + "'");
            ch5gr::save_cdl_csv(*table, csv_path);
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_trace_open(const char *path, ch5gr_trace **out)
    {
        if (!path || !out)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            *out = new ch5gr_trace{ch5gr::CirTrace::load(path)};
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_trace_render(const ch5gr_config *cfg, uint64_t seed,
                                    ch5gr_trace **out)
    {
        if (!cfg || !out)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            auto sim = ch5gr::run_simulation(materialize(cfg), seed);
            *out = new ch5gr_trace{std::move(sim.trace)};
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_trace_dims(const ch5gr_trace *trace, uint32_t *t, uint32_t *n,
                                  uint32_t *u, uint32_t *s, uint32_t *domain)
    {
        if (!trace)
            return fail(CH5GR_ERR_USAGE, "null trace");
        if (t)
            *t = trace->trace.n_snapshots();
        if (n)
            *n = trace->trace.n_grid();
        if (u)
            *u = trace->trace.n_rx();
        if (s)
            *s = trace->trace.n_tx();
        if (domain)
            *domain = static_cast<uint32_t>(trace->trace.domain());
        return CH5GR_OK;
    }

    ch5gr_status ch5gr_trace_info(const ch5gr_trace *trace, double *snapshot_interval_s,
                                  double *grid_step)
    {
        if (!trace)
            return fail(CH5GR_ERR_USAGE, "null trace");
        if (snapshot_interval_s)
            *snapshot_interval_s = trace->trace.snapshot_interval_s();
        if (grid_step)
            *grid_step = trace->trace.grid_step();
        return CH5GR_OK;
    }

    ch5gr_status ch5gr_trace_coeff(const ch5gr_trace *trace, uint32_t t, uint32_t k,
                                   uint32_t u, uint32_t s, float *re, float *im)
    {
        if (!trace || !re || !im)
            return fail(CH5GR_ERR_USAGE, "null argument");
        if (t >= trace->trace.n_snapshots() || k >= trace->trace.n_grid() ||
            u >= trace->trace.n_rx() || s >= trace->trace.n_tx())
            return fail(CH5GR_ERR_USAGE, "trace index out of range");
        const auto v = trace->trace.at(t, k, u, s);
        *re = v.real();
        *im = v.imag();
        return CH5GR_OK;
    }

    ch5gr_status ch5gr_trace_save(const ch5gr_trace *trace, const char *path)
    {
        if (!trace || !path)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            trace->trace.save(path);
            return CH5GR_OK;
        });
    }

    ch5gr_status ch5gr_trace_export_csv(const ch5gr_trace *trace, const char *path)
    {
        if (!trace || !path)
            return fail(CH5GR_ERR_USAGE, "null argument");
        return guarded([&]
        {
            trace->trace.export_csv(path);
            return CH5GR_OK;
        });
    }

    void ch5gr_trace_free(ch5gr_trace *trace)
    {
        delete trace;
    }

} // extern "C"
