/* SPDX-License-Identifier: Apache-2.0
 *
 * ch5gr - cluster-based time-variant channel simulator for 5G railway links
 * Copyright (C) 2026 ch5gr contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C API of the ch5gr shared library. All functions return ch5gr_status;
 * on failure ch5gr_last_error() gives a thread-local message. Handles are
 * opaque and freed with their matching *_free function.
 */

#ifndef CH5GR_H
#define CH5GR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C"
{
#endif

#if defined(_WIN32)
#define CH5GR_API __declspec(dllexport)
#else
#define CH5GR_API __attribute__((visibility("default")))
#endif

    typedef enum ch5gr_status
    {
        CH5GR_OK = 0,
        CH5GR_ERR_VALIDATION = 1, /* validate ran and failed */
        CH5GR_ERR_USAGE = 2,      /* bad arguments or configuration */
        CH5GR_ERR_IO = 3,         /* filesystem problems */
        CH5GR_ERR_FORMAT = 4,     /* malformed input file */
        CH5GR_ERR_INTERNAL = 5
    } ch5gr_status;

    typedef struct ch5gr_config ch5gr_config;
    typedef struct ch5gr_trace ch5gr_trace;

    CH5GR_API const char *ch5gr_version(void);

    /* Message for the most recent failure on this thread; never NULL. */
    CH5GR_API const char *ch5gr_last_error(void);

    /* ---- configuration ---------------------------------------------------
     * Configs are INI text with sections [scenario] [lsp] [clusters]
     * [evolution] [analysis] [validate] [cdl] [render]. `ch5gr_config_new`
     * yields the rural 5G-R area-A defaults.
     */
    CH5GR_API ch5gr_status ch5gr_config_new(ch5gr_config **out);
    CH5GR_API ch5gr_status ch5gr_config_load(const char *path, ch5gr_config **out);
    CH5GR_API ch5gr_status ch5gr_config_set(ch5gr_config *cfg, const char *section,
                                            const char *key, const char *value);
    CH5GR_API ch5gr_status ch5gr_config_get(const ch5gr_config *cfg, const char *section,
                                            const char *key, char *buf, size_t buf_size);
    CH5GR_API ch5gr_status ch5gr_config_hash(const ch5gr_config *cfg, uint64_t *out_hash);
    CH5GR_API void ch5gr_config_free(ch5gr_config *cfg);

    /* ---- pipeline commands ------------------------------------------------
     * ch5gr_simulate writes trace.cir, evolution.csv, mpc_ground_truth.csv,
     * and manifest.json into out_dir. ch5gr_analyze writes one CSV set per
     * metric (metric: pl sf apdp rmsds kfactor tpcc stationarity as cluster
     * markov all); cfg may be NULL for metrics that need no geometry.
     * ch5gr_validate writes report.csv and sample CSVs; reference_csv may be
     * NULL for the built-in reference; returns CH5GR_ERR_VALIDATION when an
     * asserted metric fails.
     */
    CH5GR_API ch5gr_status ch5gr_simulate(const ch5gr_config *cfg, uint64_t seed,
                                          const char *out_dir);
    CH5GR_API ch5gr_status ch5gr_analyze(const char *input_path, const char *metric,
                                         const ch5gr_config *cfg_or_null,
                                         const char *out_dir);
    CH5GR_API ch5gr_status ch5gr_validate(const ch5gr_config *cfg, uint64_t seed,
                                          const char *reference_csv_or_null,
                                          const char *out_dir);

    /* ---- CDL tables -------------------------------------------------------
     * ch5gr_cdl_list writes newline-separated builtin table names.
     */
    CH5GR_API ch5gr_status ch5gr_cdl_list(char *buf, size_t buf_size);
    CH5GR_API ch5gr_status ch5gr_cdl_export(const char *name, const char *csv_path);

    /* ---- traces ------------------------------------------------------------
     * Domain: 0 = delay taps, 1 = frequency points.
     */
    CH5GR_API ch5gr_status ch5gr_trace_open(const char *path, ch5gr_trace **out);
    CH5GR_API ch5gr_status ch5gr_trace_render(const ch5gr_config *cfg, uint64_t seed,
                                              ch5gr_trace **out);
    CH5GR_API ch5gr_status ch5gr_trace_dims(const ch5gr_trace *trace, uint32_t *t,
                                            uint32_t *n, uint32_t *u, uint32_t *s,
                                            uint32_t *domain);
    CH5GR_API ch5gr_status ch5gr_trace_info(const ch5gr_trace *trace,
                                            double *snapshot_interval_s,
                                            double *grid_step);
    CH5GR_API ch5gr_status ch5gr_trace_coeff(const ch5gr_trace *trace, uint32_t t,
                                             uint32_t k, uint32_t u, uint32_t s,
                                             float *re, float *im);
    CH5GR_API ch5gr_status ch5gr_trace_save(const ch5gr_trace *trace, const char *path);
    CH5GR_API ch5gr_status ch5gr_trace_export_csv(const ch5gr_trace *trace,
                                                  const char *path);
    CH5GR_API void ch5gr_trace_free(ch5gr_trace *trace);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CH5GR_H */
