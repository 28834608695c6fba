// SPDX-License-Identifier: Apache-2.0
//
// subsynth - compressive-sensing subarray synthesis for non-uniform linear arrays
// Copyright (C) 2026 the subsynth contributors
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

#include "subsynth/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "subsynth/errors.hpp"
#include "text_format.hpp"

namespace subsynth {

namespace {

RunConfig apply_axis(RunConfig config, SweepAxis axis, double value) {
    switch (axis) {
    case SweepAxis::Sparsity:
        config.mode = 1;
        config.sparsity = static_cast<int>(std::llround(value));
        break;
    case SweepAxis::XiTarget:
        config.mode = 2;
        config.use_raw_epsilon = false;
        config.xi_target = value;
        break;
    case SweepAxis::Q:
        config.refine.max_iterations = static_cast<int>(std::llround(value));
        break;
    case SweepAxis::SllDb:
        config.pattern.sll_db = value;
        break;
    }
    return config;
}

SweepRow run_one(const RunConfig &base, SweepAxis axis, double value) {
    SweepRow row;
    row.value = value;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const SynthesisResult result = run_synthesis(apply_axis(base, axis, value));
        row.ok = true;
        row.status = "ok";
        row.chi = result.metrics.chi;
        row.xi = result.metrics.xi;
        row.sll_db = result.metrics.sll_db;
    } catch (const InfeasibleError &e) {
        row.status = "infeasible";
        row.chi = e.best().metrics.chi;
        row.xi = e.best().metrics.xi;
        row.sll_db = e.best().metrics.sll_db;
    } catch (const std::invalid_argument &) {
        row.status = "config_error";
    } catch (const GenerationError &) {
        row.status = "generation_error";
    } catch (const IoError &) {
        row.status = "io_error";
    } catch (const Error &) {
        row.status = "solver_error";
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return row;
}

} // namespace

std::string to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::Sparsity:
        return "K";
    case SweepAxis::XiTarget:
        return "xi_target";
    case SweepAxis::Q:
        return "Q";
    case SweepAxis::SllDb:
        return "sll_db";
    }
    return "K";
}

SweepAxis sweep_axis_from_string(const std::string &name) {
    if (name == "K")
        return SweepAxis::Sparsity;
    if (name == "xi_target")
        return SweepAxis::XiTarget;
    if (name == "Q")
        return SweepAxis::Q;
    if (name == "sll_db")
        return SweepAxis::SllDb;
    throw std::invalid_argument("unknown sweep axis: " + name + " (expected K, xi_target, Q or sll_db)");
}

std::vector<SweepRow> run_sweep(const RunConfig &base, SweepAxis axis,
                                const std::vector<double> &values, int jobs) {
    if (jobs < 1)
        throw std::invalid_argument("run_sweep: jobs must be >= 1");
    std::vector<SweepRow> rows(values.size());
    if (values.empty())
        return rows;

    const int workers = std::min<int>(jobs, static_cast<int>(values.size()));
    if (workers == 1) {
        for (size_t i = 0; i < values.size(); ++i)
            rows[i] = run_one(base, axis, values[i]);
        return rows;
    }

    // Rows are independent; results land at their input index so the output
    // order never depends on scheduling.
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= values.size())
                    return;
                rows[i] = run_one(base, axis, values[i]);
            }
        });
    }
    for (auto &thread : pool)
        thread.join();
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::string out = "value,chi,xi,sll_db,runtime_ms,status\n";
    for (const auto &row : rows) {
        detail::append_double(out, row.value);
        out += ',';
        if (row.ok || row.status == "infeasible") {
            detail::append_double(out, row.chi);
            out += ',';
            detail::append_double(out, row.xi);
            out += ',';
            detail::append_double(out, row.sll_db);
        } else {
            out += ",,";
        }
        out += ',';
        detail::append_double(out, row.runtime_ms);
        out += ',';
        out += row.status;
        out += '\n';
    }
    return out;
}

} // namespace subsynth
