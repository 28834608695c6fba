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

#include "subsynth/result_io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "subsynth/errors.hpp"
#include "text_format.hpp"

namespace subsynth {

namespace {

using json = nlohmann::ordered_json;

// JSON has no infinities; the sidelobe level of a sidelobe-free pattern is
// stored as null.
json encode_db(double value) {
    if (std::isinf(value) || std::isnan(value))
        return nullptr;
    return value;
}

double decode_db(const json &value) {
    if (value.is_null())
        return -std::numeric_limits<double>::infinity();
    return value.get<double>();
}

json complex_array(const ComplexVector &v) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v[i].real());
        im.push_back(v[i].imag());
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexVector complex_from_json(const json &j) {
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (re.size() != im.size())
        throw IoError("result: complex array re/im lengths differ");
    ComplexVector v(static_cast<Eigen::Index>(re.size()));
    for (size_t i = 0; i < re.size(); ++i)
        v[static_cast<Eigen::Index>(i)] =
            Complex(re.at(i).get<double>(), im.at(i).get<double>());
    return v;
}

json config_to_json(const RunConfig &c) {
    json pattern{{"family", to_string(c.pattern.family)},
                 {"elements", c.pattern.elements},
                 {"sll_db", c.pattern.sll_db},
                 {"nbar", c.pattern.nbar},
                 {"file", c.pattern.file.string()}};
    json refine{{"max_iterations", c.refine.max_iterations},
                {"eta_max", c.refine.eta_max},
                {"d_min", c.refine.d_min},
                {"symmetry",
                 c.refine.symmetry == RefinementConfig::Symmetry::Mirror ? "mirror" : "off"},
                {"undamped", c.refine.undamped}};
    return json{{"pattern", std::move(pattern)},
                {"solver", to_string(c.solver)},
                {"mode", c.mode},
                {"sparsity", c.sparsity},
                {"xi_target", c.xi_target},
                {"epsilon", c.epsilon},
                {"use_raw_epsilon", c.use_raw_epsilon},
                {"refine", std::move(refine)},
                {"solver_grid_points", c.solver_grid_points},
                {"metric_step_deg", c.metric_step_deg},
                {"element_spacing", c.element_spacing},
                {"sll_scan_step_deg", c.sll_scan_step_deg},
                {"normalize_columns", c.normalize_columns},
                {"carry_geometry", c.carry_geometry},
                {"paper_literal", c.paper_literal}};
}

RunConfig config_from_json(const json &j) {
    RunConfig c;
    const auto &p = j.at("pattern");
    c.pattern.family = pattern_family_from_string(p.at("family").get<std::string>());
    c.pattern.elements = p.at("elements").get<int>();
    c.pattern.sll_db = p.at("sll_db").get<double>();
    c.pattern.nbar = p.at("nbar").get<int>();
    c.pattern.file = p.at("file").get<std::string>();
    c.solver = solver_kind_from_string(j.at("solver").get<std::string>());
    c.mode = j.at("mode").get<int>();
    c.sparsity = j.at("sparsity").get<int>();
    c.xi_target = j.at("xi_target").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.use_raw_epsilon = j.at("use_raw_epsilon").get<bool>();
    const auto &r = j.at("refine");
    c.refine.max_iterations = r.at("max_iterations").get<int>();
    c.refine.eta_max = r.at("eta_max").get<double>();
    c.refine.d_min = r.at("d_min").get<double>();
    c.refine.symmetry = r.at("symmetry").get<std::string>() == "mirror"
                            ? RefinementConfig::Symmetry::Mirror
                            : RefinementConfig::Symmetry::Off;
    c.refine.undamped = r.at("undamped").get<bool>();
    c.solver_grid_points = j.at("solver_grid_points").get<int>();
    c.metric_step_deg = j.at("metric_step_deg").get<double>();
    c.element_spacing = j.at("element_spacing").get<double>();
    c.sll_scan_step_deg = j.at("sll_scan_step_deg").get<double>();
    c.normalize_columns = j.at("normalize_columns").get<bool>();
    c.carry_geometry = j.at("carry_geometry").get<bool>();
    c.paper_literal = j.at("paper_literal").get<bool>();
    return c;
}

} // namespace

std::string serialize_result(const SynthesisResult &result, const RunConfig &config) {
    json doc;
    doc["config"] = config_to_json(config);

    json positions = json::array();
    for (double d : result.geometry.positions())
        positions.push_back(d);
    doc["geometry"] = std::move(positions);

    doc["excitations"] = complex_array(result.excitations);
    double peak = 0.0;
    for (Eigen::Index i = 0; i < result.excitations.size(); ++i)
        peak = std::max(peak, std::abs(result.excitations[i]));
    json normalized = json::array();
    for (Eigen::Index i = 0; i < result.excitations.size(); ++i)
        normalized.push_back(peak > 0.0 ? std::abs(result.excitations[i]) / peak : 0.0);
    doc["excitations"]["normalized_magnitude"] = std::move(normalized);

    // Element indices are 1-based in the document.
    json support = json::array();
    for (int idx : result.solution.support)
        support.push_back(idx + 1);
    doc["support"] = std::move(support);
    doc["coefficients"] = complex_array(result.solution.coeffs);
    doc["residual_norm"] = result.solution.residual_norm;

    json runs = json::array();
    for (const auto &run : result.layout.runs) {
        runs.push_back(json{{"first", run.first + 1},
                            {"last", run.last + 1},
                            {"size", run.size()},
                            {"weight_re", run.weight.real()},
                            {"weight_im", run.weight.imag()}});
    }
    doc["layout"] = json{{"subarrays", result.layout.count()}, {"runs", std::move(runs)}};

    doc["metrics"] = json{{"xi", result.metrics.xi},
                          {"chi", result.metrics.chi},
                          {"sll_db", encode_db(result.metrics.sll_db)},
                          {"mainlobe_peak_deg", result.metrics.mainlobe_peak_deg}};

    json omp_trace = json::array();
    for (const auto &it : result.omp_trace.iterations)
        omp_trace.push_back(json{{"chosen", it.chosen + 1}, {"residual_norm", it.residual_norm}});
    doc["omp_trace"] = std::move(omp_trace);

    json refine_trace = json::array();
    for (const auto &it : result.refine_trace) {
        refine_trace.push_back(json{{"iteration", it.iteration},
                                    {"xi", it.xi},
                                    {"fit_residual", it.fit_residual},
                                    {"eta_norm", it.eta_norm},
                                    {"eta_max_abs", it.eta_max_abs},
                                    {"accepted", it.accepted},
                                    {"damping", it.damping}});
    }
    doc["refine_trace"] = std::move(refine_trace);

    doc["xi_initial"] = result.xi_initial;
    doc["refinement_stopped"] = result.refinement_stopped;
    doc["infeasible"] = result.infeasible;
    doc["achieved_pattern_csv"] = "achieved_pattern.csv";

    return doc.dump(2) + "\n";
}

LoadedResult parse_result(const std::string &json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception &e) {
        throw IoError(std::string("result: malformed JSON: ") + e.what());
    }
    try {
        LoadedResult loaded;
        loaded.config = config_from_json(doc.at("config"));

        std::vector<double> positions;
        for (const auto &d : doc.at("geometry"))
            positions.push_back(d.get<double>());
        loaded.result.geometry = ArrayGeometry(std::move(positions));
        loaded.result.excitations = complex_from_json(doc.at("excitations"));

        for (const auto &idx : doc.at("support"))
            loaded.result.solution.support.push_back(idx.get<int>() - 1);
        loaded.result.solution.coeffs = complex_from_json(doc.at("coefficients"));
        loaded.result.solution.residual_norm = doc.at("residual_norm").get<double>();

        for (const auto &run : doc.at("layout").at("runs")) {
            SubarrayRun r;
            r.first = run.at("first").get<int>() - 1;
            r.last = run.at("last").get<int>() - 1;
            r.weight = Complex(run.at("weight_re").get<double>(),
                               run.at("weight_im").get<double>());
            loaded.result.layout.runs.push_back(r);
        }

        const auto &metrics = doc.at("metrics");
        loaded.result.metrics.xi = metrics.at("xi").get<double>();
        loaded.result.metrics.chi = metrics.at("chi").get<double>();
        loaded.result.metrics.sll_db = decode_db(metrics.at("sll_db"));
        loaded.result.metrics.mainlobe_peak_deg = metrics.at("mainlobe_peak_deg").get<double>();

        for (const auto &it : doc.at("omp_trace")) {
            OmpIteration rec;
            rec.chosen = it.at("chosen").get<int>() - 1;
            rec.residual_norm = it.at("residual_norm").get<double>();
            loaded.result.omp_trace.iterations.push_back(rec);
        }
        for (const auto &it : doc.at("refine_trace")) {
            RefineIteration rec;
            rec.iteration = it.at("iteration").get<int>();
            rec.xi = it.at("xi").get<double>();
            rec.fit_residual = it.at("fit_residual").get<double>();
            rec.eta_norm = it.at("eta_norm").get<double>();
            rec.eta_max_abs = it.at("eta_max_abs").get<double>();
            rec.accepted = it.at("accepted").get<bool>();
            rec.damping = it.at("damping").get<double>();
            loaded.result.refine_trace.push_back(rec);
        }
        loaded.result.xi_initial = doc.at("xi_initial").get<double>();
        loaded.result.refinement_stopped = doc.at("refinement_stopped").get<bool>();
        loaded.result.infeasible = doc.at("infeasible").get<bool>();
        return loaded;
    } catch (const json::exception &e) {
        throw IoError(std::string("result: schema violation: ") + e.what());
    }
}

void save_result(const std::filesystem::path &directory, const SynthesisResult &result,
                 const RunConfig &config, double runtime_ms) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec)
        throw IoError("cannot create output directory: " + directory.string());

    {
        std::ofstream os(directory / "result.json", std::ios::binary);
        if (!os)
            throw IoError("cannot write " + (directory / "result.json").string());
        os << serialize_result(result, config);
    }

    // Achieved pattern sampled on the metric grid, degrees in the file.
    {
        PatternFile file;
        const int rows = static_cast<int>(std::floor(90.0 / config.metric_step_deg + 0.5)) + 1;
        AngleGrid grid = AngleGrid::uniform_deg(0.0, 90.0, config.metric_step_deg);
        file.theta_deg.reserve(static_cast<size_t>(rows));
        for (int i = 0; i < grid.size(); ++i)
            file.theta_deg.push_back(config.metric_step_deg * i);
        file.values = evaluate_pattern(result.geometry, result.excitations, grid);
        save_pattern_file(directory / "achieved_pattern.csv", file);
    }

    {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        nlohmann::ordered_json meta{
            {"runtime_ms", runtime_ms},
            {"unix_time_ms",
             std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
        std::ofstream os(directory / "meta.json", std::ios::binary);
        if (!os)
            throw IoError("cannot write " + (directory / "meta.json").string());
        os << meta.dump(2) << "\n";
    }
}

LoadedResult load_result(const std::filesystem::path &result_json) {
    std::ifstream in(result_json, std::ios::binary);
    if (!in)
        throw IoError("cannot open result file: " + result_json.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_result(text);
}

} // namespace subsynth
