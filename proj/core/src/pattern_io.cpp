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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "subsynth/errors.hpp"
#include "subsynth/patterns.hpp"
#include "text_format.hpp"

namespace subsynth {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(detail::trim(line.substr(start)));
            break;
        }
        fields.push_back(detail::trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

std::string lower(std::string_view sv) {
    std::string s(sv);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

PatternFile load_pattern_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open pattern file: " + path.string());

    std::string line;
    bool magnitude_form = false;
    bool header_seen = false;
    std::vector<double> theta_deg;
    std::vector<Complex> values;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view sv = detail::trim(line);
        if (sv.empty())
            continue;
        if (!header_seen) {
            const auto fields = split_csv(sv);
            std::string joined;
            for (size_t i = 0; i < fields.size(); ++i) {
                if (i)
                    joined += ',';
                joined += lower(fields[i]);
            }
            if (joined == "theta_deg,re,im")
                magnitude_form = false;
            else if (joined == "theta_deg,mag_db")
                magnitude_form = true;
            else
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": expected header 'theta_deg,re,im' or 'theta_deg,mag_db'");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(sv);
        const size_t expected = magnitude_form ? 2u : 3u;
        if (fields.size() != expected)
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                          std::to_string(expected) + " columns");
        std::vector<double> nums;
        for (const auto &f : fields) {
            const auto v = detail::parse_double(f);
            if (!v)
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": malformed number '" + std::string(f) + "'");
            nums.push_back(*v);
        }
        if (!theta_deg.empty() && nums[0] <= theta_deg.back())
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": angles must be strictly increasing");
        theta_deg.push_back(nums[0]);
        if (magnitude_form)
            values.emplace_back(std::pow(10.0, nums[1] / 20.0), 0.0);
        else
            values.emplace_back(nums[1], nums[2]);
    }
    if (!header_seen)
        throw IoError(path.string() + ": empty pattern file");
    if (theta_deg.size() < 2)
        throw IoError(path.string() + ": need at least two pattern samples");

    PatternFile file;
    file.theta_deg = std::move(theta_deg);
    file.values = Eigen::Map<const ComplexVector>(values.data(),
                                                  static_cast<Eigen::Index>(values.size()));
    file.magnitude_only = magnitude_form;
    return file;
}

void save_pattern_file(const std::filesystem::path &path, const PatternFile &file) {
    if (file.theta_deg.size() != static_cast<size_t>(file.values.size()))
        throw std::invalid_argument("save_pattern_file: angle/value size mismatch");
    std::string out = "theta_deg,re,im\n";
    for (size_t i = 0; i < file.theta_deg.size(); ++i) {
        const Eigen::Index j = static_cast<Eigen::Index>(i);
        detail::append_double(out, file.theta_deg[i]);
        out += ',';
        detail::append_double(out, file.values[j].real());
        out += ',';
        detail::append_double(out, file.values[j].imag());
        out += '\n';
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot write pattern file: " + path.string());
    os << out;
    if (!os)
        throw IoError("write failed: " + path.string());
}

DesiredPattern resample(const PatternFile &file, const AngleGrid &grid) {
    const auto &deg = file.theta_deg;
    const double slack = 1e-9;
    ComplexVector values(grid.size());
    for (int m = 0; m < grid.size(); ++m) {
        const double target = rad2deg(grid[m]);
        if (target < deg.front() - slack || target > deg.back() + slack)
            throw std::invalid_argument("resample: requested angle " +
                                        detail::format_double(target) +
                                        " deg outside the tabulated span");
        auto it = std::lower_bound(deg.begin(), deg.end(), target);
        if (it == deg.end())
            --it;
        size_t hi = static_cast<size_t>(it - deg.begin());
        if (hi == 0)
            hi = 1;
        const size_t lo = hi - 1;
        const double span = deg[hi] - deg[lo];
        double t = (target - deg[lo]) / span;
        t = std::clamp(t, 0.0, 1.0);
        values[m] = (1.0 - t) * file.values[static_cast<Eigen::Index>(lo)] +
                    t * file.values[static_cast<Eigen::Index>(hi)];
    }
    return DesiredPattern(grid, std::move(values));
}

} // namespace subsynth
