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

#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace subsynth::detail {

// Shortest representation that parses back to the same double; keeps CSV
// and JSON output deterministic and lossless.
inline void append_double(std::string &out, double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

inline std::string format_double(double value) {
    std::string s;
    append_double(s, value);
    return s;
}

inline std::string_view trim(std::string_view sv) {
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t' || sv.front() == '\r'))
        sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
        sv.remove_suffix(1);
    return sv;
}

inline std::optional<double> parse_double(std::string_view sv) {
    sv = trim(sv);
    double value = 0.0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size())
        return std::nullopt;
    return value;
}

} // namespace subsynth::detail
