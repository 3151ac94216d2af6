// SPDX-License-Identifier: Apache-2.0
//
// cfnoma - downlink rate analysis for cell-free massive MIMO-NOMA
// Copyright (C) 2026 The cfnoma Authors
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

#include "cfnoma/csv.hpp"
#include "cfnoma/error.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

namespace cfnoma
{

namespace
{

void check_field(std::string_view f)
{
    require(f.find_first_of(",\"\n\r") == std::string_view::npos, ErrorCode::contract_violation,
            "CSV field contains a separator: '" + std::string(f) + "'");
}

template <typename T>
T parse_integer(std::string_view text)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail(ErrorCode::io_error, "bad integer field '" + std::string(text) + "'");
    return v;
}

} // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, r.ptr);
}

double parse_double(std::string_view text)
{
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail(ErrorCode::io_error, "bad numeric field '" + std::string(text) + "'");
    return v;
}

std::string format_row(const CsvRow &r)
{
    for (const auto *f : {&r.experiment, &r.precoder, &r.scheme, &r.sic, &r.drop, &r.metric})
        check_field(*f);
    std::string s;
    s.reserve(128);
    const auto put = [&s](std::string_view f) {
        s += f;
        s += ',';
    };
    put(r.experiment);
    put(r.precoder);
    put(r.scheme);
    put(r.sic);
    put(std::to_string(r.M));
    put(std::to_string(r.L));
    put(std::to_string(r.N));
    put(std::to_string(r.K));
    put(std::to_string(r.users));
    put(format_double(r.alpha));
    put(r.drop);
    put(std::to_string(r.seed));
    put(r.metric);
    if (r.value)
        s += format_double(*r.value);
    return s;
}

void write_csv(std::ostream &out, const std::vector<CsvRow> &rows)
{
    out << csv_header << '\n';
    for (const auto &r : rows)
        out << format_row(r) << '\n';
    if (!out)
        fail(ErrorCode::io_error, "failed to write CSV");
}

CsvRow parse_row(std::string_view line)
{
    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = line.find(',', start);
        f.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    if (f.size() != 14)
        fail(ErrorCode::io_error, "expected 14 CSV fields, got " + std::to_string(f.size()));

    CsvRow r;
    r.experiment = f[0];
    r.precoder = f[1];
    r.scheme = f[2];
    r.sic = f[3];
    r.M = parse_integer<std::size_t>(f[4]);
    r.L = parse_integer<std::size_t>(f[5]);
    r.N = parse_integer<std::size_t>(f[6]);
    r.K = parse_integer<std::size_t>(f[7]);
    r.users = parse_integer<std::size_t>(f[8]);
    r.alpha = parse_double(f[9]);
    r.drop = f[10];
    r.seed = parse_integer<std::uint64_t>(f[11]);
    r.metric = f[12];
    if (!f[13].empty())
        r.value = parse_double(f[13]);
    return r;
}

std::vector<CsvRow> read_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        fail(ErrorCode::io_error, "missing or malformed CSV header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line))
        if (!line.empty())
            rows.push_back(parse_row(line));
    return rows;
}

} // namespace cfnoma
