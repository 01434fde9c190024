// Copyright 2026 The dgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgd/format.hpp"
#include "dgd/harness/alignment.hpp"
#include "dgd/harness/descent.hpp"

namespace dgd::harness {

inline void write_alignment_csv(std::ostream &out, const AlignmentTable &table) {
    out << "sample_index,ell,x_denoised,x_noisy\n";
    for (const auto &r : table.rows) {
        out << r.sample_index << ',' << r.ell << ',' << format_double(r.x_denoised) << ',' << format_double(r.x_noisy) << '\n';
    }
}

inline void write_alignment_summary_csv(std::ostream &out, const AlignmentTable &table) {
    out << "ell,samples,wins,win_fraction\n";
    for (const auto &s : table.summary) {
        out << s.ell << ',' << s.samples << ',' << s.wins << ',' << format_double(s.win_fraction()) << '\n';
    }
}

/// `lambda` is empty for the exact and noisy curves.
inline void write_descent_csv(std::ostream &out, const DescentTable &table) {
    out << "step,method,lambda,mean_f,std_f\n";
    for (const auto &c : table.curves) {
        const std::string lambda = c.lambda ? format_double(*c.lambda) : std::string();
        for (std::size_t t = 0; t < c.mean.size(); ++t) {
            out << t << ',' << c.method << ',' << lambda << ',' << format_double(c.mean[t]) << ',' << format_double(c.stddev[t])
                << '\n';
        }
    }
}

namespace detail {

struct Frame {
    double x0, x1, y0, y1;
    static constexpr double kWidth = 480, kHeight = 480, kMargin = 50;

    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline void svg_open(std::ostream &out, const Frame &f, const std::string &title, const std::string &xlabel, const std::string &ylabel) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::kWidth << "\" height=\"" << Frame::kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << Frame::kMargin << "\" y=\"" << Frame::kMargin << "\" width=\"" << Frame::kWidth - 2 * Frame::kMargin
        << "\" height=\"" << Frame::kHeight - 2 * Frame::kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << Frame::kWidth / 2 << "\" y=\"30\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    out << "<text x=\"" << Frame::kWidth / 2 << "\" y=\"" << Frame::kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << "</text>\n";
    out << "<text x=\"14\" y=\"" << Frame::kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
        << Frame::kHeight / 2 << ")\">" << ylabel << "</text>\n";
    out << "<text x=\"" << Frame::kMargin << "\" y=\"" << Frame::kHeight - Frame::kMargin + 14 << "\" font-size=\"10\">" << num(f.x0)
        << "</text>\n";
    out << "<text x=\"" << Frame::kWidth - Frame::kMargin << "\" y=\"" << Frame::kHeight - Frame::kMargin + 14
        << "\" text-anchor=\"end\" font-size=\"10\">" << num(f.x1) << "</text>\n";
    out << "<text x=\"" << Frame::kMargin - 4 << "\" y=\"" << Frame::kHeight - Frame::kMargin
        << "\" text-anchor=\"end\" font-size=\"10\">" << num(f.y0) << "</text>\n";
    out << "<text x=\"" << Frame::kMargin - 4 << "\" y=\"" << Frame::kMargin + 10 << "\" text-anchor=\"end\" font-size=\"10\">"
        << num(f.y1) << "</text>\n";
}

}  // namespace detail

/// Scatter of (x_denoised, x_noisy) for one ell; red below the diagonal.
inline void write_alignment_svg(std::ostream &out, const AlignmentTable &table, std::size_t ell) {
    const detail::Frame f{-1.0, 1.0, -1.0, 1.0};
    detail::svg_open(out, f, "ell = " + std::to_string(ell), "cos(exact, denoised)", "cos(exact, noisy)");
    out << "<line x1=\"" << f.px(-1) << "\" y1=\"" << f.py(-1) << "\" x2=\"" << f.px(1) << "\" y2=\"" << f.py(1)
        << "\" stroke=\"gray\"/>\n";
    for (const auto &r : table.rows) {
        if (r.ell != ell) {
            continue;
        }
        const char *color = r.x_denoised > r.x_noisy ? "red" : "blue";
        out << "<circle cx=\"" << detail::num(f.px(r.x_denoised)) << "\" cy=\"" << detail::num(f.py(r.x_noisy))
            << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    out << "</svg>\n";
}

inline void write_descent_svg(std::ostream &out, const DescentTable &table) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t len = 1;
    for (const auto &c : table.curves) {
        for (double v : c.mean) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        len = std::max(len, c.mean.size());
    }
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const detail::Frame f{0.0, static_cast<double>(std::max<std::size_t>(len - 1, 1)), lo, hi};
    detail::svg_open(out, f, "mean exact objective", "step", "f");
    const char *palette[] = {"black", "blue", "red", "green", "orange", "purple"};
    std::size_t k = 0;
    for (const auto &c : table.curves) {
        const char *color = palette[std::min<std::size_t>(k, 5)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t t = 0; t < c.mean.size(); ++t) {
            out << detail::num(f.px(static_cast<double>(t))) << ',' << detail::num(f.py(c.mean[t])) << ' ';
        }
        out << "\"/>\n";
        std::string label = c.method + (c.lambda ? " lambda=" + format_double(*c.lambda) : std::string());
        out << "<text x=\"" << detail::Frame::kWidth - detail::Frame::kMargin - 4 << "\" y=\""
            << detail::Frame::kMargin + 14 + 14 * static_cast<double>(k) << "\" text-anchor=\"end\" font-size=\"10\" fill=\"" << color
            << "\">" << label << "</text>\n";
        ++k;
    }
    out << "</svg>\n";
}

namespace detail {

template <class Writer>
std::filesystem::path write_file(const std::filesystem::path &dir, const std::string &name, Writer &&writer) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
    return path;
}

inline void ensure_dir(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
}

}  // namespace detail

/// alignment.csv, alignment_summary.csv and, when requested, one
/// alignment_ell<k>.svg per ell.
inline std::vector<std::filesystem::path> emit_outputs(const AlignmentTable &table, const std::filesystem::path &dir, bool svg) {
    detail::ensure_dir(dir);
    std::vector<std::filesystem::path> written;
    written.push_back(detail::write_file(dir, "alignment.csv", [&](std::ostream &o) { write_alignment_csv(o, table); }));
    written.push_back(detail::write_file(dir, "alignment_summary.csv", [&](std::ostream &o) { write_alignment_summary_csv(o, table); }));
    if (svg) {
        for (const auto &s : table.summary) {
            written.push_back(detail::write_file(dir, "alignment_ell" + std::to_string(s.ell) + ".svg",
                                                 [&](std::ostream &o) { write_alignment_svg(o, table, s.ell); }));
        }
    }
    return written;
}

/// descent.csv and, when requested, descent.svg.
inline std::vector<std::filesystem::path> emit_outputs(const DescentTable &table, const std::filesystem::path &dir, bool svg) {
    detail::ensure_dir(dir);
    std::vector<std::filesystem::path> written;
    written.push_back(detail::write_file(dir, "descent.csv", [&](std::ostream &o) { write_descent_csv(o, table); }));
    if (svg) {
        written.push_back(detail::write_file(dir, "descent.svg", [&](std::ostream &o) { write_descent_svg(o, table); }));
    }
    return written;
}

}  // namespace dgd::harness
