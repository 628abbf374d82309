#include "lgsim/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lgsim {

namespace {

constexpr const char* kCrlf = "\r\n";

// Plot geometry. Fixed so identical inputs yield identical bytes.
constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 45.0;

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string format_svg(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string sweep_csv(const std::vector<SweepSeries>& series) {
    std::ostringstream out;
    out << "theta,c12,c23,c13,k,engine" << kCrlf;
    const size_t n_rows = series.empty() ? 0 : series.front().rows.size();
    for (const SweepSeries& s : series) {
        if (s.rows.size() != n_rows) {
            throw std::invalid_argument("sweep_csv: series length mismatch");
        }
    }
    for (size_t i = 0; i < n_rows; ++i) {
        for (const SweepSeries& s : series) {
            const auto& [theta, cs] = s.rows[i];
            out << format_double(theta) << ',' << format_double(cs.c12) << ','
                << format_double(cs.c23) << ',' << format_double(cs.c13) << ','
                << format_double(cs.k()) << ',' << s.engine_label << kCrlf;
        }
    }
    return out.str();
}

std::string invasiveness_csv(
    double theta, const std::array<PerturbationReport, 3>& reports) {
    std::ostringstream out;
    out << "input,theta,free_x,free_y,free_z,coupled_x,coupled_y,coupled_z,"
           "dx,dy,dz"
        << kCrlf;
    for (const PerturbationReport& r : reports) {
        out << r.input_label << ',' << format_double(theta);
        for (double v : r.bloch_before) out << ',' << format_double(v);
        for (double v : r.bloch_after) out << ',' << format_double(v);
        for (double v : r.displacement) out << ',' << format_double(v);
        out << kCrlf;
    }
    return out.str();
}

std::string coin_csv(const std::vector<CoinStep>& steps) {
    std::ostringstream out;
    out << "step,operation,face_before,p_heads_before,p_tails_before,"
           "face_after,p_heads_after,p_tails_after"
        << kCrlf;
    for (size_t i = 0; i < steps.size(); ++i) {
        const CoinStep& s = steps[i];
        out << (i + 1) << ',' << s.operation << ',' << s.before.face << ','
            << format_double(s.before.observer_distribution[0]) << ','
            << format_double(s.before.observer_distribution[1]) << ','
            << s.after.face << ','
            << format_double(s.after.observer_distribution[0]) << ','
            << format_double(s.after.observer_distribution[1]) << kCrlf;
    }
    return out.str();
}

std::string key_value_csv(
    const std::vector<std::pair<std::string, std::string>>& rows) {
    std::ostringstream out;
    out << "quantity,value" << kCrlf;
    for (const auto& [key, value] : rows) {
        out << key << ',' << value << kCrlf;
    }
    return out.str();
}

std::string sweep_svg(const std::vector<SweepSeries>& series) {
    double theta_lo = 0.0, theta_hi = 1.0;
    double k_lo = 0.0, k_hi = 1.0;
    bool first = true;
    for (const SweepSeries& s : series) {
        for (const auto& [theta, cs] : s.rows) {
            if (first) {
                theta_lo = theta_hi = theta;
                k_lo = k_hi = cs.k();
                first = false;
            }
            theta_lo = std::min(theta_lo, theta);
            theta_hi = std::max(theta_hi, theta);
            k_lo = std::min(k_lo, cs.k());
            k_hi = std::max(k_hi, cs.k());
        }
    }
    // Always show the K = 1 bound and give the curves breathing room.
    k_lo = std::min(k_lo, 0.0) - 0.1;
    k_hi = std::max(k_hi, 1.0) + 0.1;
    if (theta_hi <= theta_lo) theta_hi = theta_lo + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double theta) {
        return kMarginLeft + (theta - theta_lo) / (theta_hi - theta_lo) * plot_w;
    };
    auto sy = [&](double k) {
        return kMarginTop + (k_hi - k) / (k_hi - k_lo) * plot_h;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // Axes.
    out << "<line x1=\"" << format_svg(kMarginLeft) << "\" y1=\""
        << format_svg(kMarginTop) << "\" x2=\"" << format_svg(kMarginLeft)
        << "\" y2=\"" << format_svg(kHeight - kMarginBottom)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << format_svg(kMarginLeft) << "\" y1=\""
        << format_svg(kHeight - kMarginBottom) << "\" x2=\""
        << format_svg(kWidth - kMarginRight) << "\" y2=\""
        << format_svg(kHeight - kMarginBottom) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_svg(kWidth / 2.0) << "\" y=\""
        << format_svg(kHeight - 10.0)
        << "\" text-anchor=\"middle\" font-size=\"14\">theta (rad)</text>\n";
    out << "<text x=\"15\" y=\"" << format_svg(kHeight / 2.0)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 "
           "15 "
        << format_svg(kHeight / 2.0) << ")\">K</text>\n";

    // Macrorealist bound.
    out << "<line x1=\"" << format_svg(sx(theta_lo)) << "\" y1=\""
        << format_svg(sy(1.0)) << "\" x2=\"" << format_svg(sx(theta_hi))
        << "\" y2=\"" << format_svg(sy(1.0))
        << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    out << "<text x=\"" << format_svg(sx(theta_hi) - 60.0) << "\" y=\""
        << format_svg(sy(1.0) - 6.0)
        << "\" font-size=\"12\" fill=\"gray\">K = 1</text>\n";

    for (size_t i = 0; i < series.size(); ++i) {
        const SweepSeries& s = series[i];
        const char* color = kSeriesColors[i % 4];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [theta, cs] : s.rows) {
            out << format_svg(sx(theta)) << ',' << format_svg(sy(cs.k())) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << format_svg(kMarginLeft + 10.0) << "\" y=\""
            << format_svg(kMarginTop + 16.0 + 16.0 * static_cast<double>(i))
            << "\" font-size=\"12\" fill=\"" << color << "\">"
            << s.engine_label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << contents;
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace lgsim
