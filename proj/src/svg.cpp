#include "mmas/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mmas/errors.hpp"

namespace mmas {

namespace {

constexpr int kWidth = 840;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 34;
constexpr int kMarginBottom = 44;
constexpr size_t kMaxPoints = 2000;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_file(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write SVG file: " + path);
    return out;
}

}  // namespace

void write_line_svg(const std::string& path, const std::string& title,
                    const std::vector<double>& x, const std::vector<SvgSeries>& series) {
    auto out = open_file(path);
    const size_t count = x.size();
    const size_t stride = std::max<size_t>(1, count / kMaxPoints);

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!x.empty()) {
        xmin = *std::min_element(x.begin(), x.end());
        xmax = *std::max_element(x.begin(), x.end());
    }
    bool first = true;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.y.size(); i += stride) {
            if (!std::isfinite(s.y[i])) continue;
            if (first) {
                ymin = ymax = s.y[i];
                first = false;
            } else {
                ymin = std::min(ymin, s.y[i]);
                ymax = std::max(ymax, s.y[i]);
            }
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) {
        ymax = ymin + 1.0;
        ymin -= 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double v) { return kMarginLeft + (v - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double v) { return kMarginTop + (ymax - v) / (ymax - ymin) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << title << "</text>\n";

    // Axes and ticks.
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int tick = 0; tick <= 5; ++tick) {
        const double fx = xmin + (xmax - xmin) * tick / 5.0;
        const double fy = ymin + (ymax - ymin) * tick / 5.0;
        out << "<line x1=\"" << px(fx) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px(fx)
            << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << px(fx) << "\" y=\"" << kMarginTop + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fx)
            << "</text>\n";
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << py(fy) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fy)
            << "</text>\n";
    }

    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (size_t i = 0; i < s.y.size() && i < count; i += stride) {
            if (!std::isfinite(s.y[i])) continue;
            out << fmt(px(x[i])) << ',' << fmt(py(s.y[i])) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kMarginLeft + 10 << "\" y=\"" << kMarginTop + 16 + 16 * si
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
    }
    out << "</svg>\n";
}

void write_inclusion_svg(const std::string& path, const std::vector<double>& t,
                         const std::vector<Inclusion>& verdicts) {
    auto out = open_file(path);
    const int height = 120;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double xmin = t.empty() ? 0.0 : t.front();
    const double xmax = t.empty() || t.back() <= xmin ? xmin + 1.0 : t.back();
    auto px = [&](double v) { return kMarginLeft + (v - xmin) / (xmax - xmin) * plot_w; };
    auto color = [](Inclusion s) {
        switch (s) {
            case Inclusion::Inside: return "#2ca02c";
            case Inclusion::Outside: return "#d62728";
            case Inclusion::Boundary: return "#ff7f0e";
        }
        return "#7f7f7f";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << height << "\" viewBox=\"0 0 " << kWidth << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2
        << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">inclusion verdict timeline</text>\n";

    // Merge consecutive equal verdicts into one rect.
    size_t i = 0;
    while (i < verdicts.size()) {
        size_t j = i;
        while (j + 1 < verdicts.size() && verdicts[j + 1] == verdicts[i]) ++j;
        const double x0 = px(t[i]);
        const double x1 = px(j + 1 < t.size() ? t[j + 1] : t[j]);
        out << "<rect x=\"" << fmt(x0) << "\" y=\"30\" width=\"" << fmt(std::max(0.5, x1 - x0))
            << "\" height=\"40\" fill=\"" << color(verdicts[i]) << "\"/>\n";
        i = j + 1;
    }
    out << "<text x=\"" << kMarginLeft
        << "\" y=\"96\" font-family=\"sans-serif\" font-size=\"11\">green: INSIDE, orange: BOUNDARY, red: OUTSIDE</text>\n";
    out << "<text x=\"" << kMarginLeft << "\" y=\"112\" font-family=\"sans-serif\" font-size=\"11\">t from "
        << fmt(xmin) << " s to " << fmt(xmax) << " s</text>\n";
    out << "</svg>\n";
}

}  // namespace mmas
