#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qcs::detail {

// Minimal static line-chart writer: one fixed-size canvas, linear axes,
// optional quartile band. Enough for the run reports; not a plotting library.
class SvgChart {
public:
    SvgChart(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(std::string name, std::vector<std::pair<double, double>> points) {
        series_.push_back({std::move(name), std::move(points)});
    }

    void add_band(std::vector<std::pair<double, double>> lo,
                  std::vector<std::pair<double, double>> hi) {
        band_lo_ = std::move(lo);
        band_hi_ = std::move(hi);
    }

    void write(const std::string& path) const {
        double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
        bool any = false;
        auto eat = [&](const std::vector<std::pair<double, double>>& pts) {
            for (auto [x, y] : pts) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                if (!any) {
                    xmin = xmax = x;
                    ymin = ymax = y;
                    any = true;
                } else {
                    xmin = std::min(xmin, x);
                    xmax = std::max(xmax, x);
                    ymin = std::min(ymin, y);
                    ymax = std::max(ymax, y);
                }
            }
        };
        for (const auto& s : series_) eat(s.points);
        eat(band_lo_);
        eat(band_hi_);
        if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
        if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
        const double ypad = 0.06 * (ymax - ymin);
        ymin -= ypad;
        ymax += ypad;

        const double w = 640, h = 420, ml = 70, mr = 20, mt = 40, mb = 50;
        auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
        auto sy = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
        auto clip = [&](double y) { return std::isfinite(y) ? y : ymin; };

        std::ostringstream out;
        out.precision(2);
        out << std::fixed;
        out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << int(w) << "' height='"
            << int(h) << "' viewBox='0 0 " << int(w) << ' ' << int(h) << "'>\n";
        out << "<rect width='100%' height='100%' fill='white'/>\n";
        out << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='16' "
               "font-family='sans-serif'>" << title_ << "</text>\n";

        if (!band_lo_.empty() && band_lo_.size() == band_hi_.size()) {
            out << "<path d='M";
            for (auto [x, y] : band_lo_) out << ' ' << sx(x) << ' ' << sy(clip(y));
            for (auto it = band_hi_.rbegin(); it != band_hi_.rend(); ++it)
                out << ' ' << sx(it->first) << ' ' << sy(clip(it->second));
            out << " Z' fill='#4a90d9' fill-opacity='0.18' stroke='none'/>\n";
        }

        // axes + ticks
        out << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='"
            << h - mb << "' stroke='black'/>\n";
        out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
            << "' stroke='black'/>\n";
        for (int t = 0; t <= 5; ++t) {
            const double fx = xmin + (xmax - xmin) * t / 5.0;
            const double fy = ymin + (ymax - ymin) * t / 5.0;
            out << "<line x1='" << sx(fx) << "' y1='" << h - mb << "' x2='" << sx(fx) << "' y2='"
                << h - mb + 5 << "' stroke='black'/>\n";
            out << "<text x='" << sx(fx) << "' y='" << h - mb + 18
                << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
                << trimmed(fx) << "</text>\n";
            out << "<line x1='" << ml - 5 << "' y1='" << sy(fy) << "' x2='" << ml << "' y2='"
                << sy(fy) << "' stroke='black'/>\n";
            out << "<text x='" << ml - 8 << "' y='" << sy(fy) + 4
                << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << trimmed(fy)
                << "</text>\n";
        }
        out << "<text x='" << (ml + w - mr) / 2 << "' y='" << h - 12
            << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << x_label_
            << "</text>\n";
        out << "<text x='16' y='" << (mt + h - mb) / 2
            << "' text-anchor='middle' font-size='13' font-family='sans-serif' transform='rotate(-90 16 "
            << (mt + h - mb) / 2 << ")'>" << y_label_ << "</text>\n";

        static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                       "#8c564b"};
        for (std::size_t s = 0; s < series_.size(); ++s) {
            const char* color = colors[s % 6];
            out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
            for (auto [x, y] : series_[s].points) out << sx(x) << ',' << sy(clip(y)) << ' ';
            out << "'/>\n";
            for (auto [x, y] : series_[s].points)
                out << "<circle cx='" << sx(x) << "' cy='" << sy(clip(y)) << "' r='3' fill='"
                    << color << "'/>\n";
            out << "<text x='" << w - mr - 6 << "' y='" << mt + 16 * double(s)
                << "' text-anchor='end' font-size='12' font-family='sans-serif' fill='" << color
                << "'>" << series_[s].name << "</text>\n";
        }
        out << "</svg>\n";

        std::ofstream file(path);
        if (!file) throw std::runtime_error("cannot open for writing: " + path);
        file << out.str();
        if (!file) throw std::runtime_error("write failed: " + path);
    }

private:
    static std::string trimmed(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }

    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> points;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
    std::vector<std::pair<double, double>> band_lo_, band_hi_;
};

}  // namespace qcs::detail
