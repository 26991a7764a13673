#include "volspill/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace volspill::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string header(const std::string& title) {
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{3}</text>\n",
        kWidth, kHeight, kWidth / 2, escape(title));
}

std::string axis_label(double v) { return fmt::format("{:.4g}", v); }

}  // namespace

std::string line_chart(const std::string& title, const std::vector<Series>& series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t n = 0;
    for (const auto& s : series) {
        for (double v : s.values) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        n = std::max(n, s.values.size());
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    if (hi == lo) {
        hi += 1.0;
        lo -= 1.0;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](std::size_t i) { return kLeft + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0); };
    auto py = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

    std::string out = header(title);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kLeft, kTop, kTop + plot_h);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft, kTop + plot_h,
                       kLeft + plot_w);
    for (int k = 0; k <= 4; ++k) {
        const double v = lo + (hi - lo) * k / 4.0;
        out += fmt::format("<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
                           kLeft - 6, py(v) + 4, axis_label(v));
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">observation (n = {})</text>\n",
                       kLeft + plot_w / 2, kHeight - 15, n);
    for (std::size_t s = 0; s < series.size(); ++s) {
        std::string points;
        for (std::size_t i = 0; i < series[s].values.size(); ++i) {
            const double v = series[s].values[i];
            if (!std::isfinite(v)) continue;
            points += fmt::format("{:.2f},{:.2f} ", px(i), py(v));
        }
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"/>\n",
                           kPalette[s % std::size(kPalette)], points);
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{}\">{}</text>\n",
                           kLeft + 10, kTop + 16 + 14.0 * static_cast<double>(s), kPalette[s % std::size(kPalette)],
                           escape(series[s].label));
    }
    out += "</svg>\n";
    return out;
}

std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<double>& values) {
    double hi = 0.0, lo = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    if (hi == lo) hi = lo + 1.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto py = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };
    const double slot = values.empty() ? plot_w : plot_w / static_cast<double>(values.size());

    std::string out = header(title);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", kLeft, py(0.0),
                       kLeft + plot_w);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = std::isfinite(values[i]) ? values[i] : 0.0;
        const double x = kLeft + slot * static_cast<double>(i) + slot * 0.15;
        const double top = std::min(py(v), py(0.0));
        const double height = std::abs(py(v) - py(0.0));
        out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x, top,
                           slot * 0.7, height, v >= 0.0 ? "#2ca02c" : "#d62728");
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
                           x + slot * 0.35, v >= 0.0 ? top - 4 : top + height + 12, axis_label(v));
        const std::string label = i < labels.size() ? labels[i] : std::string();
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                           x + slot * 0.35, kHeight - 20, escape(label));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace volspill::svg
