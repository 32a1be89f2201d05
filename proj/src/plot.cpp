#include "foldnet/plot.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "foldnet/io.hpp"

namespace foldnet {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 60;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

std::string num(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

std::string render_cdf_svg(const std::vector<CdfSeries>& series, const std::string& title) {
    std::size_t max_len = 1;
    for (const auto& s : series) {
        for (const auto& p : s.points) max_len = std::max(max_len, p.length);
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto x_of = [&](double k) { return kLeft + plot_w * k / static_cast<double>(max_len); };
    auto y_of = [&](double f) { return kTop + plot_h * (1.0 - f); };

    std::string out;
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        kWidth, kHeight, kWidth, kHeight);
    for (const auto& s : series) {
        out += "<!-- series " + xml_escape(s.label) + ": length,cdf";
        for (const auto& p : s.points) out += fmt::format(" {},{}", p.length, format_real(p.fraction));
        out += " -->\n";
    }
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    out += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
                       num(kLeft + plot_w / 2), xml_escape(title));

    // axes and grid
    out += fmt::format("<g stroke=\"#000\" stroke-width=\"1\">\n<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n"
                       "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\"/>\n</g>\n",
                       num(kLeft), num(y_of(0)), num(x_of(static_cast<double>(max_len))), num(y_of(1)));
    out += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 10; i += 2) {
        const double f = i / 10.0;
        out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#ddd\"/>\n", num(kLeft),
                           num(y_of(f)), num(x_of(static_cast<double>(max_len))));
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.1f}</text>\n", num(kLeft - 6),
                           num(y_of(f) + 4), f);
    }
    const std::size_t step = std::max<std::size_t>(1, (max_len + 9) / 10);
    for (std::size_t k = 0; k <= max_len; k += step) {
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                           num(x_of(static_cast<double>(k))), num(y_of(0) + 16), k);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">path length</text>\n",
                       num(kLeft + plot_w / 2), num(kHeight - 10));
    out += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">CDF</text>\n",
                       num(kTop + plot_h / 2));
    out += "</g>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* colour = kPalette[i % kPalette.size()];
        std::string pts = fmt::format("{},{}", num(x_of(0)), num(y_of(0)));
        double prev = 0.0;
        for (const auto& p : s.points) {
            const double x = x_of(static_cast<double>(p.length));
            pts += fmt::format(" {},{} {},{}", num(x), num(y_of(prev)), num(x), num(y_of(p.fraction)));
            prev = p.fraction;
        }
        pts += fmt::format(" {},{}", num(x_of(static_cast<double>(max_len))), num(y_of(prev)));
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", colour, pts);

        const double ly = kTop + 10 + 18 * static_cast<double>(i);
        const double lx = kWidth - kRight + 15;
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n", num(lx),
                           num(ly), num(lx + 20), num(ly), colour);
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                           num(lx + 26), num(ly + 4), xml_escape(s.label));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace foldnet
