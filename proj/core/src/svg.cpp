#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace decaylab {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

} // namespace

std::string render_decay_svg(const std::vector<double>& t, const std::vector<double>& v,
                             const std::optional<DecayReport>& report, const std::string& title) {
    const double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
    const bool power_axes =
        report && report->classified.model == DecayModel::PowerLaw;

    std::vector<double> xs, ys;
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(v[i] > 0.0) || (power_axes && !(t[i] > 0.0))) continue;
        xs.push_back(power_axes ? std::log10(t[i]) : t[i]);
        ys.push_back(std::log10(v[i]));
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    if (xs.size() < 2) {
        out << "<text x=\"" << W / 2 << "\" y=\"" << H / 2
            << "\" text-anchor=\"middle\">insufficient positive data</text>\n</svg>\n";
        return out.str();
    }
    double xlo = *std::min_element(xs.begin(), xs.end());
    double xhi = *std::max_element(xs.begin(), xs.end());
    double ylo = *std::min_element(ys.begin(), ys.end());
    double yhi = *std::max_element(ys.begin(), ys.end());
    if (xhi == xlo) xhi = xlo + 1.0;
    if (yhi == ylo) { yhi += 0.5; ylo -= 0.5; }
    const auto px = [&](double x) { return ML + (x - xlo) / (xhi - xlo) * (W - ML - MR); };
    const auto py = [&](double y) { return H - MB - (y - ylo) / (yhi - ylo) * (H - MT - MB); };

    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR << "\" height=\""
        << H - MT - MB << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ML << "\" y=\"" << H - 12 << "\" font-size=\"12\">"
        << (power_axes ? "log10 t" : "t") << " in [" << fmt(xlo) << ", " << fmt(xhi)
        << "]</text>\n";
    out << "<text x=\"8\" y=\"" << MT - 8 << "\" font-size=\"12\">log10 norm in [" << fmt(ylo)
        << ", " << fmt(yhi) << "]</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) out << fmt(px(xs[i])) << "," << fmt(py(ys[i])) << " ";
    out << "\"/>\n";

    if (report) {
        const FitWindow w = report->window;
        // anchor the overlay lines at the first history point inside the window
        size_t anchor = 0;
        bool found = false;
        for (size_t i = 0; i < t.size(); ++i)
            if (t[i] >= w.lo && v[i] > 0.0) { anchor = i; found = true; break; }
        if (found) {
            const double xa = power_axes ? std::log10(t[anchor]) : t[anchor];
            const double xb = power_axes ? std::log10(w.hi) : w.hi;
            const double ya = std::log10(v[anchor]);
            const double rate = report->classified.selected().rate;
            // slope of the fitted model in the plot coordinates
            const double slope_fit = power_axes ? -rate : -rate / std::log(10.0);
            out << "<line x1=\"" << fmt(px(xa)) << "\" y1=\"" << fmt(py(ya)) << "\" x2=\""
                << fmt(px(xb)) << "\" y2=\"" << fmt(py(ya + slope_fit * (xb - xa)))
                << "\" stroke=\"#c02020\" stroke-dasharray=\"6,3\" stroke-width=\"1.5\"/>\n";
            if (report->predicted.model == DecayModel::PowerLaw && power_axes) {
                const double slope_ref = -report->predicted.exponent;
                out << "<line x1=\"" << fmt(px(xa)) << "\" y1=\"" << fmt(py(ya)) << "\" x2=\""
                    << fmt(px(xb)) << "\" y2=\"" << fmt(py(ya + slope_ref * (xb - xa)))
                    << "\" stroke=\"#208020\" stroke-dasharray=\"2,3\" stroke-width=\"1.5\"/>\n";
            }
            out << "<text x=\"" << W - MR - 240 << "\" y=\"" << MT + 18
                << "\" font-size=\"12\" fill=\"#c02020\">fitted rate " << fmt(rate) << "</text>\n";
            if (report->predicted.model == DecayModel::PowerLaw)
                out << "<text x=\"" << W - MR - 240 << "\" y=\"" << MT + 34
                    << "\" font-size=\"12\" fill=\"#208020\">predicted exponent "
                    << fmt(report->predicted.exponent) << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace decaylab
