#include "decaylab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace decaylab {

namespace {

struct LogSeries {
    std::vector<double> x, y; // regressor and log v
};

LogSeries collect(const std::vector<double>& t, const std::vector<double>& v, FitWindow w,
                  bool log_t, const char* who) {
    if (t.size() != v.size()) throw shape_error(std::string(who) + ": t/v length mismatch");
    if (!(w.hi > w.lo)) throw parameter_error(std::string(who) + ": empty window");
    LogSeries s;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < w.lo || t[i] > w.hi) continue;
        if (!(v[i] > 0.0))
            throw parameter_error(std::string(who) + ": nonpositive value inside the fit window");
        if (log_t && !(t[i] > 0.0)) continue;
        s.x.push_back(log_t ? std::log(t[i]) : t[i]);
        s.y.push_back(std::log(v[i]));
    }
    if (s.x.size() < 10)
        throw parameter_error(std::string(who) + ": fewer than 10 points in the fit window");
    return s;
}

FitResult least_squares_slope(const LogSeries& s) {
    const int n = static_cast<int>(s.x.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += s.x[i];
        my += s.y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (s.x[i] - mx) * (s.x[i] - mx);
        sxy += (s.x[i] - mx) * (s.y[i] - my);
    }
    if (sxx == 0.0) throw parameter_error("decay fit: degenerate abscissa");
    const double slope = sxy / sxx;
    const double icept = my - slope * mx;
    double rss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = s.y[i] - (icept + slope * s.x[i]);
        rss += r * r;
    }
    FitResult f;
    f.rate = -slope;
    f.rss = rss;
    f.n_points = n;
    f.stderr_ = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
    return f;
}

} // namespace

FitResult fit_power(const std::vector<double>& t, const std::vector<double>& v, FitWindow w) {
    return least_squares_slope(collect(t, v, w, true, "fit_power"));
}

FitResult fit_exp(const std::vector<double>& t, const std::vector<double>& v, FitWindow w) {
    return least_squares_slope(collect(t, v, w, false, "fit_exp"));
}

Classification classify_decay(const std::vector<double>& t, const std::vector<double>& v,
                              FitWindow w) {
    double t_min_pos = 0.0;
    for (double x : t)
        if (x > 0.0) { t_min_pos = x; break; }
    if (t.empty() || t_min_pos == 0.0 || t.back() / t_min_pos < 100.0)
        throw parameter_error("classify_decay: history must span at least two decades in t");
    Classification c;
    c.power = fit_power(t, v, w);
    c.exponential = fit_exp(t, v, w);
    c.model = c.power.rss < c.exponential.rss ? DecayModel::PowerLaw : DecayModel::Exponential;
    return c;
}

PredictedDecay predicted_decay(double lambda1, double alpha, double gamma) {
    PredictedDecay p;
    if (lambda1 > 0.0) {
        p.model = DecayModel::PowerLaw;
        p.exponent = alpha / gamma;
    } else if (gamma > 1.0) {
        p.model = DecayModel::PowerLaw;
        p.exponent = 1.0 / (gamma - 1.0);
    } else {
        p.model = DecayModel::Exponential;
    }
    return p;
}

DecayReport build_report(double lambda1, double alpha, double gamma_theorem,
                         const std::vector<double>& t, const std::vector<double>& v, FitWindow w,
                         double power_tol) {
    if (gamma_theorem != 1.0 && gamma_theorem != 2.0 && gamma_theorem != 3.0)
        throw parameter_error("build_report: gamma_theorem must be 1, 2 or 3");
    DecayReport rep;
    rep.window = w;
    rep.predicted = predicted_decay(lambda1, alpha, gamma_theorem);
    if (rep.predicted.model == DecayModel::PowerLaw && w.lo < 1.0)
        throw parameter_error("build_report: power-law fits need window.lo >= 1 (asymptotic regime)");
    rep.classified = classify_decay(t, v, w);

    const bool got_power = rep.classified.model == DecayModel::PowerLaw;
    if (rep.predicted.model == DecayModel::Exponential) {
        if (!got_power && rep.classified.exponential.rate > 0.0) {
            rep.pass = true;
            rep.note = "exponential decay with positive rate";
        } else {
            rep.pass = false;
            rep.note = got_power ? "power-law tail where exponential decay was predicted"
                                 : "nonpositive fitted rate";
        }
        return rep;
    }
    // power-law prediction: faster (exponential) decay also satisfies the bound
    if (!got_power) {
        rep.pass = rep.classified.exponential.rate > 0.0;
        rep.note = rep.pass ? "exponential decay, faster than the predicted power law"
                            : "nonpositive fitted rate";
        return rep;
    }
    const double p_hat = rep.classified.power.rate;
    rep.relative_deviation = (rep.predicted.exponent - p_hat) / rep.predicted.exponent;
    rep.pass = p_hat >= rep.predicted.exponent * (1.0 - power_tol);
    rep.note = rep.pass ? "fitted exponent within tolerance of the predicted rate"
                        : "fitted exponent below the predicted rate";
    return rep;
}

FitWindow default_window(const std::vector<double>& t) {
    if (t.empty()) throw parameter_error("default_window: empty history");
    const double hi = t.back();
    return FitWindow{std::max(1.0, hi / 10.0), hi};
}

} // namespace decaylab
