#pragma once

#include <string>
#include <vector>

#include "decaylab/errors.hpp"

namespace decaylab {

struct FitWindow {
    double lo = 0.0;
    double hi = 0.0;
};

struct FitResult {
    double rate = 0.0;   // power exponent p or exponential rate r
    double stderr_ = 0.0;
    double rss = 0.0;    // residual sum of squares in log space
    int n_points = 0;
};

enum class DecayModel { PowerLaw, Exponential };

// Least squares of log v against log t; returns p with v ~ t^(-p).
FitResult fit_power(const std::vector<double>& t, const std::vector<double>& v, FitWindow w);

// Least squares of log v against t; returns r with v ~ exp(-r t).
FitResult fit_exp(const std::vector<double>& t, const std::vector<double>& v, FitWindow w);

struct Classification {
    DecayModel model = DecayModel::Exponential;
    FitResult power;
    FitResult exponential;
    const FitResult& selected() const {
        return model == DecayModel::PowerLaw ? power : exponential;
    }
};

// Fits both models on the tail window and keeps the smaller residual.
// Requires the history to span at least two decades in t.
Classification classify_decay(const std::vector<double>& t, const std::vector<double>& v,
                              FitWindow w);

// Rate predicted by the decay bounds: t^(-alpha/gamma) for the mixed
// derivative, exp(-t/C) for the classical derivative with gamma <= 1,
// t^(-1/(gamma-1)) for the classical derivative with gamma > 1.
struct PredictedDecay {
    DecayModel model = DecayModel::Exponential;
    double exponent = 0.0; // power case only; the exponential constant is free
};

PredictedDecay predicted_decay(double lambda1, double alpha, double gamma);

struct DecayReport {
    Classification classified;
    PredictedDecay predicted;
    FitWindow window;
    bool pass = false;
    double relative_deviation = 0.0; // (predicted - fitted)/predicted, power case
    std::string note;
};

// Upper-bound verdict: decaying faster than predicted never fails; only a
// slower-than-predicted rate (beyond the tolerance) does. gamma_theorem must
// belong to {1,2,3}, the exponents the operator families deliver.
DecayReport build_report(double lambda1, double alpha, double gamma_theorem,
                         const std::vector<double>& t, const std::vector<double>& v, FitWindow w,
                         double power_tol);

// Default tail window [max(1, hi/10), hi] used when none is configured.
FitWindow default_window(const std::vector<double>& t);

} // namespace decaylab
