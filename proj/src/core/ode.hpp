#pragma once

#include <functional>
#include <vector>

namespace slab {

// Dormand-Prince 5(4) embedded pair with PI step-size control and cubic
// Hermite dense output. Small fixed-purpose integrator; states are short
// vectors (2 for the graph chart, 3 for arclength).

using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dydt)>;

// Event function: integration stops when it first becomes true; the crossing
// is refined by bisection on the dense output.
struct OdeEvent {
    int id = 0;
    // Signed indicator; event fires at a sign change from the step start.
    std::function<double(double t, const std::vector<double>& y)> indicator;
};

struct DenseSegment {
    double t0 = 0, t1 = 0;
    std::vector<double> y0, y1, f0, f1;
    void eval(double t, std::vector<double>& y) const;
};

struct OdeSolution {
    std::vector<double> ts;
    std::vector<std::vector<double>> ys;
    std::vector<DenseSegment> dense;
    int event_id = -1;       // -1: reached t_end
    double event_t = 0.0;    // crossing location when event_id >= 0
    std::vector<double> event_y;
    bool step_underflow = false;

    // Hermite interpolation on the stored dense segments (t within range).
    void eval(double t, std::vector<double>& y) const;
};

struct OdeOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double initial_step = 1e-4;
    double max_step = 0.1;
    double min_step = 1e-14;
    long max_steps = 2000000;
    double event_tol = 1e-12;  // bisection tolerance in t
};

OdeSolution integrate_ode(const OdeRhs& rhs, double t0, std::vector<double> y0,
                          double t_end, const OdeOptions& opts,
                          const std::vector<OdeEvent>& events = {});

}  // namespace slab
