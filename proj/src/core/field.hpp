#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/numerics.hpp"

namespace slab {

// A complex-valued function on a disc together with its Wirtinger z-bar
// derivative. The derivative is either supplied in closed form or produced on
// demand by centered finite differences with Richardson extrapolation.
struct FieldOnDisc {
    std::function<Complex(Complex)> h;
    std::function<Complex(Complex)> h_zbar;  // null => finite differences
    bool closed_form_zbar = true;
    double fd_step = 1e-5;  // absolute step used when differencing

    Complex eval(Complex z) const { return h(z); }
    Complex eval_zbar(Complex z) const;
};

// Centered-difference Wirtinger derivative d/dzbar = (d/du + i d/dv)/2,
// Richardson-extrapolated over steps {step, step/2} (ratio 2, order 2).
Complex wirtinger_zbar_fd(const std::function<Complex(Complex)>& h, Complex z,
                          double step);

// Same for d/dz = (d/du - i d/dv)/2.
Complex wirtinger_z_fd(const std::function<Complex(Complex)>& h, Complex z,
                       double step);

// Registered corpus, addressable by name from the CLI and the C API.
FieldOnDisc make_named_field(const std::string& name);
std::vector<std::string> named_field_list();

// Pointwise weak-holomorphy witness |h_zbar| <= phi(z) * G(|h|).
struct GrowthBound {
    std::function<double(Complex)> phi;
    std::function<double(double)> G;
    double p = 3.0;  // integrability exponent recorded with the bound
};

}  // namespace slab
