#include "core/field.hpp"

#include <cmath>

namespace slab {

Complex FieldOnDisc::eval_zbar(Complex z) const {
    if (h_zbar) return h_zbar(z);
    return wirtinger_zbar_fd(h, z, fd_step);
}

namespace {

Complex zbar_fd_once(const std::function<Complex(Complex)>& h, Complex z, double s) {
    const Complex du = (h(z + s) - h(z - s)) / (2.0 * s);
    const Complex dv = (h(z + Complex(0, s)) - h(z - Complex(0, s))) / (2.0 * s);
    return 0.5 * (du + Complex(0, 1) * dv);
}

Complex z_fd_once(const std::function<Complex(Complex)>& h, Complex z, double s) {
    const Complex du = (h(z + s) - h(z - s)) / (2.0 * s);
    const Complex dv = (h(z + Complex(0, s)) - h(z - Complex(0, s))) / (2.0 * s);
    return 0.5 * (du - Complex(0, 1) * dv);
}

}  // namespace

Complex wirtinger_zbar_fd(const std::function<Complex(Complex)>& h, Complex z,
                          double step) {
    const Complex c1 = zbar_fd_once(h, z, step);
    const Complex c2 = zbar_fd_once(h, z, 0.5 * step);
    return (4.0 * c2 - c1) / 3.0;  // eliminate the O(step^2) term
}

Complex wirtinger_z_fd(const std::function<Complex(Complex)>& h, Complex z,
                       double step) {
    const Complex c1 = z_fd_once(h, z, step);
    const Complex c2 = z_fd_once(h, z, 0.5 * step);
    return (4.0 * c2 - c1) / 3.0;
}

namespace {

FieldOnDisc holo(std::function<Complex(Complex)> h) {
    FieldOnDisc f;
    f.h = std::move(h);
    f.h_zbar = [](Complex) { return Complex(0.0); };
    return f;
}

}  // namespace

FieldOnDisc make_named_field(const std::string& name) {
    if (name == "one") return holo([](Complex) { return Complex(1.0); });
    if (name == "z") return holo([](Complex z) { return z; });
    if (name == "z^2") return holo([](Complex z) { return z * z; });
    if (name == "z^3") return holo([](Complex z) { return z * z * z; });
    if (name == "z^4") return holo([](Complex z) { return z * z * z * z; });
    if (name == "z^5") return holo([](Complex z) { return z * z * z * z * z; });
    if (name == "z^6") return holo([](Complex z) { return z * z * z * z * z * z; });
    if (name == "(z-0.2)^2*(3+z)") {
        return holo([](Complex z) {
            const Complex w = z - 0.2;
            return w * w * (3.0 + z);
        });
    }
    if (name == "(z-1)^2*exp(z)") {
        return holo([](Complex z) {
            const Complex w = z - 1.0;
            return w * w * std::exp(z);
        });
    }
    if (name == "zbar") {
        FieldOnDisc f;
        f.h = [](Complex z) { return std::conj(z); };
        f.h_zbar = [](Complex) { return Complex(1.0); };
        return f;
    }
    if (name == "z^2*zbar") {
        FieldOnDisc f;
        f.h = [](Complex z) { return z * z * std::conj(z); };
        f.h_zbar = [](Complex z) { return z * z; };
        return f;
    }
    if (name == "z^2*zbar^2") {
        FieldOnDisc f;
        f.h = [](Complex z) { return std::norm(z) * std::norm(z); };
        f.h_zbar = [](Complex z) { return 2.0 * z * z * std::conj(z); };
        return f;
    }
    if (name == "z*exp(zbar)") {
        FieldOnDisc f;
        f.h = [](Complex z) { return z * std::exp(std::conj(z)); };
        f.h_zbar = [](Complex z) { return z * std::exp(std::conj(z)); };
        return f;
    }
    throw DomainError("unknown field name: " + name);
}

std::vector<std::string> named_field_list() {
    return {"one",   "z",          "z^2",        "z^3",
            "z^4",   "z^5",        "z^6",        "zbar",
            "z^2*zbar", "z^2*zbar^2", "z*exp(zbar)", "(z-0.2)^2*(3+z)",
            "(z-1)^2*exp(z)"};
}

}  // namespace slab
