#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hfg {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : Error { using Error::Error; };
struct UnsupportedInput : Error { using Error::Error; };
struct ParameterError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct UnreachableError : Error { using Error::Error; };

inline constexpr double kDropTol = 1e-14;   // fill-in threshold in row reduction
inline constexpr double kSeriesDrop = 0.0;  // series keep every nonzero coefficient
inline constexpr double kRankTol = 1e-10;

// 15 significant digits, shortest of %g style.
inline std::string fmt_real(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

// Plain real when the imaginary part vanishes, else re+imi.
inline std::string fmt_cplx(cplx c) {
    std::string s = fmt_real(c.real());
    double im = c.imag();
    if (im == 0.0) return s;
    if (im < 0) s += "-" + fmt_real(-im) + "i";
    else s += "+" + fmt_real(im) + "i";
    return s;
}

}  // namespace hfg
