#pragma once

#include <cmath>

namespace pks {

// x^e for x >= 0 with cheap paths for the exponents that show up
// in the reference laws (integers and half integers).
class PowFn {
public:
    PowFn() = default;
    explicit PowFn(double e) : e_(e) {
        if (e == 0.0) kind_ = K0;
        else if (e == 1.0) kind_ = K1;
        else if (e == 2.0) kind_ = K2;
        else if (e == 3.0) kind_ = K3;
        else if (e == 4.0) kind_ = K4;
        else if (e == 0.5) kind_ = KH1;
        else if (e == 1.5) kind_ = KH3;
        else if (e == 2.5) kind_ = KH5;
        else if (e == 1.0 / 3.0) kind_ = KCBRT;
        else kind_ = KGEN;
    }

    double operator()(double x) const {
        switch (kind_) {
        case K0: return 1.0;
        case K1: return x;
        case K2: return x * x;
        case K3: return x * x * x;
        case K4: { double y = x * x; return y * y; }
        case KH1: return std::sqrt(x);
        case KH3: return x * std::sqrt(x);
        case KH5: return x * x * std::sqrt(x);
        case KCBRT: return std::cbrt(x);
        default: return std::pow(x, e_);
        }
    }
    double exponent() const { return e_; }

private:
    enum Kind { K0, K1, K2, K3, K4, KH1, KH3, KH5, KCBRT, KGEN };
    double e_ = 1.0;
    Kind kind_ = K1;
};

} // namespace pks
