#pragma once

#include <cmath>

namespace lacunary {

/// Neumaier's variant of Kahan summation. Order-sensitive: callers add terms
/// in ascending index order so results are reproducible.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    CompensatedSum& operator-=(double x) noexcept { return *this += -x; }

    double value() const noexcept { return sum_ + comp_; }
    explicit operator double() const noexcept { return value(); }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace lacunary
