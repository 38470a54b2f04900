#pragma once

#include <cmath>

namespace robinlab {

// Neumaier's variant of Kahan summation. Terms must be added in a fixed
// order for the result to be reproducible.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double initial) : sum_(initial) {}

    void add(double term) {
        const double t = sum_ + term;
        if (std::fabs(sum_) >= std::fabs(term))
            carry_ += (sum_ - t) + term;
        else
            carry_ += (term - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double term) {
        add(term);
        return *this;
    }

    double value() const { return sum_ + carry_; }
    double carry() const { return carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace robinlab
