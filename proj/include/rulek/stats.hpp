#pragma once

#include <cmath>
#include <cstddef>

namespace rulek {

/// Welford accumulator: mean, sample standard deviation, standard error.
class RunningStats {
public:
    void add(double x) noexcept {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] double mean() const noexcept { return mean_; }
    /// Sample (n - 1) standard deviation; 0 for fewer than two values.
    [[nodiscard]] double sd() const noexcept {
        return count_ < 2 ? 0.0 : std::sqrt(m2_ / static_cast<double>(count_ - 1));
    }
    [[nodiscard]] double se() const noexcept {
        return count_ == 0 ? 0.0 : sd() / std::sqrt(static_cast<double>(count_));
    }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace rulek
