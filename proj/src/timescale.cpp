// SPDX-License-Identifier: MIT
#include "tsvar/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tsvar {

TimeScale TimeScale::from_points(std::span<const double> xs) {
    std::vector<double> pts(xs.begin(), xs.end());
    std::sort(pts.begin(), pts.end());
    std::vector<double> unique;
    unique.reserve(pts.size());
    for (double p : pts) {
        if (unique.empty() || p - unique.back() > kPointTolerance) {
            unique.push_back(p);
        }
    }
    if (unique.empty()) {
        throw EmptyTimeScale("time scale has no points");
    }
    return TimeScale(std::move(unique));
}

TimeScale TimeScale::from_points(std::initializer_list<double> xs) {
    return from_points(std::span<const double>(xs.begin(), xs.size()));
}

TimeScale TimeScale::uniform(double a, double b, double h) {
    if (!(h > 0.0)) {
        throw BadGrid("uniform grid requires h > 0");
    }
    if (!(a < b)) {
        throw BadGrid("uniform grid requires a < b");
    }
    const double steps = (b - a) / h;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 || rounded < 1.0) {
        throw BadGrid("(b - a)/h = " + std::to_string(steps) +
                      " is not close to an integer");
    }
    const auto n = static_cast<std::size_t>(rounded);
    std::vector<double> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        pts[i] = a + static_cast<double>(i) * h;
    }
    pts.back() = b;  // pin the endpoint against accumulated rounding
    return TimeScale(std::move(pts));
}

TimeScale TimeScale::qscale(double q, int kmin, int kmax) {
    if (!(q > 1.0)) {
        throw BadGrid("qscale requires q > 1");
    }
    if (kmin > kmax) {
        throw BadGrid("qscale requires kmin <= kmax");
    }
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(kmax - kmin) + 1);
    for (int k = kmin; k <= kmax; ++k) {
        pts.push_back(std::pow(q, k));
    }
    return TimeScale(std::move(pts));
}

std::size_t TimeScale::index_of(double t) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    // Candidate positions: *it and its predecessor.
    if (it != points_.end() && std::abs(*it - t) <= kPointTolerance) {
        return static_cast<std::size_t>(it - points_.begin());
    }
    if (it != points_.begin() && std::abs(*(it - 1) - t) <= kPointTolerance) {
        return static_cast<std::size_t>(it - points_.begin()) - 1;
    }
    throw NotInScale("point " + std::to_string(t) + " is not in the time scale");
}

bool TimeScale::contains(double t) const noexcept {
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    if (it != points_.end() && std::abs(*it - t) <= kPointTolerance) return true;
    if (it != points_.begin() && std::abs(*(it - 1) - t) <= kPointTolerance) return true;
    return false;
}

double TimeScale::sigma(double t) const { return sigma_at(index_of(t)); }
double TimeScale::rho(double t) const { return rho_at(index_of(t)); }
double TimeScale::mu(double t) const { return mu_at(index_of(t)); }
double TimeScale::nu(double t) const { return nu_at(index_of(t)); }

double TimeScale::sigma_at(std::size_t i) const {
    return i + 1 < points_.size() ? points_[i + 1] : points_[i];
}

double TimeScale::rho_at(std::size_t i) const {
    return i > 0 ? points_[i - 1] : points_[i];
}

double TimeScale::mu_at(std::size_t i) const { return sigma_at(i) - points_.at(i); }
double TimeScale::nu_at(std::size_t i) const { return points_.at(i) - rho_at(i); }

TimeScale TimeScale::kappa_up() const {
    if (points_.size() < 2) {
        throw TooSmall("kappa restriction needs at least 2 points");
    }
    return TimeScale(std::vector<double>(points_.begin(), points_.end() - 1));
}

TimeScale TimeScale::kappa_down() const {
    if (points_.size() < 2) {
        throw TooSmall("kappa restriction needs at least 2 points");
    }
    return TimeScale(std::vector<double>(points_.begin() + 1, points_.end()));
}

TimeScale TimeScale::dual() const {
    std::vector<double> pts(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        pts[points_.size() - 1 - i] = -points_[i];
    }
    return TimeScale(std::move(pts));
}

TimeScale TimeScale::restrict(double a, double b) const {
    const std::size_t ia = index_of(a);
    const std::size_t ib = index_of(b);
    if (ia > ib) {
        throw NotInScale("restrict requires a <= b");
    }
    return TimeScale(std::vector<double>(points_.begin() + static_cast<std::ptrdiff_t>(ia),
                                         points_.begin() + static_cast<std::ptrdiff_t>(ib) + 1));
}

}  // namespace tsvar
