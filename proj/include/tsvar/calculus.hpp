// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

#include "tsvar/timescale.hpp"
#include "tsvar/vec.hpp"

namespace tsvar {

/// A vector-valued function sampled on exactly the points of a time scale.
///
/// Immutable after construction; one value vector per scale point, all of
/// the same dimension n >= 1.
class GridFunction {
public:
    GridFunction(TimeScale scale, std::vector<Vec> values);

    /// Convenience constructor for scalar (n = 1) functions.
    static GridFunction scalar(TimeScale scale, std::vector<double> values);

    /// Sample a callable t -> Vec on every point of the scale.
    static GridFunction sample(TimeScale scale, std::size_t dim,
                               const std::function<Vec(double)>& fn);

    const TimeScale& scale() const noexcept { return scale_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return values_.size(); }

    const Vec& value(std::size_t i) const { return values_.at(i); }
    const std::vector<Vec>& values() const noexcept { return values_; }

    /// Value at the scale point equal to t (tolerance 1e-12).
    const Vec& value_at(double t) const { return values_.at(scale_.index_of(t)); }

    /// Scalar accessor; requires dim() == 1.
    double scalar_value(std::size_t i) const;

private:
    TimeScale scale_;
    std::vector<Vec> values_;
    std::size_t dim_;
};

/// Backward difference quotient (f(t) - f(rho(t))) / nu(t) on the scale
/// without its minimum.
GridFunction nabla_derivative(const GridFunction& f);

/// Forward difference quotient (f(sigma(t)) - f(t)) / mu(t) on the scale
/// without its maximum.
GridFunction delta_derivative(const GridFunction& f);

/// Right-closed Cauchy sum over (a, b]: sum of nu(t) * f(t).
Vec nabla_integral(const GridFunction& f, double a, double b);

/// Left-closed Cauchy sum over [a, b): sum of mu(t) * f(t).
Vec delta_integral(const GridFunction& f, double a, double b);

/// Running integral t -> integral over (a, t], defined on the points of the
/// scale from a to the maximum; zero at t = a.
GridFunction cumulative_nabla_integral(const GridFunction& f, double a);

/// The dual function f*(s) = f(-s) on the negated scale.
GridFunction dual_function(const GridFunction& f);

/// t -> f(rho(t)) on the same scale.
GridFunction compose_rho(const GridFunction& f);

/// t -> f(sigma(t)) on the same scale.
GridFunction compose_sigma(const GridFunction& f);

}  // namespace tsvar
