// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsvar/errors.hpp"

namespace tsvar {

/// Absolute tolerance used for point membership and deduplication.
inline constexpr double kPointTolerance = 1e-12;

/// A finite time scale: a strictly increasing sequence of real sample points.
///
/// The jump operators, graininess functions, kappa restrictions and the
/// dual scale are all exact on finite scales; every operation here is pure
/// and TimeScale values are immutable after construction.
class TimeScale {
public:
    /// Build a scale from arbitrary points; sorts and removes duplicates
    /// (absolute tolerance 1e-12). Throws EmptyTimeScale if nothing survives.
    static TimeScale from_points(std::span<const double> xs);
    static TimeScale from_points(std::initializer_list<double> xs);

    /// Uniform grid {a, a+h, ..., b}. (b-a)/h must be within 1e-9 of an
    /// integer, otherwise BadGrid.
    static TimeScale uniform(double a, double b, double h);

    /// Geometric grid {q^kmin, ..., q^kmax} for q > 1.
    static TimeScale qscale(double q, int kmin, int kmax);

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<double>& points() const noexcept { return points_; }
    double point(std::size_t i) const { return points_.at(i); }
    double min() const { return points_.front(); }
    double max() const { return points_.back(); }

    /// Index of the point equal to t (tolerance 1e-12); throws NotInScale.
    std::size_t index_of(double t) const;
    bool contains(double t) const noexcept;

    /// Forward jump: the next point, or t itself at the maximum.
    double sigma(double t) const;
    /// Backward jump: the previous point, or t itself at the minimum.
    double rho(double t) const;
    /// Forward graininess sigma(t) - t; zero at the maximum.
    double mu(double t) const;
    /// Backward graininess t - rho(t); zero at the minimum.
    double nu(double t) const;

    // Index-based variants used by grid computations.
    double sigma_at(std::size_t i) const;
    double rho_at(std::size_t i) const;
    double mu_at(std::size_t i) const;
    double nu_at(std::size_t i) const;

    /// Scale without its maximum (the natural delta-derivative domain).
    TimeScale kappa_up() const;
    /// Scale without its minimum (the natural nabla-derivative domain).
    TimeScale kappa_down() const;

    /// The negated scale {-t : t in T}; an exact involution.
    TimeScale dual() const;

    /// Points of the scale inside [a, b]; a and b must belong to the scale.
    TimeScale restrict(double a, double b) const;

    /// Exact (bitwise) point-sequence equality.
    bool operator==(const TimeScale& other) const noexcept {
        return points_ == other.points_;
    }

private:
    explicit TimeScale(std::vector<double> pts) : points_(std::move(pts)) {}

    std::vector<double> points_;
};

}  // namespace tsvar
