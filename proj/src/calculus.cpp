// SPDX-License-Identifier: MIT
#include "tsvar/calculus.hpp"

#include <string>
#include <utility>

namespace tsvar {

GridFunction::GridFunction(TimeScale scale, std::vector<Vec> values)
    : scale_(std::move(scale)), values_(std::move(values)), dim_(0) {
    if (values_.size() != scale_.size()) {
        throw DimensionMismatch("grid function needs one value per scale point (" +
                                std::to_string(scale_.size()) + " points, " +
                                std::to_string(values_.size()) + " values)");
    }
    dim_ = values_.front().size();
    if (dim_ == 0) {
        throw DimensionMismatch("grid function values must have dimension >= 1");
    }
    for (const Vec& v : values_) {
        if (v.size() != dim_) {
            throw DimensionMismatch("grid function values have mixed dimensions");
        }
    }
}

GridFunction GridFunction::scalar(TimeScale scale, std::vector<double> values) {
    std::vector<Vec> wrapped;
    wrapped.reserve(values.size());
    for (double v : values) wrapped.push_back(Vec{v});
    return GridFunction(std::move(scale), std::move(wrapped));
}

GridFunction GridFunction::sample(TimeScale scale, std::size_t dim,
                                  const std::function<Vec(double)>& fn) {
    std::vector<Vec> values;
    values.reserve(scale.size());
    for (double t : scale.points()) {
        Vec v = fn(t);
        if (v.size() != dim) {
            throw DimensionMismatch("sampled value has wrong dimension");
        }
        values.push_back(std::move(v));
    }
    return GridFunction(std::move(scale), std::move(values));
}

double GridFunction::scalar_value(std::size_t i) const {
    if (dim_ != 1) {
        throw DimensionMismatch("scalar_value on a grid function of dimension " +
                                std::to_string(dim_));
    }
    return values_.at(i)[0];
}

GridFunction nabla_derivative(const GridFunction& f) {
    const TimeScale& T = f.scale();
    if (T.size() < 2) {
        throw TooSmall("nabla derivative needs at least 2 points");
    }
    std::vector<Vec> out;
    out.reserve(T.size() - 1);
    for (std::size_t i = 1; i < T.size(); ++i) {
        out.push_back((f.value(i) - f.value(i - 1)) / T.nu_at(i));
    }
    return GridFunction(T.kappa_down(), std::move(out));
}

GridFunction delta_derivative(const GridFunction& f) {
    const TimeScale& T = f.scale();
    if (T.size() < 2) {
        throw TooSmall("delta derivative needs at least 2 points");
    }
    std::vector<Vec> out;
    out.reserve(T.size() - 1);
    for (std::size_t i = 0; i + 1 < T.size(); ++i) {
        out.push_back((f.value(i + 1) - f.value(i)) / T.mu_at(i));
    }
    return GridFunction(T.kappa_up(), std::move(out));
}

Vec nabla_integral(const GridFunction& f, double a, double b) {
    const TimeScale& T = f.scale();
    const std::size_t ia = T.index_of(a);
    const std::size_t ib = T.index_of(b);
    if (ia > ib) {
        throw NotInScale("nabla integral requires a <= b");
    }
    Vec sum(f.dim(), 0.0);
    for (std::size_t i = ia + 1; i <= ib; ++i) {
        const double w = T.nu_at(i);
        const Vec& v = f.value(i);
        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += w * v[c];
    }
    return sum;
}

Vec delta_integral(const GridFunction& f, double a, double b) {
    const TimeScale& T = f.scale();
    const std::size_t ia = T.index_of(a);
    const std::size_t ib = T.index_of(b);
    if (ia > ib) {
        throw NotInScale("delta integral requires a <= b");
    }
    Vec sum(f.dim(), 0.0);
    for (std::size_t i = ia; i < ib; ++i) {
        const double w = T.mu_at(i);
        const Vec& v = f.value(i);
        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += w * v[c];
    }
    return sum;
}

GridFunction cumulative_nabla_integral(const GridFunction& f, double a) {
    const TimeScale& T = f.scale();
    const std::size_t ia = T.index_of(a);
    std::vector<Vec> out;
    out.reserve(T.size() - ia);
    Vec running(f.dim(), 0.0);
    out.push_back(running);
    for (std::size_t i = ia + 1; i < T.size(); ++i) {
        const double w = T.nu_at(i);
        const Vec& v = f.value(i);
        for (std::size_t c = 0; c < running.size(); ++c) running[c] += w * v[c];
        out.push_back(running);
    }
    return GridFunction(T.restrict(a, T.max()), std::move(out));
}

GridFunction dual_function(const GridFunction& f) {
    std::vector<Vec> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[f.size() - 1 - i] = f.value(i);
    }
    return GridFunction(f.scale().dual(), std::move(out));
}

GridFunction compose_rho(const GridFunction& f) {
    std::vector<Vec> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out.push_back(f.value(i > 0 ? i - 1 : 0));
    }
    return GridFunction(f.scale(), std::move(out));
}

GridFunction compose_sigma(const GridFunction& f) {
    std::vector<Vec> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out.push_back(f.value(i + 1 < f.size() ? i + 1 : i));
    }
    return GridFunction(f.scale(), std::move(out));
}

}  // namespace tsvar
