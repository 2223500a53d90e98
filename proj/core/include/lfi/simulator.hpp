#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "lfi/rng.hpp"

namespace lfi {

/// A point in the d-dimensional parameter space. Coordinates are always finite.
class ParameterPoint {
public:
    ParameterPoint() = default;
    explicit ParameterPoint(Eigen::VectorXd coords);
    ParameterPoint(std::initializer_list<double> coords);

    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(coords_.size()); }
    [[nodiscard]] const Eigen::VectorXd& coords() const { return coords_; }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }

    friend bool operator==(const ParameterPoint& a, const ParameterPoint& b) {
        return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
    }

private:
    Eigen::VectorXd coords_;
};

/// n x m matrix of samples, n >= 2, all entries finite.
class DataSet {
public:
    explicit DataSet(Eigen::MatrixXd values);

    [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
    [[nodiscard]] const Eigen::MatrixXd& values() const { return values_; }

    friend bool operator==(const DataSet& a, const DataSet& b) {
        return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
               a.values_ == b.values_;
    }

private:
    Eigen::MatrixXd values_;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] double width() const { return hi - lo; }
};

/// Axis-aligned box [lo_i, hi_i] with lo_i < hi_i.
class Box {
public:
    Box() = default;
    explicit Box(std::vector<Interval> sides);

    [[nodiscard]] std::size_t dimension() const { return sides_.size(); }
    [[nodiscard]] const Interval& operator[](std::size_t i) const { return sides_[i]; }
    [[nodiscard]] const std::vector<Interval>& sides() const { return sides_; }
    [[nodiscard]] bool contains(const ParameterPoint& p) const;
    [[nodiscard]] double volume() const;
    [[nodiscard]] ParameterPoint clamp(const Eigen::VectorXd& x) const;
    [[nodiscard]] ParameterPoint sample_uniform(Rng& rng) const;

private:
    std::vector<Interval> sides_;
};

struct SimulatorSpec {
    Box bounds;
    std::size_t sample_size = 0;

    [[nodiscard]] std::size_t dimension() const { return bounds.dimension(); }
    void validate() const;
};

/// Generative model theta -> data. Implementations must be pure functions of
/// (theta, n, seed) and safe to call concurrently.
class Simulator {
public:
    virtual ~Simulator() = default;

    [[nodiscard]] virtual std::size_t parameter_dimension() const = 0;
    [[nodiscard]] virtual std::size_t observation_dimension() const = 0;
    [[nodiscard]] virtual DataSet simulate(const ParameterPoint& theta, std::size_t n, RngSeed seed) const = 0;
};

/// n i.i.d. draws from Normal(theta, 1).
DataSet simulate_gaussian(const ParameterPoint& theta, std::size_t n, RngSeed seed);

/// The observed dataset of the toy problem: true mean 0.
DataSet observed_data(std::size_t n, RngSeed seed);

/// Seed used for the observed dataset when a run does not override it.
inline constexpr RngSeed kCanonicalObservedSeed{20150701, 0};

class GaussianMeanSimulator final : public Simulator {
public:
    [[nodiscard]] std::size_t parameter_dimension() const override { return 1; }
    [[nodiscard]] std::size_t observation_dimension() const override { return 1; }
    [[nodiscard]] DataSet simulate(const ParameterPoint& theta, std::size_t n, RngSeed seed) const override {
        return simulate_gaussian(theta, n, seed);
    }
};

}  // namespace lfi
