#include "lfi/simulator.hpp"

#include <cmath>
#include <string>

#include "lfi/error.hpp"

namespace lfi {

ParameterPoint::ParameterPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    if (!coords_.allFinite()) throw InvalidArgument("parameter point has non-finite coordinates");
}

ParameterPoint::ParameterPoint(std::initializer_list<double> coords)
    : ParameterPoint(Eigen::Map<const Eigen::VectorXd>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

DataSet::DataSet(Eigen::MatrixXd values) : values_(std::move(values)) {
    if (values_.rows() < 2) throw InvalidArgument("dataset needs at least two rows");
    if (values_.cols() < 1) throw InvalidArgument("dataset needs at least one column");
    if (!values_.allFinite()) throw InvalidArgument("dataset has non-finite entries");
}

Box::Box(std::vector<Interval> sides) : sides_(std::move(sides)) {
    if (sides_.empty()) throw InvalidArgument("box must have at least one dimension");
    for (std::size_t i = 0; i < sides_.size(); ++i) {
        const auto& s = sides_[i];
        if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi)) {
            throw InvalidArgument("box side " + std::to_string(i) + " must satisfy lo < hi with finite ends");
        }
    }
}

bool Box::contains(const ParameterPoint& p) const {
    if (p.dimension() != sides_.size()) return false;
    for (std::size_t i = 0; i < sides_.size(); ++i) {
        if (p[i] < sides_[i].lo || p[i] > sides_[i].hi) return false;
    }
    return true;
}

double Box::volume() const {
    double v = 1.0;
    for (const auto& s : sides_) v *= s.width();
    return v;
}

ParameterPoint Box::clamp(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(sides_.size()));
    for (std::size_t i = 0; i < sides_.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        out[ii] = std::min(std::max(x[ii], sides_[i].lo), sides_[i].hi);
    }
    return ParameterPoint(std::move(out));
}

ParameterPoint Box::sample_uniform(Rng& rng) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(sides_.size()));
    for (std::size_t i = 0; i < sides_.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = rng.uniform(sides_[i].lo, sides_[i].hi);
    }
    return ParameterPoint(std::move(out));
}

void SimulatorSpec::validate() const {
    if (bounds.dimension() == 0) throw InvalidArgument("simulator spec needs a non-empty box");
    if (sample_size < 2) throw InvalidArgument("sample size must be at least 2");
}

DataSet simulate_gaussian(const ParameterPoint& theta, std::size_t n, RngSeed seed) {
    if (theta.dimension() != 1) throw InvalidArgument("gaussian simulator takes a 1-d parameter");
    if (n < 2) throw InvalidArgument("gaussian simulator needs n >= 2");
    const double mean = theta[0];
    Rng rng(seed);
    Eigen::MatrixXd values(static_cast<Eigen::Index>(n), 1);
    for (Eigen::Index i = 0; i < values.rows(); ++i) values(i, 0) = mean + rng.normal();
    return DataSet(std::move(values));
}

DataSet observed_data(std::size_t n, RngSeed seed) { return simulate_gaussian(ParameterPoint{0.0}, n, seed); }

}  // namespace lfi
