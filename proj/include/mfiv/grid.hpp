#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mfiv {

/// Ordered evaluation points s_0 < s_1 < ... < s_m on [a, b] with Riemann
/// weights delta_j = s_j - s_{j-1}. The j-th weight is attached to the right
/// endpoint s_j; s_0 carries no weight, so curves sampled on this grid hold
/// m values (one per weighted point).
class SamplingGrid {
public:
    static SamplingGrid uniform(int m, double a, double b);

    /// Build from the full point sequence s_0..s_m (must be strictly increasing).
    static SamplingGrid from_points(std::vector<double> pts);

    int size() const { return static_cast<int>(weights_.size()); }
    double a() const { return pts_.front(); }
    double b() const { return pts_.back(); }

    /// j-th weighted point s_{j+1}, j = 0..size()-1.
    double point(int j) const { return pts_[j + 1]; }
    double weight(int j) const { return weights_[j]; }

    const Eigen::VectorXd& weights() const { return weights_; }

    /// Weighted points s_1..s_m as a vector.
    Eigen::VectorXd points() const;

    bool operator==(const SamplingGrid& other) const;
    bool operator!=(const SamplingGrid& other) const { return !(*this == other); }

private:
    SamplingGrid(std::vector<double> pts, Eigen::VectorXd weights);

    std::vector<double> pts_;     // s_0..s_m
    Eigen::VectorXd weights_;     // delta_1..delta_m
};

/// A function sampled at the weighted points of a grid.
struct GridCurve {
    SamplingGrid grid;
    Eigen::VectorXd values;

    GridCurve(SamplingGrid g, Eigen::VectorXd v);
};

/// Discretized L2 inner product: sum_j f(s_j) g(s_j) delta_j.
double riemann_inner_product(const GridCurve& f, const GridCurve& g);

double l2_norm(const GridCurve& f);

/// Piecewise-linear interpolation of f onto the weighted points of `targets`.
/// Targets outside [s_1, s_m] of the source are rejected.
GridCurve interpolate_linear(const GridCurve& f, const SamplingGrid& targets);

}  // namespace mfiv
