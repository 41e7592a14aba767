#include "mfiv/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mfiv {

SamplingGrid::SamplingGrid(std::vector<double> pts, Eigen::VectorXd weights)
    : pts_(std::move(pts)), weights_(std::move(weights)) {}

SamplingGrid SamplingGrid::uniform(int m, double a, double b) {
    if (m < 1) throw std::invalid_argument("SamplingGrid::uniform: m must be >= 1");
    if (!(a < b)) throw std::invalid_argument("SamplingGrid::uniform: need a < b");
    std::vector<double> pts(m + 1);
    const double h = (b - a) / m;
    for (int j = 0; j <= m; ++j) pts[j] = a + j * h;
    pts[m] = b;
    return SamplingGrid(std::move(pts), Eigen::VectorXd::Constant(m, h));
}

SamplingGrid SamplingGrid::from_points(std::vector<double> pts) {
    if (pts.size() < 2) throw std::invalid_argument("SamplingGrid: need at least 2 points");
    const int m = static_cast<int>(pts.size()) - 1;
    Eigen::VectorXd w(m);
    for (int j = 0; j < m; ++j) {
        const double d = pts[j + 1] - pts[j];
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("SamplingGrid: points must be strictly increasing");
        w[j] = d;
    }
    return SamplingGrid(std::move(pts), std::move(w));
}

Eigen::VectorXd SamplingGrid::points() const {
    Eigen::VectorXd p(size());
    for (int j = 0; j < size(); ++j) p[j] = pts_[j + 1];
    return p;
}

bool SamplingGrid::operator==(const SamplingGrid& other) const {
    return pts_ == other.pts_;
}

GridCurve::GridCurve(SamplingGrid g, Eigen::VectorXd v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("GridCurve: values length must match grid size");
    if (!values.allFinite())
        throw std::invalid_argument("GridCurve: values must be finite");
}

double riemann_inner_product(const GridCurve& f, const GridCurve& g) {
    if (f.grid != g.grid)
        throw std::invalid_argument("riemann_inner_product: curves on different grids");
    return (f.values.array() * g.values.array() * f.grid.weights().array()).sum();
}

double l2_norm(const GridCurve& f) {
    return std::sqrt(riemann_inner_product(f, f));
}

GridCurve interpolate_linear(const GridCurve& f, const SamplingGrid& targets) {
    const int m = f.grid.size();
    const double lo = f.grid.point(0);
    const double hi = f.grid.point(m - 1);
    Eigen::VectorXd out(targets.size());
    int k = 0;  // source segment index, advances with the sorted targets
    for (int j = 0; j < targets.size(); ++j) {
        const double x = targets.point(j);
        if (x < lo || x > hi)
            throw std::invalid_argument("interpolate_linear: target outside source range");
        if (m == 1) {
            out[j] = f.values[0];
            continue;
        }
        while (k + 1 < m - 1 && f.grid.point(k + 1) < x) ++k;
        const double x0 = f.grid.point(k);
        const double x1 = f.grid.point(k + 1);
        const double t = (x - x0) / (x1 - x0);
        out[j] = (1.0 - t) * f.values[k] + t * f.values[k + 1];
    }
    return GridCurve(targets, std::move(out));
}

}  // namespace mfiv
