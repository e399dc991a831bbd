#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "drchaos/nagroup.hpp"

namespace drchaos {

using cplx = std::complex<double>;

/// Geodesic-sphere volume density A(r) = 2^{m+l} sinh^{m+l}(r/2) cosh^l(r/2).
double volume_density(double r, const DRSpaceParams& p);
/// log A(r), stable for large r. r > 0.
double log_volume_density(double r, const DRSpaceParams& p);
/// (d/dr) log A(r) = ((m+l)/2) coth(r/2) + (l/2) tanh(r/2).
double density_log_derivative(double r, const DRSpaceParams& p);

/// Composite Gauss-Legendre discretisation of (0, r_max] carrying the volume density.
class RadialGrid {
public:
    static constexpr int default_panel_points = 32;

    /// n nodes split into panels of `panel_points` Gauss-Legendre nodes.
    /// Requires r_max > 0, n >= 16 and n divisible by panel_points.
    static std::shared_ptr<const RadialGrid> build(double r_max, int n, const DRSpaceParams& p,
                                                   int panel_points = default_panel_points);
    /// Trapezoidal weights on tabulated radii (strictly increasing, >= 0), e.g. profiles
    /// read back from CSV. r_max is the last radius.
    static std::shared_ptr<const RadialGrid> from_samples(std::vector<double> r, const DRSpaceParams& p);

    std::span<const double> r() const noexcept { return r_; }
    std::span<const double> w() const noexcept { return w_; }
    std::span<const double> dens() const noexcept { return dens_; }
    double r_max() const noexcept { return r_max_; }
    std::size_t size() const noexcept { return r_.size(); }
    const DRSpaceParams& params() const noexcept { return params_; }

    /// Index of the last node with r <= radius (size() - 1 when radius >= r_max).
    std::size_t last_index_within(double radius) const;

private:
    RadialGrid(DRSpaceParams p) : params_(p) {}

    DRSpaceParams params_;
    std::vector<double> r_;
    std::vector<double> w_;
    std::vector<double> dens_;
    double r_max_ = 0.0;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Complex samples of a radial function on a grid.
struct RadialProfile {
    GridPtr grid;
    std::vector<cplx> values;

    RadialProfile() = default;
    RadialProfile(GridPtr g, std::vector<cplx> v);
    static RadialProfile zeros(GridPtr g);

    template <class F>
    static RadialProfile sample(GridPtr g, F&& f) {
        std::vector<cplx> v(g->size());
        const auto r = g->r();
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(r[i]);
        return RadialProfile(std::move(g), std::move(v));
    }

    std::size_t size() const noexcept { return values.size(); }
    double sup_norm() const;
    /// Same values with every node beyond `radius` set to zero.
    RadialProfile truncated(double radius) const;
};

/// sum_i w_i dens_i f_i.
cplx radial_integral(const RadialProfile& f);

/// Volume of the geodesic ball of radius R, by adaptive quadrature of A.
double ball_volume(double R, const DRSpaceParams& p);

/// CSV with header "r,re,im".
void write_profile_csv(std::ostream& os, const RadialProfile& f);

}  // namespace drchaos
