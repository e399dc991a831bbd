#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "drchaos/heat.hpp"
#include "drchaos/nagroup.hpp"
#include "drchaos/space_config.hpp"

namespace drtest {

using drchaos::cplx;

/// Deterministic generator for property tests. Every test case owns one, seeded by a
/// literal, so failures reproduce.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
    cplx complex(double re_lo, double re_hi, double im_lo, double im_hi) {
        return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
    }
    Eigen::VectorXd vector(int n, double scale = 2.0) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(-scale, scale);
        return v;
    }
    drchaos::GroupElement element(const drchaos::DRSpaceParams& p, double t_scale = 1.5) {
        return {vector(p.m()), vector(p.l()), uniform(-t_scale, t_scale)};
    }

private:
    std::mt19937_64 eng_;
};

inline drchaos::DRSpaceParams heis1() { return drchaos::build_heisenberg(1).params; }
inline drchaos::DRSpaceParams quat() { return drchaos::build_quaternionic().params; }
/// m = 2, l = 0: the spherical functions are elementary, sin(lambda r) / (2 lambda sinh(r/2)).
inline drchaos::DRSpaceParams real_hyperbolic() { return drchaos::DRSpaceParams::from_dims(2, 0); }

/// Default pipelines are about a second to build; share them across test cases.
const drchaos::Pipeline& pipeline_heis1();
const drchaos::Pipeline& pipeline_quat();

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace drtest
