#include "drchaos/radial_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "drchaos/errors.hpp"

namespace drchaos {

namespace {

using State = std::array<double, 4>;  // Re y, Im y, Re y', Im y'

struct Transformed {
    // y = e^{rho r} u satisfies y'' + (D - 2 rho) y' + (lambda^2 + 2 rho^2 - rho D) y = 0.
    cplx lam2;
    double rho;
    DRSpaceParams p;

    void operator()(const State& x, State& dx, double r) const {
        const double D = density_log_derivative(r, p);
        const cplx y(x[0], x[1]);
        const cplx yp(x[2], x[3]);
        const cplx ypp = -(D - 2.0 * rho) * yp - (lam2 + 2.0 * rho * rho - rho * D) * y;
        dx = {yp.real(), yp.imag(), ypp.real(), ypp.imag()};
    }
};

double norm2(const State& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]); }

struct Series {
    cplx a2, a4;
    cplx u(double r) const { return 1.0 + r * r * (a2 + a4 * r * r); }
    cplx du(double r) const { return r * (2.0 * a2 + 4.0 * a4 * r * r); }
};

Series series_at_origin(cplx lambda, const DRSpaceParams& p) {
    const double n = p.dim();
    const double kappa = (p.m() + p.l()) / 12.0 + p.l() / 4.0;
    const cplx E = lambda * lambda + p.rho() * p.rho();
    const cplx a2 = -E / (2.0 * n);
    const cplx a4 = -a2 * (2.0 * kappa + E) / (4.0 * (n + 2.0));
    return {a2, a4};
}

}  // namespace

RadialSolution solve_radial(cplx lambda, const DRSpaceParams& p, std::span<const double> points,
                            const OdeOptions& opt) {
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) throw DomainError("lambda must be finite");
    if (!(opt.rtol > 0.0) || !(opt.r0 > 0.0)) throw DomainError("ODE options need rtol > 0 and r0 > 0");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] >= 0.0) || !std::isfinite(points[i])) throw DomainError("radii must be finite and >= 0");
        if (i > 0 && points[i] < points[i - 1]) throw DomainError("radii must be sorted ascending");
    }

    RadialSolution out;
    out.u.resize(points.size());
    out.du.resize(points.size());
    const double rho = p.rho();
    const Series s = series_at_origin(lambda, p);

    std::size_t k = 0;
    for (; k < points.size() && points[k] <= opt.r0; ++k) {
        out.u[k] = s.u(points[k]);
        out.du[k] = s.du(points[k]);
    }
    if (k == points.size()) return out;

    const Transformed sys{lambda * lambda, rho, p};
    double r = opt.r0;
    {
        const double e = std::exp(rho * r);
        const cplx y = e * s.u(r);
        const cplx yp = e * (s.du(r) + rho * s.u(r));
        State x0{y.real(), y.imag(), yp.real(), yp.imag()};
        boost::numeric::odeint::runge_kutta_fehlberg78<State> stepper;
        State x = x0, xnew{}, xerr{};
        double h = 0.1 * r;  // proposed step, independent of landing truncation
        long steps = 0;
        constexpr double kSafety = 0.9;
        while (k < points.size()) {
            const double target = points[k];
            if (target > r) {
                const bool land = r + h >= target;
                const double dt = land ? target - r : h;
                stepper.do_step(sys, x, r, xnew, dt, xerr);
                const double scale = opt.rtol * std::max(norm2(x), norm2(xnew));
                const double err = norm2(xerr) / scale;
                if (!(err <= 1.0)) {
                    const double shrink =
                        std::isfinite(err) ? std::max(0.1, kSafety * std::pow(err, -1.0 / 8.0)) : 0.1;
                    h = dt * shrink;
                    if (h < opt.min_step) {
                        std::ostringstream os;
                        os << "radial ODE step size underflow at r = " << r << " for lambda = " << lambda;
                        throw ContractError(os.str());
                    }
                    continue;
                }
                if (++steps > opt.max_steps) throw ContractError("radial ODE exceeded the step budget");
                x = xnew;
                r = land ? target : r + dt;
                const double grow = err > 0.0 ? std::clamp(kSafety * std::pow(err, -1.0 / 8.0), 0.2, 5.0) : 5.0;
                h = land ? std::max(h, dt * grow) : dt * grow;
                if (!land) continue;
            }
            const double decay = std::exp(-rho * r);
            const cplx y(x[0], x[1]);
            const cplx yp(x[2], x[3]);
            out.u[k] = decay * y;
            out.du[k] = decay * (yp - rho * y);
            ++k;
        }
    }
    return out;
}

}  // namespace drchaos
