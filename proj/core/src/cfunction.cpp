#include "drchaos/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "drchaos/errors.hpp"
#include "drchaos/parallel.hpp"
#include "cfit.hpp"

namespace drchaos {

namespace {

std::vector<double> window_samples(const CFitOptions& opt) {
    if (!(opt.window_lo > 0.0 && opt.window_hi > opt.window_lo)) throw DomainError("c-function window must satisfy 0 < lo < hi");
    if (opt.samples < 4) throw DomainError("c-function fit needs at least 4 samples");
    std::vector<double> t(opt.samples);
    for (int i = 0; i < opt.samples; ++i) {
        t[i] = opt.window_lo + (opt.window_hi - opt.window_lo) * i / (opt.samples - 1);
    }
    return t;
}

}  // namespace

namespace detail {

// Least squares phi(t) e^{rho t} ~ sum_{k=0..K} (a_k e^{(i lambda - k) t} + b_k e^{(-i lambda - k) t});
// c+ = a_0, c- = b_0. Columns are scaled by e^{k t_0} to keep the system balanced.
CFitResult fit_window(double lambda, double rho, std::span<const double> t, std::span<const cplx> phi,
                      int correction_orders) {
    if (correction_orders < 0) throw DomainError("correction orders must be >= 0");
    const auto n = static_cast<Eigen::Index>(t.size());
    const int cols = 2 * (correction_orders + 1);
    if (n < cols) throw DomainError("too few samples for the c-function fit");
    Eigen::MatrixXcd A(n, cols);
    Eigen::VectorXcd b(n);
    const cplx I(0.0, 1.0);
    const double t0 = t.front();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int k = 0; k <= correction_orders; ++k) {
            const double damp = std::exp(-k * (t[i] - t0));
            A(i, 2 * k) = damp * std::exp(I * lambda * t[i]);
            A(i, 2 * k + 1) = damp * std::exp(-I * lambda * t[i]);
        }
        b[i] = phi[i] * std::exp(rho * t[i]);
    }
    const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
    const double rms = (A * x - b).norm() / std::sqrt(static_cast<double>(n));
    const double scale = std::abs(x[0]);
    double defect = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        defect = std::max(defect, std::abs(b[i] - x[0] * A(i, 0) - x[1] * A(i, 1)));
    }
    CFitResult out{x[0], x[1], rms / scale};
    out.leading_defect = defect / scale;
    return out;
}

}  // namespace detail

CFitResult fit_cfunction_at(double lambda, const DRSpaceParams& p, const CFitOptions& opt) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("c-function fit needs lambda > 0");
    const auto t = window_samples(opt);
    const auto phi = phi_values(lambda, p, t, opt.ode);
    return detail::fit_window(lambda, p.rho(), t, phi, opt.correction_orders);
}

CFunctionTable fit_cfunction(std::span<const double> lambdas, const DRSpaceParams& p, const CFitOptions& opt) {
    std::vector<double> ls;
    ls.reserve(lambdas.size());
    for (double l : lambdas) {
        const double a = std::abs(l);
        if (!(a >= opt.min_lambda) || !std::isfinite(a)) {
            std::ostringstream os;
            os << "|lambda| = " << a << " is below the c-function fit limit " << opt.min_lambda;
            throw DomainError(os.str());
        }
        ls.push_back(a);
    }
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

    CFunctionTable table{p, ls, {}, {}, {}, opt.window_lo, opt.window_hi};
    table.c_values.resize(ls.size());
    table.c_minus_values.resize(ls.size());
    table.fit_residuals.resize(ls.size());
    parallel_for(ls.size(), [&](std::size_t i) {
        const auto fit = fit_cfunction_at(ls[i], p, opt);
        table.c_values[i] = fit.c_plus;
        table.c_minus_values[i] = fit.c_minus;
        table.fit_residuals[i] = fit.residual;
    });
    return table;
}

double plancherel_density(double lambda, const CFunctionTable& table) {
    const double a = std::abs(lambda);
    const auto& ls = table.lambdas;
    if (ls.empty()) throw DomainError("empty c-function table");
    if (a < ls.front() || a > ls.back()) {
        std::ostringstream os;
        os << "|lambda| = " << a << " outside the c-function table [" << ls.front() << ", " << ls.back() << "]";
        throw DomainError(os.str());
    }
    auto w = [&](std::size_t i) { return 1.0 / std::norm(table.c_values[i]); };
    if (ls.size() < 4) {
        // Linear fallback for tiny tables.
        if (ls.size() == 1) return w(0);
        const auto hi = std::min<std::size_t>(
            std::max<std::size_t>(std::lower_bound(ls.begin(), ls.end(), a) - ls.begin(), 1), ls.size() - 1);
        const double s = (a - ls[hi - 1]) / (ls[hi] - ls[hi - 1]);
        return (1.0 - s) * w(hi - 1) + s * w(hi);
    }
    const auto pos = static_cast<std::size_t>(std::lower_bound(ls.begin(), ls.end(), a) - ls.begin());
    const std::size_t start = std::min(pos >= 2 ? pos - 2 : 0, ls.size() - 4);
    double out = 0.0;
    for (std::size_t i = start; i < start + 4; ++i) {
        double basis = 1.0;
        for (std::size_t j = start; j < start + 4; ++j) {
            if (j != i) basis *= (a - ls[j]) / (ls[i] - ls[j]);
        }
        out += basis * w(i);
    }
    return out;
}

}  // namespace drchaos
