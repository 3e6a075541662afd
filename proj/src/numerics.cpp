#include "shockstab/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace shockstab {

EigenPairs eig(const CMat& m) {
    if (m.rows() != m.cols()) throw NumericError("eig: matrix not square");
    Eigen::ComplexEigenSolver<CMat> es(m, true);
    if (es.info() != Eigen::Success) throw NumericError("eig: QR iteration did not converge");
    EigenPairs out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    for (int j = 0; j < out.vectors.cols(); ++j) {
        double n = out.vectors.col(j).norm();
        if (n > 0) out.vectors.col(j) /= n;
    }
    return out;
}

CVec eigenvalues(const CMat& m) {
    Eigen::ComplexEigenSolver<CMat> es(m, false);
    if (es.info() != Eigen::Success) throw NumericError("eigenvalues: QR iteration did not converge");
    return es.eigenvalues();
}

double norm2(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

double min_singular_value(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

namespace {

// Matrix sign function by scaled Newton iteration.
CMat matrix_sign(const CMat& a) {
    const int n = static_cast<int>(a.rows());
    CMat x = a;
    for (int it = 0; it < 100; ++it) {
        Eigen::PartialPivLU<CMat> lu(x);
        CMat xi = lu.inverse();
        double c = 1.0;
        if (it < 6) {
            double logdet = std::log(std::abs(lu.determinant()));
            c = std::exp(-logdet / n);
            if (!std::isfinite(c)) c = 1.0;
        }
        CMat next = 0.5 * (c * x + xi / c);
        double diff = (next - x).cwiseAbs().sum();
        double scale = next.cwiseAbs().sum();
        x = next;
        if (diff <= 1e-14 * scale && it >= 1) break;
    }
    return x;
}

}  // namespace

CMat projector_largest_real(const CMat& m, int k, double min_gap) {
    const int n = static_cast<int>(m.rows());
    if (k <= 0) return CMat::Zero(n, n);
    if (k >= n) return identity(n);
    CVec ev = eigenvalues(m);
    std::vector<double> re(n);
    for (int i = 0; i < n; ++i) re[i] = ev(i).real();
    std::sort(re.begin(), re.end(), std::greater<double>());
    double gap = re[k - 1] - re[k];
    double scale = std::max(1.0, std::abs(re[0]) + std::abs(re[n - 1]));
    if (gap < min_gap * scale) throw SpectralGapError("projector: real-part gap below tolerance");
    double s = 0.5 * (re[k - 1] + re[k]);
    CMat shifted = m - s * identity(n);
    CMat sg = matrix_sign(shifted);
    return 0.5 * (identity(n) + sg);
}

CMat spectral_projector(const CMat& m, const std::function<bool(cplx)>& select, double min_gap) {
    const int n = static_cast<int>(m.rows());
    EigenPairs ep = eig(m);
    std::vector<int> in, out;
    for (int i = 0; i < n; ++i) (select(ep.values(i)) ? in : out).push_back(i);
    double scale = std::max(1.0, norm2(m));
    for (int i : in)
        for (int j : out)
            if (std::abs(ep.values(i) - ep.values(j)) < min_gap * scale)
                throw SpectralGapError("projector: selected and unselected eigenvalues not separated");
    Eigen::PartialPivLU<CMat> lu(ep.vectors);
    CMat vinv = lu.inverse();
    CMat p = CMat::Zero(n, n);
    for (int i : in) p += ep.vectors.col(i) * vinv.row(i);
    return p;
}

namespace {

// (I − X)^{−1/2} by its binomial series; ‖X‖ ≤ 1/4 in all uses.
CMat inv_sqrt_one_minus(const CMat& x) {
    const int n = static_cast<int>(x.rows());
    CMat result = identity(n);
    CMat term = identity(n);
    double coef = 1.0;
    for (int k = 1; k < 200; ++k) {
        coef *= (2.0 * k - 1.0) / (2.0 * k);
        term = term * x;
        CMat add = coef * term;
        result += add;
        if (add.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    return result;
}

}  // namespace

CMat kato_step(const CMat& p0, const CMat& p1, const CMat& r0) {
    CMat d = p1 - p0;
    if (norm2(d) >= 0.5) throw StepSizeError("kato_step: projector jump too large");
    CMat r1 = p1 * (inv_sqrt_one_minus(d * d) * r0);
    return p1 * r1;
}

CMat kato_transport(const std::function<CMat(double)>& projector, double t0, double t1, const CMat& r0,
                    double max_jump, int initial_steps, KatoPathStats* stats) {
    CMat r = r0;
    if (t0 == t1) return r;
    double t = t0;
    double h = (t1 - t0) / std::max(1, initial_steps);
    CMat p = projector(t0);
    r = p * r;
    int halvings = 0, steps = 0;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    while (dir * (t1 - t) > 0) {
        if (dir * (t + h - t1) > 0) h = t1 - t;
        double tn = (dir * (t1 - (t + h)) < 1e-15 * std::abs(t1 - t0)) ? t1 : t + h;
        CMat pn = projector(tn);
        double jump = norm2(pn - p);
        if (jump > max_jump) {
            h *= 0.5;
            ++halvings;
            if (std::abs(h) < 1e-14 * std::abs(t1 - t0))
                throw StepSizeError("kato_transport: projector path not continuous");
            continue;
        }
        r = kato_step(p, pn, r);
        p = pn;
        t = tn;
        ++steps;
        if (jump < 0.25 * max_jump) h *= 2.0;
    }
    if (stats) {
        stats->steps += steps;
        stats->halvings += halvings;
    }
    return r;
}

StateVec integrate(const OdeRhs& f, const StateVec& y0, double t0, double t1, const OdeOptions& opts,
                   OdeStats* stats, const OdeObserver& observer) {
    // Dormand–Prince 5(4) tableau.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

    StateVec y = y0;
    if (observer) observer(t0, y);
    if (t0 == t1) return y;
    const long n = y.size();
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    StateVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), yn(n), err(n);
    OdeStats local;

    f(t0, y, k1);
    ++local.rhs_evals;
    double h = std::abs(opts.h_initial);
    if (h == 0) {
        double d0 = 0, d1 = 0;
        for (long i = 0; i < n; ++i) {
            double sc = opts.atol + opts.rtol * std::abs(y(i));
            d0 = std::max(d0, std::abs(y(i)) / sc);
            d1 = std::max(d1, std::abs(k1(i)) / sc);
        }
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, span);
    }
    if (opts.h_max > 0) h = std::min(h, opts.h_max);

    double t = t0;
    double err_prev = 1e-4;
    while (dir * (t1 - t) > 0) {
        if (local.steps + local.rejected > opts.max_steps) throw NumericError("integrate: step budget exhausted");
        if (h < opts.h_min_rel * std::max(1.0, std::abs(t))) throw NumericError("integrate: step size underflow");
        bool last = false;
        if (h >= std::abs(t1 - t)) {
            h = std::abs(t1 - t);
            last = true;
        }
        double hs = dir * h;
        yt = y + hs * a21 * k1;
        f(t + c2 * hs, yt, k2);
        yt = y + hs * (a31 * k1 + a32 * k2);
        f(t + c3 * hs, yt, k3);
        yt = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * hs, yt, k4);
        yt = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * hs, yt, k5);
        yt = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + hs, yt, k6);
        yn = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        double tn = last ? t1 : t + hs;
        f(tn, yn, k7);
        local.rhs_evals += 6;
        err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double en = 0;
        for (long i = 0; i < n; ++i) {
            double sc = opts.atol + opts.rtol * std::max(std::abs(y(i)), std::abs(yn(i)));
            en = std::max(en, std::abs(err(i)) / sc);
        }
        if (!std::isfinite(en)) {
            h *= 0.1;
            ++local.rejected;
            continue;
        }
        if (en <= 1.0) {
            t = tn;
            y = yn;
            k1 = k7;
            ++local.steps;
            if (observer) observer(t, y);
            // PI step-size control
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
            fac = std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(en, 1e-4);
            h *= fac;
            if (opts.h_max > 0) h = std::min(h, opts.h_max);
            if (last) break;
        } else {
            ++local.rejected;
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
        }
    }
    if (stats) {
        stats->steps += local.steps;
        stats->rejected += local.rejected;
        stats->rhs_evals += local.rhs_evals;
    }
    return y;
}

CMat expm(const CMat& a) {
    const int n = static_cast<int>(a.rows());
    double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    CMat x = a / std::pow(2.0, s);
    CMat result = identity(n);
    CMat term = identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = term * x / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int i = 0; i < s; ++i) result = result * result;
    return result;
}

CMat lyapunov_solve(const CMat& nmat, const CMat& q) {
    const int n = static_cast<int>(nmat.rows());
    CVec ev = eigenvalues(nmat);
    double scale = std::max(1.0, norm2(nmat));
    bool all_neg = true, all_pos = true;
    for (int i = 0; i < n; ++i) {
        if (!(ev(i).real() < -1e-12 * scale)) all_neg = false;
        if (!(ev(i).real() > 1e-12 * scale)) all_pos = false;
    }
    if (!all_neg && !all_pos) throw NumericError("lyapunov_solve: spectrum touches the imaginary axis");
    const int nn = n * n;
    // Column-major vec: vec(P N) = (Nᵀ ⊗ I) vec P, vec(N* P) = (I ⊗ N*) vec P.
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(nn, nn);
    CMat nh = nmat.adjoint();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int r = 0; r < n; ++r) k(i * n + r, j * n + r) += nmat(j, i);
        }
    for (int b = 0; b < n; ++b) k.block(b * n, b * n, n, n) += Eigen::MatrixXcd(nh);
    Eigen::VectorXcd rhs(nn);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) rhs(j * n + i) = -q(i, j);
    Eigen::VectorXcd sol = k.partialPivLu().solve(rhs);
    CMat p(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) p(i, j) = sol(j * n + i);
    return 0.5 * (p + p.adjoint());
}

namespace {
CMat hermitian_power(const CMat& p, double power) {
    CMat h = 0.5 * (p + p.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(h)};
    if (es.info() != Eigen::Success) throw NumericError("hermitian eigen-solver failed");
    Eigen::VectorXd d = es.eigenvalues();
    if (d.minCoeff() <= 0) throw NumericError("matrix not positive definite");
    Eigen::VectorXd dp = d.array().pow(power);
    Eigen::MatrixXcd v = es.eigenvectors();
    return CMat(v * dp.cast<cplx>().asDiagonal() * v.adjoint());
}
}  // namespace

CMat hermitian_sqrt(const CMat& p) { return hermitian_power(p, 0.5); }
CMat hermitian_inv_sqrt(const CMat& p) { return hermitian_power(p, -0.5); }

std::vector<cplx> polynomial_roots(const std::vector<double>& c_in) {
    std::size_t first = 0;
    while (first < c_in.size() && c_in[first] == 0.0) ++first;
    std::vector<double> c(c_in.begin() + static_cast<long>(first), c_in.end());
    if (c.size() < 2) return {};
    const int deg = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int j = 0; j < deg; ++j) comp(0, j) = -c[j + 1] / c[0];
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<cplx> roots;
    for (int i = 0; i < deg; ++i) {
        cplx z = es.eigenvalues()(i);
        // Newton polish on the original coefficients.
        for (int it = 0; it < 5; ++it) {
            cplx pv = c[0], dv = 0;
            for (int k = 1; k <= deg; ++k) {
                dv = dv * z + pv;
                pv = pv * z + c[k];
            }
            if (dv == cplx(0)) break;
            cplx zn = z - pv / dv;
            if (!std::isfinite(zn.real()) || !std::isfinite(zn.imag())) break;
            z = zn;
        }
        roots.push_back(z);
    }
    return roots;
}

std::optional<double> largest_real_root(const std::vector<double>& coeffs) {
    std::optional<double> best;
    for (cplx z : polynomial_roots(coeffs)) {
        if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) continue;
        if (!best || z.real() > *best) best = z.real();
    }
    return best;
}

}  // namespace shockstab
