#include "shockstab/hf_bounds.hpp"

#include "shockstab/evans_systems.hpp"
#include "shockstab/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace shockstab {

namespace {
const cplx I(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

CMat embed6(const CMat& m6, cplx corner) {
    CMat m = CMat::Zero(7, 7);
    m(0, 0) = corner;
    m.bottomRightCorner(6, 6) = m6;
    return m;
}

double hermitian_min(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double hermitian_max(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

// ∂β/∂ρ̂: λ̆ on the three upper-right diagonal entries.
CMat beta_rho_derivative(cplx lambda_breve) {
    CMat m = CMat::Zero(6, 6);
    m(0, 3) = m(1, 4) = m(2, 5) = lambda_breve;
    return m;
}

CMat unstable_projector(const GasParams& g, double rho, const ParabolicPoint& pt) {
    return projector_largest_real(beta_matrix(g, rho, pt.xi_breve, pt.lambda_breve()), 3);
}

// ψ and ψ' at a profile point; zero at r̆ = ∞.
std::pair<CVec, CVec> psi_pair(const GasParams& g, const ProfilePoint& p, const ParabolicPoint& pt) {
    if (std::isinf(pt.r_breve)) return {CVec::Zero(6), CVec::Zero(6)};
    const cplx lb = pt.lambda_breve();
    const double sr = std::sqrt(pt.r_breve);
    CMat m = beta_matrix(g, p.rho, pt.xi_breve, lb) + p.rho * lb * sr * identity(6);
    Eigen::PartialPivLU<CMat> lu(m);
    CVec q = q_vector(g, p.p, pt.xi_breve);
    CVec minv_q = lu.solve(q);
    CMat mx = p.rho_x * lb * sr * identity(6) + p.rho_x * beta_rho_derivative(lb);
    CVec psi = -minv_q;
    CVec psi_x = -minv_q * (p.p_x / p.p) + lu.solve(CVec(mx * minv_q));
    return {psi, psi_x};
}

CMat u_inverse(const CVec& psi) { return u_matrix(-psi); }
}  // namespace

CMat beta_matrix(const GasParams& g, double rho, double xi_breve, cplx lambda_breve) {
    const double xb2 = xi_breve * xi_breve;
    CMat b = CMat::Zero(6, 6);
    b(0, 3) = lambda_breve * rho + g.mu * xb2;
    b(1, 4) = lambda_breve * rho + g.mu_tilde() * xb2;
    b(2, 5) = lambda_breve * rho + g.nu * xb2;
    b(3, 0) = 1.0 / g.mu_tilde();
    b(3, 4) = -I * xi_breve * g.eta_tilde() / g.mu_tilde();
    b(4, 1) = 1.0 / g.mu;
    b(4, 3) = -I * xi_breve * g.eta_tilde() / g.mu;
    b(5, 2) = 1.0 / g.nu;
    return b;
}

CVec q_vector(const GasParams& g, double p, double xi_breve) {
    CVec q = CVec::Zero(6);
    q(1) = -I * xi_breve * p;
    q(3) = -p / g.mu_tilde();
    return q;
}

CMat c_half(const GasParams& g, const ProfilePoint& p, const ParabolicPoint& pt) {
    CMat c = embed6(beta_matrix(g, p.rho, pt.xi_breve, pt.lambda_breve()),
                    -p.rho * pt.lambda_breve() * std::sqrt(pt.r_breve));
    c.block(1, 0, 6, 1) = q_vector(g, p.p, pt.xi_breve);
    return c;
}

CMat c_zero(const GasParams& g, const ProfilePoint& p, double xi_breve) {
    const double mt = g.mu_tilde(), G = g.gruneisen;
    CMat c = CMat::Zero(7, 7);
    c(0, 0) = -p.p * p.rho / mt;
    c(0, 1) = p.rho / mt;
    c(0, 5) = I * xi_breve * p.rho * (1.0 - g.eta_tilde() / mt);
    c(1, 0) = -p.ux;
    c(2, 6) = I * xi_breve * G * p.rho;
    c(3, 0) = -p.ex;
    c(3, 1) = -p.ux;
    c(3, 5) = I * xi_breve * coeff_f(g, p);
    c(4, 4) = 1.0 / mt;
    c(4, 6) = G * p.rho / mt;
    c(5, 5) = 1.0 / g.mu;
    c(6, 4) = coeff_g(g, p) / g.nu;
    c(6, 6) = 1.0 / g.nu;
    return c;
}

CMat c_minus_half(const GasParams& g, const ProfilePoint& p) {
    const double mt = g.mu_tilde();
    CMat c = CMat::Zero(7, 7);
    c(0, 4) = p.rho / mt + p.rho_x;
    c(0, 6) = g.gruneisen * p.rho * p.rho / mt;
    c(1, 4) = p.rho * p.ux;
    c(3, 4) = p.rho * p.ex;
    return c;
}

CMat u_matrix(const CVec& psi) {
    CMat u = identity(7);
    u.block(1, 0, 6, 1) = psi;
    return u;
}

Cascade cascade(const GasParams& g, const ProfilePoint& p, const ParabolicPoint& pt) {
    Cascade c;
    auto [psi, psi_x] = psi_pair(g, p, pt);
    c.psi = psi;
    c.psi_x = psi_x;
    c.c_zero = c_zero(g, p, pt.xi_breve);
    c.c_minus_half = c_minus_half(g, p);
    CMat u = u_matrix(psi), ui = u_inverse(psi);
    if (std::isinf(pt.r_breve)) {
        c.c_half = embed6(beta_matrix(g, p.rho, pt.xi_breve, pt.lambda_breve()), 0.0);
        c.d_half = c.c_half;
    } else {
        c.c_half = c_half(g, p, pt);
        c.d_half = ui * c.c_half * u;
    }
    CMat uprime = CMat::Zero(7, 7);
    uprime.block(1, 0, 6, 1) = psi_x;
    c.d_zero = ui * c.c_zero * u - uprime;
    c.d_minus_half = ui * c.c_minus_half * u;
    return c;
}

std::vector<double> sample_grid(const Profile& profile, int max_points) {
    const auto& g = profile.grid;
    if (max_points <= 1 || static_cast<int>(g.size()) <= max_points) return g;
    std::vector<double> x;
    const double step = static_cast<double>(g.size() - 1) / (max_points - 1);
    for (int i = 0; i < max_points; ++i) x.push_back(g[static_cast<std::size_t>(std::lround(i * step))]);
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

BlockDiagonalization block_diagonalize(const Profile& profile, const ParabolicPoint& pt,
                                       const std::vector<double>& x) {
    const GasParams& g = profile.params;
    BlockDiagonalization bd;
    bd.xi_breve = pt.xi_breve;
    bd.r_breve = pt.r_breve;
    auto proj_at = [&](double s) { return unstable_projector(g, profile.at(s).rho, pt); };

    CMat pu = proj_at(x.front());
    Eigen::ColPivHouseholderQR<CMat> qru(pu), qrs(CMat(identity(6) - pu));
    CMat ru = CMat(qru.householderQ()).leftCols(3);
    CMat rs = CMat(qrs.householderQ()).leftCols(3);
    const cplx lb = pt.lambda_breve();

    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0) {
            auto pu_path = [&](double s) { return proj_at(s); };
            auto ps_path = [&](double s) { return CMat(identity(6) - proj_at(s)); };
            ru = kato_transport(pu_path, x[i - 1], x[i], ru);
            rs = kato_transport(ps_path, x[i - 1], x[i], rs);
        }
        ProfilePoint p = profile.at(x[i]);
        CMat beta = beta_matrix(g, p.rho, pt.xi_breve, lb);
        pu = projector_largest_real(beta, 3);
        const double h = 1e-5 * p.rho;
        CMat dpu = (unstable_projector(g, p.rho + h, pt) - unstable_projector(g, p.rho - h, pt)) / (2 * h);
        CMat pux = p.rho_x * dpu;
        CMat gen = pux * pu - pu * pux;

        BlockNode n;
        n.x = x[i];
        n.R = CMat::Zero(7, 7);
        n.R(0, 0) = 1.0;
        n.R.block(1, 1, 6, 3) = rs;
        n.R.block(1, 4, 6, 3) = ru;
        n.R_x = CMat::Zero(7, 7);
        n.R_x.block(1, 1, 6, 3) = gen * rs;
        n.R_x.block(1, 4, 6, 3) = gen * ru;
        n.L = n.R.inverse();
        const cplx center = std::isinf(pt.r_breve) ? cplx(0.0) : -p.rho * lb * std::sqrt(pt.r_breve);
        CMat dh = embed6(beta, center);
        CMat nn = n.L * dh * n.R;
        n.n_minus = nn.topLeftCorner(4, 4);
        n.n_plus = nn.bottomRightCorner(3, 3);
        double off = std::max(norm2(nn.topRightCorner(4, 3)), norm2(nn.bottomLeftCorner(3, 4)));
        bd.max_residual = std::max(bd.max_residual, off / norm2(dh));
        bd.nodes.push_back(std::move(n));
    }
    return bd;
}

ThetaPair theta_blocks(const GasParams& g, const ProfilePoint& p, const BlockNode& node, const ParabolicPoint& pt) {
    auto [psi, psi_x] = psi_pair(g, p, pt);
    CMat u = u_matrix(psi), ui = u_inverse(psi);
    CMat uprime = CMat::Zero(7, 7);
    uprime.block(1, 0, 6, 1) = psi_x;
    ThetaPair t;
    t.theta0 = node.L * (ui * c_zero(g, p, pt.xi_breve) * u - uprime) * node.R - node.L * node.R_x;
    t.theta_mhalf = node.L * ui * c_minus_half(g, p) * u * node.R;
    return t;
}

BlockNorms block_norms(const CMat& t) {
    return {norm2(t.topLeftCorner(4, 4)), norm2(t.topRightCorner(4, 3)), norm2(t.bottomLeftCorner(3, 4)),
            norm2(t.bottomRightCorner(3, 3))};
}

double numerical_gap(const CMat& n_minus, const CMat& n_plus) {
    return hermitian_min(n_plus) - hermitian_max(n_minus);
}

ZetaRoots zeta_roots(double delta, double mm, double mp, double pm, double pp) {
    ZetaRoots z;
    const double lin = delta - mm - pp;
    if (pm == 0.0) {
        if (lin <= 0) return z;
        z.zeta_minus = mp / lin;
        z.zeta_plus = kInf;
        z.condition = true;
        return z;
    }
    const double half = lin / (2 * pm);
    const double disc = half * half - mp / pm;
    if (disc < 0) return z;
    z.zeta_minus = half - std::sqrt(disc);
    z.zeta_plus = half + std::sqrt(disc);
    z.condition = tracking_condition(delta, mm, mp, pm, pp);
    return z;
}

bool tracking_condition(double delta, double mm, double mp, double pm, double pp) {
    return delta > mm + pp + 2 * std::sqrt(mp * pm);
}

std::vector<double> tracking_quartic(const TrackingCoeffs& k, double delta) {
    // (δy² − ay − b)² = 4(cy + e)(dy + f)
    return {delta * delta, -2 * k.a * delta, k.a * k.a - 2 * k.b * delta - 4 * k.c * k.d,
            2 * k.a * k.b - 4 * (k.c * k.f + k.d * k.e), k.b * k.b - 4 * k.e * k.f};
}

double tracking_radius(const TrackingCoeffs& k, double delta) {
    if (!(delta > 0)) throw NumericError("tracking radius needs a positive gap");
    auto root = largest_real_root(tracking_quartic(k, delta));
    if (!root || *root <= 0) return 0.0;
    return *root * *root;
}

double tracking_rhs(const TrackingCoeffs& k, double delta, double r_breve) {
    const double y = std::sqrt(r_breve);
    return (k.a + k.b / y + 2 * std::sqrt((k.c + k.e / y) * (k.d + k.f / y))) / delta;
}

double shear_norm_sq(double r_breve) { return 1.0 + (1.0 + std::sqrt(1.0 + 4 * r_breve)) / (2 * r_breve); }

double u_norm_sq(double m) { return 1.0 + (m * m + m * std::sqrt(m * m + 4)) / 2; }

CrudeConstants crude_constants(const Profile& profile, double xi_breve, const HfOptions& opts) {
    BlockDiagonalization bd = block_diagonalize(profile, {xi_breve, 1.0}, sample_grid(profile, opts.x_points));
    return crude_constants(profile, bd, opts);
}

CrudeConstants crude_constants(const Profile& profile, const BlockDiagonalization& bd, const HfOptions& opts) {
    const GasParams& g = profile.params;
    const ParabolicPoint pt{bd.xi_breve, 1.0};
    const cplx lb = pt.lambda_breve();
    CrudeConstants c;
    for (const BlockNode& n : bd.nodes) {
        ProfilePoint p = profile.at(n.x);
        c.lr_cond = std::max(c.lr_cond, norm2(n.L) * norm2(n.R));
        c.lr_prime = std::max(c.lr_prime, norm2(n.L * n.R_x));
        c.c_zero = std::max(c.c_zero, norm2(c_zero(g, p, bd.xi_breve)));
        c.c_minus_half = std::max(c.c_minus_half, norm2(c_minus_half(g, p)));
        double gap = numerical_gap(n.n_minus, n.n_plus);
        c.inv_delta = std::max(c.inv_delta, gap > 0 ? 1.0 / gap : kInf);
        CMat beta = beta_matrix(g, p.rho, bd.xi_breve, lb);
        CVec q = q_vector(g, p.p, bd.xi_breve);
        c.b = std::max(c.b, q.norm() / (norm2(beta) * CVec(beta.partialPivLu().solve(q)).norm()));
    }
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        ProfilePoint p = profile.at(profile.grid[i]);
        c.px_over_p = std::max(c.px_over_p, std::abs(p.p_x / p.p));
        c.rhox_over_rho = std::max(c.rhox_over_rho, std::abs(p.rho_x / p.rho));
    }
    // resolvent sweeps; β depends on x₁ only through ρ̂, so a thinned set of nodes suffices
    const std::size_t stride = std::max<std::size_t>(1, bd.nodes.size() / 80);
    double sweep1 = 0;
    for (std::size_t i = 0; i < bd.nodes.size(); i += stride) {
        ProfilePoint p = profile.at(bd.nodes[i].x);
        CMat beta = beta_matrix(g, p.rho, bd.xi_breve, lb);
        CVec q = q_vector(g, p.p, bd.xi_breve);
        const double nb = norm2(beta);
        for (int k = 0; k <= opts.s_points; ++k) {
            double s0 = (1 + c.b) * nb * k / opts.s_points;
            c.m0 = std::max(c.m0, CVec((s0 * identity(6) - I * beta).partialPivLu().solve(q)).norm());
            double s1 = 2 * nb * k / opts.s_points;
            if (k > 0) sweep1 = std::max(sweep1, norm2(CMat(s1 * (s1 * identity(6) - I * beta).inverse())));
        }
    }
    c.m1 = std::min(2.0, sweep1);
    return c;
}

CrudeConstants combine(const std::vector<CrudeConstants>& parts) {
    CrudeConstants c;
    for (const auto& p : parts) {
        c.lr_cond = std::max(c.lr_cond, p.lr_cond);
        c.lr_prime = std::max(c.lr_prime, p.lr_prime);
        c.c_zero = std::max(c.c_zero, p.c_zero);
        c.c_minus_half = std::max(c.c_minus_half, p.c_minus_half);
        c.inv_delta = std::max(c.inv_delta, p.inv_delta);
        c.b = std::max(c.b, p.b);
        c.m0 = std::max(c.m0, p.m0);
        c.m1 = std::max(c.m1, p.m1);
        c.px_over_p = std::max(c.px_over_p, p.px_over_p);
        c.rhox_over_rho = std::max(c.rhox_over_rho, p.rhox_over_rho);
    }
    return c;
}

void finish_crude(CrudeConstants& c, double r0) {
    if (!(r0 > 1)) throw DomainError("crude radius needs r0 > 1");
    c.u_norm_sq = u_norm_sq(c.m0);
    c.psi_x = (c.px_over_p + c.m1 * c.rhox_over_rho * std::sqrt(1 + 2 / std::sqrt(r0))) * c.m0;
    c.theta = c.lr_cond * c.u_norm_sq * (c.c_zero + c.c_minus_half / std::sqrt(r0)) + c.lr_prime +
              c.lr_cond * c.psi_x;
    const double ratio = 4 * c.theta * c.inv_delta;
    c.r_crude = std::max(r0, ratio * ratio);
}

double crude_radius(const Profile& profile, double xi_breve, const HfOptions& opts) {
    CrudeConstants c = crude_constants(profile, xi_breve, opts);
    finish_crude(c, opts.crude_r0);
    return c.r_crude;
}

namespace {
void raise(TrackingCoeffs& k, const TrackingCoeffs& o) {
    k.a = std::max(k.a, o.a);
    k.b = std::max(k.b, o.b);
    k.c = std::max(k.c, o.c);
    k.d = std::max(k.d, o.d);
    k.e = std::max(k.e, o.e);
    k.f = std::max(k.f, o.f);
}
}  // namespace

TrackingCoeffs CoeffTable::from(std::size_t j) const {
    TrackingCoeffs k;
    for (std::size_t i = j; i < sup_x.size(); ++i) raise(k, sup_x[i]);
    return k;
}

CoeffTable coeff_table(const Profile& profile, const BlockDiagonalization& bd, double r_lo, double r_hi,
                       int r_points) {
    const GasParams& g = profile.params;
    CoeffTable t;
    for (int k = 0; k < r_points; ++k) {
        double w = r_points > 1 ? static_cast<double>(k) / (r_points - 1) : 0.0;
        t.r.push_back(r_lo * std::pow(r_hi / r_lo, w));
    }
    t.r.push_back(kInf);
    t.sup_x.resize(t.r.size());
    for (const BlockNode& n : bd.nodes) {
        ProfilePoint p = profile.at(n.x);
        for (std::size_t j = 0; j < t.r.size(); ++j) {
            ThetaPair th = theta_blocks(g, p, n, {bd.xi_breve, t.r[j]});
            BlockNorms z = block_norms(th.theta0), h = block_norms(th.theta_mhalf);
            for (double v : {z.mm, z.mp, z.pm, z.pp, h.mm, h.mp, h.pm, h.pp})
                if (!std::isfinite(v)) throw NumericError("non-finite theta block norm");
            raise(t.sup_x[j], {z.mm + z.pp, h.mm + h.pp, z.mp, z.pm, h.mp, h.pm});
        }
    }
    return t;
}

TrackingCoeffs uniform_coeffs(const Profile& profile, const BlockDiagonalization& bd, double r_lo, double r_hi,
                              int r_points) {
    return coeff_table(profile, bd, r_lo, r_hi, r_points).from(0);
}

SelfConsistentRadius self_consistent_radius(const CoeffTable& table, double delta) {
    SelfConsistentRadius best;
    best.r_breve = kInf;
    // suffix suprema from the top down
    TrackingCoeffs k;
    for (std::size_t j = table.r.size(); j-- > 0;) {
        raise(k, table.sup_x[j]);
        if (std::isinf(table.r[j])) continue;
        double rq = tracking_radius(k, delta);
        double r = std::max(table.r[j], rq);
        if (r <= best.r_breve) best = {j, r, rq, k};
    }
    return best;
}

TrackingBound tracking_bound(const Profile& profile, double xi_breve, const HfOptions& opts) {
    TrackingBound tb;
    tb.u_plus = profile.ends.u_plus;
    tb.xi_breve = xi_breve;
    BlockDiagonalization bd = block_diagonalize(profile, {xi_breve, 1.0}, sample_grid(profile, opts.x_points));
    tb.block_residual = bd.max_residual;
    CrudeConstants c = crude_constants(profile, bd, opts);
    finish_crude(c, opts.crude_r0);
    if (!(c.inv_delta < kInf)) throw SpectralGapError("numerical ranges of the blocks overlap; symmetrization needed");
    tb.delta = 1.0 / c.inv_delta;
    tb.r_breve_crude = c.r_crude;
    CoeffTable table = coeff_table(profile, bd, opts.r_min, c.r_crude, opts.r_points);
    if (opts.self_consistent) {
        SelfConsistentRadius sc = self_consistent_radius(table, tb.delta);
        tb.coeffs = sc.coeffs;
        tb.r_breve_lower = table.r[sc.index];
        tb.r_breve_star = sc.r_breve;
    } else {
        tb.coeffs = table.from(0);
        tb.r_breve_lower = opts.r_min;
        tb.r_breve_star = tracking_radius(tb.coeffs, tb.delta);
    }
    tb.r_star = tb.r_breve_star * (1 - xi_breve * xi_breve);
    tb.xi_slice = std::sqrt(tb.r_breve_star) * xi_breve;
    return tb;
}

std::vector<TrackingBound> hf_surface(const GasParams& g, const std::vector<double>& u_plus,
                                      const std::vector<double>& xi_breve, const HfOptions& opts, int workers) {
    std::vector<Profile> profiles(u_plus.size());
    parallel_for(u_plus.size(), workers,
                 [&](std::size_t i) { profiles[i] = solve_profile(g, endstates(g.gruneisen, u_plus[i])); });
    std::vector<TrackingBound> out(u_plus.size() * xi_breve.size());
    parallel_for(out.size(), workers, [&](std::size_t k) {
        out[k] = tracking_bound(profiles[k / xi_breve.size()], xi_breve[k % xi_breve.size()], opts);
    });
    return out;
}

BetaCheck beta_check(const GasParams& g, const std::vector<double>& rho, const std::vector<double>& xi_breve,
                     const std::vector<double>& zeta) {
    BetaCheck bc;
    for (double r : rho)
        for (double xb : xi_breve) {
            ParabolicPoint pt{xb, 1.0};
            CVec ev = eigenvalues(beta_matrix(g, r, xb, pt.lambda_breve()));
            int unstable = 0;
            for (int i = 0; i < ev.size(); ++i) {
                bc.min_abs_re = std::min(bc.min_abs_re, std::abs(ev(i).real()));
                if (ev(i).real() > 0) ++unstable;
            }
            bc.unstable_dim_min = std::min(bc.unstable_dim_min, unstable);
            bc.unstable_dim_max = std::max(bc.unstable_dim_max, unstable);
        }
    const double mt = g.mu_tilde(), et = g.eta_tilde(), floor = std::min(g.mu, g.nu);
    for (double x : xi_breve)
        for (double z : zeta) {
            const double s = x * x + z * z;
            if (s == 0) continue;
            Eigen::Matrix3d m;
            m << g.mu * x * x + mt * z * z, x * z * et, 0, x * z * et, mt * x * x + g.mu * z * z, 0, 0, 0, g.nu * s;
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m, Eigen::EigenvaluesOnly);
            bc.min_margin = std::min(bc.min_margin, es.eigenvalues().minCoeff() / (s * floor));
        }
    return bc;
}

Symmetrization symmetrize(const CMat& n_minus, const CMat& n_plus, double c_minus, double c_plus) {
    if (!(c_plus > c_minus)) throw DomainError("symmetrize needs c_plus > c_minus");
    CVec sp = eigenvalues(n_plus), sm = eigenvalues(n_minus);
    for (int i = 0; i < sp.size(); ++i)
        if (!(sp(i).real() > c_plus)) throw SpectralGapError("spectrum of N+ not to the right of c_plus");
    for (int i = 0; i < sm.size(); ++i)
        if (!(sm(i).real() < c_minus)) throw SpectralGapError("spectrum of N- not to the left of c_minus");
    Symmetrization s;
    s.c_minus = c_minus;
    s.c_plus = c_plus;
    const int kp = static_cast<int>(n_plus.rows()), km = static_cast<int>(n_minus.rows());
    CMat np = n_plus - c_plus * identity(kp), nm = n_minus - c_minus * identity(km);
    s.p_plus = lyapunov_solve(np, -identity(kp));
    s.p_minus = lyapunov_solve(nm, identity(km));
    s.residual = std::max((s.p_plus * np + np.adjoint() * s.p_plus - identity(kp)).cwiseAbs().maxCoeff(),
                          (s.p_minus * nm + nm.adjoint() * s.p_minus + identity(km)).cwiseAbs().maxCoeff());
    auto transform = [](const CMat& p, const CMat& n) {
        CMat x = hermitian_sqrt(p) * n * hermitian_inv_sqrt(p);
        return CMat(0.5 * (x + x.adjoint()));
    };
    s.m_plus = transform(s.p_plus, n_plus);
    s.m_minus = transform(s.p_minus, n_minus);
    s.min_m_plus = hermitian_min(s.m_plus);
    s.max_m_minus = hermitian_max(s.m_minus);
    return s;
}

}  // namespace shockstab
