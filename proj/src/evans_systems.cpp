#include "shockstab/evans_systems.hpp"

#include <cmath>

namespace shockstab {

namespace {
const cplx I(0.0, 1.0);
}

std::string to_string(Form f) {
    switch (f) {
        case Form::Standard: return "standard";
        case Form::Balanced: return "balanced";
        case Form::Modified: return "modified";
    }
    return "?";
}

Form parse_form(const std::string& s) {
    if (s == "standard") return Form::Standard;
    if (s == "balanced") return Form::Balanced;
    if (s == "modified") return Form::Modified;
    throw DomainError("unknown formulation '" + s + "' (expected standard, balanced or modified)");
}

std::string describe(const Formulation& f) {
    std::string s = to_string(f.form);
    if (!f.radial) s += "+no-radial";
    s += f.coords == Coordinates::PseudoLagrangian ? "+pseudo-lagrangian" : "+eulerian";
    return s;
}

double Frequency::r_check() const { return std::sqrt(xi * xi + std::norm(lambda)); }
double Frequency::xi_check() const { return xi / r_check(); }
cplx Frequency::lambda_check() const { return lambda / r_check(); }
cplx Frequency::r_mod() const { return std::abs(xi) + lambda; }
cplx Frequency::xi_sharp() const { return xi / r_mod(); }
cplx Frequency::lambda_sharp() const { return lambda / r_mod(); }
double Frequency::r_breve() const { return xi * xi + std::abs(lambda); }
double Frequency::xi_breve() const { return xi / std::sqrt(r_breve()); }
cplx Frequency::lambda_breve() const { return lambda / r_breve(); }

Frequency Frequency::from_balanced(double r, double xi_c, cplx lambda_c) { return {r * xi_c, r * lambda_c}; }

Frequency Frequency::from_parabolic(double r_breve, double xi_breve) {
    double tau = 1.0 - xi_breve * xi_breve;
    return {std::sqrt(r_breve) * xi_breve, cplx(0.0, r_breve * tau)};
}

ChartPoint balanced_chart(const Frequency& f) {
    double r = f.r_check();
    if (r == 0) return {0.0, 1.0, 0.0};
    return {r, f.lambda / r, f.xi / r};
}

ChartPoint modified_chart(const Frequency& f) {
    cplx r = f.r_mod();
    if (r == cplx(0.0)) throw DomainError("modified chart is singular at (xi, lambda) = (0, 0)");
    return {r, f.lambda / r, f.xi / r};
}

double coeff_f(const GasParams& g, const ProfilePoint& p) { return p.p + (g.mu - g.eta) * p.ux; }
double coeff_g(const GasParams& g, const ProfilePoint& p) { return p.p - g.mu_tilde() * p.ux; }

CMat standard_matrix(const GasParams& g, const ProfilePoint& p, cplx lambda, cplx xi) {
    const double mt = g.mu_tilde(), et = g.eta_tilde(), mu = g.mu, nu = g.nu, G = g.gruneisen;
    const double rho = p.rho, ph = p.p;
    CMat a = CMat::Zero(7, 7);
    a(0, 0) = -lambda * rho;
    a(0, 4) = -lambda * rho * rho;
    a(0, 5) = I * xi * rho;
    a(1, 0) = -p.ux;
    a(1, 4) = lambda * rho + mu * xi * xi;
    a(2, 0) = -I * xi * ph;
    a(2, 4) = -I * xi * ph * rho;
    a(2, 5) = lambda * rho + mt * xi * xi;
    a(2, 6) = I * xi * G * rho;
    a(3, 0) = -p.ex;
    a(3, 1) = -p.ux;
    a(3, 5) = I * xi * coeff_f(g, p);
    a(3, 6) = lambda * rho + xi * xi * nu;
    a(4, 0) = -ph / mt;
    a(4, 1) = 1.0 / mt;
    a(4, 4) = (1.0 - ph * rho) / mt;
    a(4, 5) = -I * xi * et / mt;
    a(4, 6) = G * rho / mt;
    a(5, 2) = 1.0 / mu;
    a(5, 4) = -I * xi * et / mu;
    a(5, 5) = 1.0 / mu;
    a(6, 3) = 1.0 / nu;
    a(6, 4) = coeff_g(g, p) / nu;
    a(6, 6) = 1.0 / nu;
    return a;
}

CMat balanced_matrix(const GasParams& g, const ProfilePoint& p, const ChartPoint& c) {
    const double mt = g.mu_tilde(), et = g.eta_tilde(), mu = g.mu, nu = g.nu, G = g.gruneisen;
    const double rho = p.rho, ph = p.p;
    const cplx r = c.r, lam = c.lambda, xi = c.xi;
    CMat a = CMat::Zero(7, 7);
    a(0, 0) = -r * lam * rho;
    a(0, 4) = -lam * rho * rho;
    a(0, 5) = I * xi * rho;
    a(1, 0) = -p.ux;
    a(1, 4) = lam * rho + r * mu * xi * xi;
    a(2, 0) = -I * r * xi * ph;
    a(2, 4) = -I * xi * ph * rho;
    a(2, 5) = lam * rho + r * mt * xi * xi;
    a(2, 6) = I * xi * G * rho;
    a(3, 0) = -p.ex;
    a(3, 1) = -p.ux;
    a(3, 5) = I * xi * coeff_f(g, p);
    a(3, 6) = lam * rho + r * xi * xi * nu;
    a(4, 0) = -r * ph / mt;
    a(4, 1) = r / mt;
    a(4, 4) = (1.0 - ph * rho) / mt;
    a(4, 5) = -I * r * xi * et / mt;
    a(4, 6) = G * rho / mt;
    a(5, 2) = r / mu;
    a(5, 4) = -I * r * xi * et / mu;
    a(5, 5) = 1.0 / mu;
    a(6, 3) = r / nu;
    a(6, 4) = coeff_g(g, p) / nu;
    a(6, 6) = 1.0 / nu;
    return a;
}

EvansSystem::EvansSystem(const Profile& profile, const Formulation& form, const Frequency& freq)
    : profile_(&profile), coords_(form.coords), standard_(form.form == Form::Standard), lambda_(freq.lambda),
      xi_(freq.xi) {
    if (form.form == Form::Balanced) chart_ = balanced_chart(freq);
    if (form.form == Form::Modified) chart_ = modified_chart(freq);
}

EvansSystem::EvansSystem(const Profile& profile, Coordinates coords, const ChartPoint& chart)
    : profile_(&profile), coords_(coords), standard_(false), chart_(chart) {
    lambda_ = chart.r * chart.lambda;
    xi_ = chart.r * chart.xi;
}

CMat EvansSystem::raw(const ProfilePoint& p) const {
    return standard_ ? standard_matrix(profile_->params, p, lambda_, xi_) : balanced_matrix(profile_->params, p, chart_);
}

CMat EvansSystem::at(double s) const {
    if (coords_ == Coordinates::Eulerian) return raw(profile_->at(s));
    ProfilePoint p = profile_->at(profile_->to_x(s));
    return p.u * raw(p);
}

CMat EvansSystem::limit(Side side) const {
    ProfilePoint p = profile_->endstate(side);
    CMat a = raw(p);
    return coords_ == Coordinates::Eulerian ? a : CMat(p.u * a);
}

double EvansSystem::s_begin() const {
    return coords_ == Coordinates::Eulerian ? profile_->grid.front() : profile_->y_min();
}

double EvansSystem::s_end() const {
    return coords_ == Coordinates::Eulerian ? profile_->grid.back() : profile_->y_max();
}

CMat splitting_projector(const CMat& limit, Side side) {
    CMat top3 = projector_largest_real(limit, kDimUnstableMinus);
    if (side == Side::Minus) return top3;
    return identity(static_cast<int>(limit.rows())) - top3;
}

SplitSubspace splitting_subspace(const CMat& limit, Side side) {
    SplitSubspace s;
    s.projector = splitting_projector(limit, side);
    const int n = static_cast<int>(limit.rows());
    const int k = side == Side::Minus ? kDimUnstableMinus : kDimStablePlus;
    // With K = diag(1,1,i,1,1,i,1), K⁻¹ΠK is real whenever Π commutes with the conjugation symmetry;
    // a real basis then gives J-real columns.
    CMat kd = CMat::Identity(n, n), kinv = CMat::Identity(n, n);
    if (n == 7) {
        kd(2, 2) = kd(5, 5) = cplx(0, 1);
        kinv(2, 2) = kinv(5, 5) = cplx(0, -1);
    }
    CMat pr = kinv * s.projector * kd;
    if (n == 7 && pr.imag().cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, pr.cwiseAbs().maxCoeff())) {
        Eigen::MatrixXd re = pr.real();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(re);
        Eigen::MatrixXd q = qr.householderQ();
        s.basis = kd * CMat(q.leftCols(k).cast<cplx>());
    } else {
        // Column-pivoted QR of the projector picks k independent range vectors.
        Eigen::ColPivHouseholderQR<CMat> qr(s.projector);
        CMat q = qr.householderQ();
        s.basis = q.leftCols(k);
    }
    return s;
}

CVec translational_mode(const Profile& profile, double x) {
    const GasParams& g = profile.params;
    ProfilePoint p = profile.at(x);
    const double G = g.gruneisen;
    // perturbation (ρ, u, v, e) = (ρ̂', û', 0, ê')
    double rho = p.rho_x, u = p.ux, e = p.ex;
    double ux = p.uxx, ex = p.exx;
    CVec w(7);
    w(0) = -p.rho * u - p.u * rho;
    w(1) = g.mu_tilde() * ux - u - G * (p.e * rho + p.rho * e);
    w(2) = 0.0;
    w(3) = g.nu * ex + g.mu_tilde() * p.ux * u - e - G * p.rho * p.e * u;
    w(4) = u;
    w(5) = 0.0;
    w(6) = e;
    return w;
}

CMat conjugation_symmetry() {
    CMat j = CMat::Identity(7, 7);
    j(2, 2) = -1.0;
    j(5, 5) = -1.0;
    return j;
}

}  // namespace shockstab
