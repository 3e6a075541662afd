#include "shockstab/evans_engine.hpp"

#include <cmath>

namespace shockstab {

EvansState initial_state(const CMat& v, double s) {
    CMat gram = v.adjoint() * v;
    EvansState st;
    st.omega = v * hermitian_inv_sqrt(gram);
    st.log_gamma = 0.5 * std::log(std::abs(gram.determinant()));
    st.s = s;
    return st;
}

EvansState evolve(const EvansSystem& sys, Side side, const EvansState& start, double s_target,
                  const OdeOptions& opts, long* steps) {
    const int n = static_cast<int>(start.omega.rows());
    const int k = static_cast<int>(start.omega.cols());
    CMat lim = sys.limit(side);
    CMat proj = splitting_projector(lim, side);
    const cplx mu = (proj * lim).trace();

    StateVec y(n * k + 1);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) y(j * n + i) = start.omega(i, j);
    y(n * k) = start.log_gamma;

    auto rhs = [&](double s, const StateVec& z, StateVec& dz) {
        CMat om(n, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) om(i, j) = z(j * n + i);
        CMat a = sys.at(s);
        CMat aom = a * om;
        CMat m = om.adjoint() * aom;
        CMat d = aom - om * m;
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) dz(j * n + i) = d(i, j);
        dz(n * k) = m.trace() - mu;
    };
    OdeStats stats;
    StateVec yf = integrate(rhs, y, start.s, s_target, opts, &stats);
    if (steps) *steps += stats.steps;
    EvansState out;
    out.omega.resize(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) out.omega(i, j) = yf(j * n + i);
    out.log_gamma = yf(n * k);
    out.s = s_target;
    return out;
}

EvansValue evans(const EvansSystem& sys, const InitialBases& bases, const EngineOptions& opts) {
    EvansState m0 = initial_state(bases.minus, sys.s_begin());
    EvansState p0 = initial_state(bases.plus, sys.s_end());
    EvansValue v;
    EvansState m1 = evolve(sys, Side::Minus, m0, opts.match_point, opts.ode, &v.steps);
    EvansState p1 = evolve(sys, Side::Plus, p0, opts.match_point, opts.ode, &v.steps);
    const int n = static_cast<int>(m1.omega.rows());
    CMat full(n, n);
    full << m1.omega, p1.omega;
    cplx det = full.determinant();
    v.D = std::exp(m1.log_gamma + p1.log_gamma) * det;
    v.D_no_radial = std::exp(m0.log_gamma + p0.log_gamma) * det;
    auto drift = [](const CMat& om) {
        return (om.adjoint() * om - CMat::Identity(om.cols(), om.cols())).cwiseAbs().maxCoeff();
    };
    v.drift = std::max(drift(m1.omega), drift(p1.omega));
    return v;
}

InitialBases transport_bases(const BasisPath& path, double t0, double t1, const InitialBases& start,
                             double max_jump) {
    InitialBases out;
    out.minus = kato_transport([&](double t) { return splitting_projector(path.limit_minus(t), Side::Minus); }, t0,
                               t1, start.minus, max_jump);
    out.plus = kato_transport([&](double t) { return splitting_projector(path.limit_plus(t), Side::Plus); }, t0, t1,
                              start.plus, max_jump);
    return out;
}

InitialBases anchor_bases(const EvansSystem& sys) {
    return {splitting_subspace(sys.limit(Side::Minus), Side::Minus).basis,
            splitting_subspace(sys.limit(Side::Plus), Side::Plus).basis};
}

InitialBases reflect(const InitialBases& b) {
    CMat j = conjugation_symmetry();
    return {j * b.minus.conjugate(), j * b.plus.conjugate()};
}

std::vector<SpokeSample> radial_continue(const Profile& profile, Coordinates coords, cplx lambda_c, cplx xi_c,
                                         const std::vector<double>& r_grid, const InitialBases& start,
                                         const EngineOptions& opts) {
    auto system_at = [&](double r) { return EvansSystem(profile, coords, ChartPoint{r, lambda_c, xi_c}); };
    BasisPath path{[&](double r) { return system_at(r).limit(Side::Minus); },
                   [&](double r) { return system_at(r).limit(Side::Plus); }};
    std::vector<SpokeSample> out;
    InitialBases b = start;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (i > 0) b = transport_bases(path, r_grid[i - 1], r_grid[i], b);
        EvansValue v = evans(system_at(r_grid[i]), b, opts);
        out.push_back({r_grid[i], v.D});
    }
    return out;
}

}  // namespace shockstab
