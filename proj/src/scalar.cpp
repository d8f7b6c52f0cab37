#include "openxxz/scalar.hpp"

#include <Eigen/SVD>

#include "openxxz/kernels.hpp"
#include "openxxz/qspecial.hpp"

namespace openxxz {

namespace {

void assert_onshell(const std::vector<cplx>& v, const SpectralContext& ctx) {
    for (const cplx& vi : v) {
        const double sc = std::max(bethe_residual_scale(vi, v, ctx), 1e-300);
        if (std::abs(ctx.Y(vi, v)) / sc > 1e-6)
            throw OffShellDual("dual roots fail the Bethe equations, residual " +
                               fmt_double(std::abs(ctx.Y(vi, v)) / sc));
    }
}

void assert_distinct(const std::vector<cplx>& s, const SpectralContext& ctx, const char* what) {
    double scale = 1.0;
    for (const cplx& u : s) scale = std::max(scale, std::abs(ctx.U(u)));
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (std::abs(ctx.Q(s[i], s[j])) < kGenericityTol * scale)
                throw DegenerateRoots(std::string(what) + ": coincident in U");
}

}  // namespace

ScalarSystem build_linear_system(const std::vector<cplx>& u_ext, const BetheRoots& v,
                                 const ModelParams& m, SeededRng& rng) {
    const int n = m.N;
    const int next = n + 1;
    if ((int)u_ext.size() != next) throw ConfigError("u_ext must hold N+1 parameters");
    if ((int)v.roots.size() != n) throw ConfigError("v must hold N roots");
    const auto ctx = make_context(m);
    assert_onshell(v.roots, ctx);
    assert_distinct(u_ext, ctx, "u_ext");
    {
        std::vector<cplx> all = u_ext;
        all.insert(all.end(), v.roots.begin(), v.roots.end());
        assert_distinct(all, ctx, "u_ext vs v");
    }
    for (const cplx& u : u_ext)
        if (std::abs(ctx.F(u)) < kGenericityTol) throw DegenerateRoots("F(u_j) vanishes");

    ScalarSystem s;
    s.u_ext = u_ext;
    s.v = v.roots;

    s.L = Matrix::Zero(next, next);
    for (int k = 0; k < next; ++k) {
        const auto u_bar_k = exclude(u_ext, k);
        for (int j = 0; j < next; ++j) {
            cplx val = -(ctx.F(u_ext[k]) / ctx.F(u_ext[j])) * ctx.Y(u_ext[j], u_bar_k) /
                       ctx.Qprod_skip(u_ext[j], u_ext, j);
            if (k == j) val += ctx.Lambda(u_ext[j], v.roots);
            s.L(k, j) = val;
        }
    }

    // auxiliary set {v, w}: generic last entry, rejected near any pole
    cplx w;
    for (int tries = 0;; ++tries) {
        w = rng.annulus(0.8, 1.6);
        bool ok = true;
        for (const cplx& vi : v.roots)
            if (std::abs(ctx.Q(vi, w)) < kGenericityTol) ok = false;
        for (const cplx& uj : u_ext)
            if (std::abs(ctx.Q(uj, w)) < kGenericityTol) ok = false;
        if (ok) break;
        if (tries > 64) throw GenericityFailure("auxiliary parameter rejection exhausted");
    }
    s.w_aux = v.roots;
    s.w_aux.push_back(w);

    s.W = Matrix::Zero(next, next);
    for (int i = 0; i < next; ++i) {
        const auto w_bar_i = exclude(s.w_aux, i);
        for (int k = 0; k < next; ++k)
            s.W(i, k) = ctx.Qprod(u_ext[k], w_bar_i) /
                        (ctx.F(u_ext[k]) * ctx.Qprod_skip(u_ext[k], u_ext, k));
    }
    s.Omega = s.W * s.L;

    s.OmegaTilde = Matrix::Zero(next, next);
    for (int i = 0; i < n; ++i) s.OmegaTilde.row(i) = s.Omega.row(i) / ctx.Q(v.roots[i], w);

    s.M = Matrix::Zero(n, next);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < next; ++j)
            s.M(i, j) = ctx.Qprod(u_ext[j], v.roots) * ctx.dLambda_dv(u_ext[j], v.roots, i);
    return s;
}

Matrix jacobian_matrix_M(const std::vector<cplx>& u_ext, const BetheRoots& v, const ModelParams& m) {
    const auto ctx = make_context(m);
    assert_onshell(v.roots, ctx);
    const int n = m.N, cols = (int)u_ext.size();
    Matrix a(n, cols), b(n, cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < cols; ++j) {
            const cplx uj = u_ext[j];
            if (std::abs(ctx.Q(uj, v.roots[i])) < kGenericityTol)
                throw DegenerateRoots("u_j collides with v_i in U");
            a(i, j) = ctx.Qprod(uj, v.roots) * ctx.dLambda_dv(uj, v.roots, i);
            const auto v_repl = replace_at(v.roots, i, uj);
            b(i, j) = ctx.dU(v.roots[i]) * ctx.Y(uj, v_repl) / ctx.Q(uj, v.roots[i]);
        }
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    const double diff = (a - b).cwiseAbs().maxCoeff() / scale;
    if (diff > 1e-9)
        throw CrossCheckFailure("analytic and Bethe-function Jacobian routes differ by " + fmt_double(diff));
    return a;
}

VerificationReport determinant_crosschecks(const std::vector<cplx>& u_red, const BetheRoots& v,
                                           const ModelParams& m) {
    const int n = m.N;
    if ((int)u_red.size() != n) throw ConfigError("reduced set must hold N parameters");
    const auto ctx = make_context(m);
    assert_onshell(v.roots, ctx);
    assert_distinct(u_red, ctx, "u_red");
    const auto& vr = v.roots;

    Matrix direct(n, n), ytilde(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            direct(i, j) = ctx.Qprod(u_red[j], vr) * ctx.dLambda_dv(u_red[j], vr, i);
            ytilde(i, j) = ctx.Y(u_red[j], replace_at(vr, i, u_red[j])) / ctx.Q(u_red[j], vr[i]);
        }
    const cplx dUv = ctx.dUprod(vr);
    const cplx det_direct = Eigen::PartialPivLU<Matrix>(direct).determinant();
    const cplx det_route1 = dUv * Eigen::PartialPivLU<Matrix>(ytilde).determinant();

    Matrix bmat(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            cplx num(1.0);
            for (int mm = 0; mm < n; ++mm) num *= ctx.Q(u_red[mm], vr[l]);
            cplx den = ctx.Q(u_red[k], vr[l]);
            for (int mm = 0; mm < n; ++mm)
                if (mm != l) den *= ctx.Q(vr[mm], vr[l]);
            bmat(k, l) = num / den;
        }
    const cplx det_b = Eigen::PartialPivLU<Matrix>(bmat).determinant();
    const cplx det_b_pred = ctx.DeltaPrime(u_red) / ctx.DeltaPrime(vr);
    const cplx det_route2 =
        dUv * (ctx.DeltaPrime(vr) / ctx.DeltaPrime(u_red)) *
        Eigen::PartialPivLU<Matrix>(Matrix(bmat * ytilde)).determinant();

    Matrix jac(n, n);
    for (int i = 0; i < n; ++i) {
        const auto u_bar_i = exclude(u_red, i);
        for (int j = 0; j < n; ++j) {
            const auto u_bar_j = exclude(u_red, j);
            cplx val = -(ctx.phi(u_red[i]) * ctx.Qprod(ctx.qinv * u_red[i], u_bar_j) +
                         ctx.phi(ctx.crossed(u_red[i])) * ctx.Qprod(ctx.q * u_red[i], u_bar_j)) /
                       ctx.Qprod(u_red[i], u_bar_i);
            if (i == j) val += ctx.Lambda(u_red[i], vr);
            jac(i, j) = val;
        }
    }
    const cplx det_route3 = dUv * ctx.DeltaPrime(vr) * ctx.Delta(u_red) *
                            Eigen::PartialPivLU<Matrix>(jac).determinant();

    VerificationReport rep;
    rep.suite = "determinant_crosschecks";
    rep.add("bethe_function_vs_direct", rel_diff(det_route1, det_direct), 1e-8,
            "N = " + std::to_string(n));
    rep.add("cauchy_transform_vs_direct", rel_diff(det_route2, det_direct), 1e-8);
    rep.add("jacobian_form_vs_direct", rel_diff(det_route3, det_direct), 1e-8);
    rep.add("cauchy_determinant_identity", rel_diff(det_b, det_b_pred), 1e-10);
    return rep;
}

EtaNu eta_and_nu(const ModelParams& m, int branch, cplx a_geo) {
    if (branch != 1 && branch != -1) throw ConfigError("branch must be +1 or -1");
    const auto& b = m.boundary;
    if (std::abs(b.kappa) < kGenericityTol || std::abs(b.xi) < kGenericityTol)
        throw ZeroParameter("kappa and xi must be nonzero");
    const int n = m.N;
    const cplx q = m.q, c1 = q - 1.0 / q;
    const cplx kap = b.kappa, kt = cplx(branch) * b.kappa_tilde;
    const cplx tau = b.tau, tt = b.tau_tilde;
    const cplx xi = b.xi, xt = b.xi_tilde, mu = b.mu, mt = b.mu_tilde;
    const cplx i1(0.0, 1.0);

    auto poch_checked = [&](cplx base, cplx qq, const char* name) {
        const cplx p = q_pochhammer(base, qq, n);
        double scale = 1.0;
        cplx bq = base;
        for (int k = 0; k < n; ++k) {
            scale *= 1.0 + std::abs(bq);
            bq *= qq;
        }
        if (std::abs(p) < 1e-12 * scale)
            throw PochhammerZero(std::string(name) + " vanishes at these parameters");
        return p;
    };

    EtaNu out;
    const cplx num = q_pochhammer(-(kt * tt * mt * xt / (kap * tau * mu * xi)) * cpow_int(q, 1 - 3 * n),
                                  q * q, n);
    const cplx den1 = poch_checked((xt * xt / (xi * xi)) * cpow_int(q, 2 - 4 * n), cpow_int(q, 4),
                                   "denominator Pochhammer (xi ratio)");
    const cplx den2 = poch_checked(-(kt * tt * mt * xi / (kap * tau * mu * xt)) * cpow_int(q, 1 - n),
                                   q * q, "denominator Pochhammer (boundary ratio)");
    out.eta = cpow_int(i1 * xt / (cpow_int(q, n) * c1 * kt * kap * xi), n) * num / (den1 * den2);

    out.nu_poch = cpow_int(kap * kap * tau * tau, n) *
                  q_pochhammer(-(kt * tt * mt * xi / (kap * tau * mu * xt)) * cpow_int(q, 1 - n), q * q, n) *
                  q_pochhammer(-(kt * tt * mu * xt / (kap * tau * mt * xi)) * cpow_int(q, 1 - n), q * q, n);

    // determinant form with the grid-ratio dependent Cauchy-like kernels
    auto xi_kernel = [&](int i, int j, cplx qq) {
        cplx numk(1.0), denk(1.0);
        const cplx a2i = cpow_int(a_geo, 2 * i);
        for (int k = 1; k <= n; ++k) {
            if (k != j) numk *= qq * a2i - cpow_int(a_geo, 2 * k) / qq;
            if (k != i) denk *= a2i - cpow_int(a_geo, 2 * k);
        }
        return numk / denk;
    };
    Matrix nu_mat(n, n);
    const cplx diag = kt * kt * tt * tt + kap * kap * tau * tau;
    const cplx offc = kap * kt * tau * tt;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            nu_mat(i - 1, j - 1) = (i == j ? diag : cplx(0.0)) +
                                   offc * ((mu * xt / (mt * xi)) * xi_kernel(i, j, 1.0 / q) +
                                           (mt * xi / (mu * xt)) * xi_kernel(i, j, q));
    out.nu_det = n == 0 ? cplx(1.0) : Eigen::PartialPivLU<Matrix>(nu_mat).determinant();
    return out;
}

ScalarResult scalar_product_determinant(const BetheRoots& u_off, const BetheRoots& v_on,
                                        const ModelParams& m, int branch) {
    const int n = m.N;
    if ((int)u_off.roots.size() != n || (int)v_on.roots.size() != n)
        throw ConfigError("both root sets must hold N parameters");
    const auto ctx = make_context(m);
    assert_onshell(v_on.roots, ctx);
    const auto& ub = u_off.roots;
    const auto& vb = v_on.roots;

    double uscale = 1.0;
    for (const cplx& u : ub) uscale = std::max(uscale, std::abs(ctx.U(u)));
    for (size_t i = 0; i < ub.size(); ++i)
        for (size_t j = i + 1; j < ub.size(); ++j)
            if (std::abs(ctx.Q(ub[i], ub[j])) < kGenericityTol * uscale)
                throw DegenerateDenominator("Delta(u) vanishes: off-shell roots coincide in U");
    for (const cplx& u : ub) {
        if (std::abs(ctx.F(u)) < kGenericityTol) throw DegenerateDenominator("F(u_j) vanishes");
        for (const cplx& vv : vb)
            if (std::abs(ctx.Q(u, vv)) < kGenericityTol * uscale)
                throw DegenerateRoots("off-shell root collides with dual root in U");
    }
    for (const cplx& vv : vb)
        if (std::abs(ctx.dU(vv)) < kGenericityTol)
            throw DegenerateDenominator("dU(v_i) vanishes");

    const Vector ket = bethe_ket_t(ub, ctx);
    const RowX<cplx> bra = bethe_bra_t(vb, ctx);
    const cplx lhs = (bra * ket).value();
    const cplx bra_ref = (bra * ref_ket_t(ctx)).value();

    Matrix jac(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            jac(i, j) = ctx.Qprod(ub[j], vb) * ctx.dLambda_dv(ub[j], vb, i);
    Eigen::JacobiSVD<Matrix> svd(jac);
    const double cond =
        svd.singularValues()(0) / std::max(svd.singularValues()(n - 1), 1e-300);
    const cplx det = Eigen::PartialPivLU<Matrix>(jac).determinant();

    ScalarResult res;
    res.eta = eta_and_nu(m, branch).eta;
    res.branch = branch;
    res.condition = cond;
    res.lhs_direct = lhs;
    res.rhs_determinant = res.eta * bra_ref * det /
                          (ctx.dUprod(vb) * ctx.DeltaPrime(vb) * ctx.Fprod(ub) * ctx.Delta(ub));
    res.relative_error =
        std::abs(res.lhs_direct - res.rhs_determinant) /
        std::max({std::abs(res.lhs_direct), std::abs(res.rhs_determinant), 1e-300});
    return res;
}

}  // namespace openxxz
