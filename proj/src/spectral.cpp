#include "openxxz/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "openxxz/kernels.hpp"

namespace openxxz {

StructureFunctionValues eval_structure_functions(cplx u, std::optional<cplx> v, const SpectralContext& ctx) {
    if (std::abs(u) == 0.0) throw ZeroParameter("u must be nonzero");
    StructureFunctionValues out;
    out.F = ctx.F(u);
    out.U = ctx.U(u);
    out.V = ctx.V(u);
    if (v) out.Q = ctx.Q(u, *v);
    return out;
}

PhiHValues eval_phi_H(cplx u, const SpectralContext& ctx) {
    return {ctx.phi(u), ctx.Hfun(u)};
}

cplx eigenvalue_lambda(cplx u, const BetheRoots& roots, const SpectralContext& ctx) {
    double scale = std::abs(ctx.U(u));
    for (const cplx& r : roots.roots)
        if (std::abs(ctx.Q(u, r)) < kGenericityTol * std::max(1.0, scale))
            throw PoleAtRoot("u collides with a Bethe root in U");
    return ctx.Lambda(u, roots.roots);
}

cplx bethe_function_Y(cplx u, const BetheRoots& roots, const SpectralContext& ctx) {
    return ctx.Y(u, roots.roots);
}

double bethe_residual_scale(cplx u, const std::vector<cplx>& roots, const SpectralContext& ctx) {
    return std::max(std::abs(ctx.phi(u) * ctx.Qprod(ctx.qinv * u, roots)), std::abs(ctx.Hfun(u)));
}

cplx lift_U_to_u(cplx Uval, const SpectralContext& ctx) {
    const cplx c = ctx.c1 * ctx.c1 * Uval;
    const cplx disc = std::sqrt(c * c - 4.0);
    const cplx y1 = (c + disc) / (2.0 * ctx.q);
    const cplx y2 = (c - disc) / (2.0 * ctx.q);
    cplx cand[4];
    cand[0] = std::sqrt(y1);
    cand[1] = -cand[0];
    cand[2] = std::sqrt(y2);
    cand[3] = -cand[2];
    auto better = [](cplx a, cplx b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12 * std::max(ma, mb)) return ma > mb;
        if (std::abs(a.real() - b.real()) > 1e-12 * std::max(1.0, ma)) return a.real() > b.real();
        return a.imag() > b.imag();
    };
    std::sort(cand, cand + 4, better);
    const cplx u = cand[0];
    if (rel_diff(ctx.U(u), Uval) > 1e-9 && std::abs(Uval) > 1e-300)
        throw LiftFailure("lifted value does not reproduce U");
    return u;
}

namespace {

// companion-matrix roots of the monic polynomial z^n + c_{n-1} z^{n-1} + ... + c_0
std::vector<cplx> monic_roots(const Eigen::VectorXcd& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    Matrix cm = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) cm(i + 1, i) = 1.0;
    for (int i = 0; i < n; ++i) cm(i, n - 1) = -coeffs(i);
    Eigen::ComplexEigenSolver<Matrix> es(cm, /*computeEigenvectors=*/false);
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

}  // namespace

BetheRoots solve_bethe_roots(int eigen_index, const ModelParams& m, SeededRng& rng,
                             const SolveOptions& opt, SolveDiagnostics* diag) {
    const int d = 1 << m.N;
    if (eigen_index < 0 || eigen_index >= d) throw ConfigError("eigen_index out of range [0, 2^N)");
    const auto ctx = make_context(m);
    const int npts = opt.sample_points > 0 ? opt.sample_points : m.N + 6;

    // probe point and deterministic eigenstate ordering
    const cplx u0 = rng.annulus(opt.radius_lo, opt.radius_hi);
    const Matrix t0 = transfer_t(u0, ctx);
    Eigen::ComplexEigenSolver<Matrix> es(t0);
    if (es.info() != Eigen::Success) throw IllConditioned("transfer-matrix eigensolve failed");
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const cplx ea = es.eigenvalues()(a), eb = es.eigenvalues()(b);
        if (ea.real() != eb.real()) return ea.real() < eb.real();
        return ea.imag() < eb.imag();
    });
    const cplx lambda0 = es.eigenvalues()(order[eigen_index]);
    double eig_scale = 0.0;
    for (int i = 0; i < d; ++i) eig_scale = std::max(eig_scale, std::abs(es.eigenvalues()(i)));
    for (int i = 0; i < d; ++i) {
        if (i == order[eigen_index]) continue;
        if (std::abs(es.eigenvalues()(i) - lambda0) < opt.eigen_gap_tol * eig_scale)
            throw IllConditioned("degenerate transfer eigenvalue at the probe point");
    }
    const Vector psi = es.eigenvectors().col(order[eigen_index]);

    RowVector w(d);
    for (int tries = 0;; ++tries) {
        for (int i = 0; i < d; ++i) w(i) = rng.annulus(0.5, 1.5);
        if (std::abs((w * psi).value()) > 0.05 * w.norm()) break;
        if (tries > 16) throw IllConditioned("probe covector orthogonal to eigenvector");
    }
    const cplx wpsi = (w * psi).value();

    std::string last_failure = "no draw attempted";
    BetheRoots best;
    double best_resid = 1e300;
    double best_cond = 0.0;

    for (int draw = 0; draw < opt.max_draws; ++draw) {
        // sample points on a generic circle, rejecting near-coincidences in U
        const double r = rng.uniform(opt.radius_lo, opt.radius_hi);
        std::vector<cplx> pts;
        int guard = 0;
        while ((int)pts.size() < npts && guard++ < 200) {
            const cplx u = r * rng.unit_phase();
            if (std::abs(ctx.q * u * u - ctx.qinv / (u * u)) < 1e-3) continue;  // phi pole
            bool ok = true;
            for (const cplx& p : pts)
                if (std::abs(ctx.Q(u, p)) < kGenericityTol) ok = false;
            if (ok) pts.push_back(u);
        }
        if ((int)pts.size() < npts) {
            last_failure = "sample-point rejection exhausted";
            continue;
        }

        Matrix A(npts, m.N);
        Vector rhs(npts);
        for (int k = 0; k < npts; ++k) {
            const cplx uk = pts[k];
            const cplx lam = (w * (transfer_t(uk, ctx) * psi)).value() / wpsi;
            const cplx Uk = ctx.U(uk), Um = ctx.U(ctx.qinv * uk), Up = ctx.U(ctx.q * uk);
            const cplx ph = ctx.phi(uk), phc = ctx.phi(ctx.crossed(uk));
            cplx pk(1.0), pm(1.0), pp(1.0);
            for (int rdeg = 0; rdeg < m.N; ++rdeg) {
                A(k, rdeg) = lam * pk - ph * pm - phc * pp;
                pk *= Uk;
                pm *= Um;
                pp *= Up;
            }
            rhs(k) = ctx.Hfun(uk) - (lam * pk - ph * pm - phc * pp);
        }
        Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double cond = svd.singularValues()(0) / svd.singularValues()(m.N - 1);
        best_cond = cond;
        if (cond > opt.cond_limit) {
            last_failure = "coefficient system condition " + fmt_double(cond);
            continue;
        }
        const Vector coeff = svd.solve(rhs);

        const auto zs = monic_roots(coeff);
        double zscale = 1.0;
        for (const cplx& z : zs) zscale = std::max(zscale, std::abs(z));
        bool degenerate = false;
        for (size_t i = 0; i < zs.size(); ++i)
            for (size_t j = i + 1; j < zs.size(); ++j)
                if (std::abs(zs[i] - zs[j]) < kGenericityTol * zscale) degenerate = true;
        if (degenerate) {
            last_failure = "near-coincident U-roots";
            continue;
        }

        BetheRoots out;
        out.eigen_index = eigen_index;
        try {
            for (const cplx& z : zs) {
                out.U_values.push_back(z);
                out.roots.push_back(lift_U_to_u(z, ctx));
            }
        } catch (const LiftFailure& e) {
            last_failure = e.what();
            continue;
        }

        double max_resid = 0.0;
        for (const cplx& u : out.roots) {
            const double sc = bethe_residual_scale(u, out.roots, ctx);
            const double res = std::abs(ctx.Y(u, out.roots)) / std::max(sc, 1e-300);
            out.residuals.push_back(res);
            max_resid = std::max(max_resid, res);
        }
        out.onshell = max_resid <= opt.onshell_tol;
        if (max_resid < best_resid) {
            best = out;
            best_resid = max_resid;
        }
        if (out.onshell) {
            if (diag) {
                diag->condition = cond;
                diag->max_residual = max_resid;
                diag->probe = u0;
                diag->lambda_probe = lambda0;
            }
            return out;
        }
        last_failure = "scaled residual " + fmt_double(max_resid);
    }

    if (best_resid < 1e-4) {  // a root set was found but misses the on-shell tolerance
        if (diag) {
            diag->condition = best_cond;
            diag->max_residual = best_resid;
            diag->probe = u0;
            diag->lambda_probe = lambda0;
        }
        return best;
    }
    if (best_resid < 1e200) throw ResidualTooLarge("best scaled residual " + fmt_double(best_resid));
    throw IllConditioned(last_failure);
}

// ---------------------------------------------------------------------------
// serialisation
// ---------------------------------------------------------------------------

std::string bethe_roots_to_kv(const BetheRoots& r, cplx q) {
    std::string out;
    out += "M " + std::to_string(r.roots.size()) + "\n";
    out += "q_re " + fmt_double(q.real()) + "\nq_im " + fmt_double(q.imag()) + "\n";
    for (size_t i = 0; i < r.roots.size(); ++i) {
        const std::string k = "root_" + std::to_string(i + 1);
        out += k + "_re " + fmt_double(r.roots[i].real()) + "\n";
        out += k + "_im " + fmt_double(r.roots[i].imag()) + "\n";
        out += "residual_" + std::to_string(i + 1) + " " + fmt_double(r.residuals.empty() ? 0.0 : r.residuals[i]) + "\n";
    }
    out += "onshell " + std::string(r.onshell ? "1" : "0") + "\n";
    out += "eigen_index " + std::to_string(r.eigen_index.value_or(-1)) + "\n";
    return out;
}

BetheRoots bethe_roots_from_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string key, val;
    while (in >> key >> val) kv[key] = val;
    auto need = [&](const std::string& k) -> std::string {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("missing key '" + k + "' in roots block");
        return it->second;
    };
    BetheRoots r;
    const int mcount = std::stoi(need("M"));
    for (int i = 1; i <= mcount; ++i) {
        const std::string k = "root_" + std::to_string(i);
        r.roots.emplace_back(std::strtod(need(k + "_re").c_str(), nullptr),
                             std::strtod(need(k + "_im").c_str(), nullptr));
        r.residuals.push_back(std::strtod(need("residual_" + std::to_string(i)).c_str(), nullptr));
    }
    r.onshell = need("onshell") == "1";
    const int ei = std::stoi(need("eigen_index"));
    if (ei >= 0) r.eigen_index = ei;
    return r;
}

}  // namespace openxxz
