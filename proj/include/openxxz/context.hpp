#pragma once

#include <cmath>
#include <vector>

#include "openxxz/params.hpp"
#include "openxxz/qspecial.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

inline double to_dbl(double x) { return x; }
template <class T>
double to_dbl(const T& x) {
    return x.template convert_to<double>();
}

template <class C>
C make_scalar(cplx z) {
    return C(z.real(), z.imag());
}

// Scalar structure functions of the model, templated on the complex type so
// the asymptotic suites can run the identical formulas in extended precision.
// All spectral data depend on u only through U(u); the crossing map
// u -> 1/(q u) and the sign flip u -> -u leave U invariant.
template <class C>
struct SpectralCtx {
    int N = 0;
    C q, qinv, c1;   // c1 = q - 1/q
    C sqq;           // principal sqrt(q); the only square-root branch in the build
    std::vector<C> x;
    C kappa, kappa_t, tau, tau_t, xi, xi_t, mu, mu_t;
    C nu_m, nu_p, eps_m, eps_p;
    C alpha, beta;
    C phi_pref;   // -kappa kappa~ tau tau~
    C h_const;    // boundary bracket of the inhomogeneous term

    static SpectralCtx make(const ModelParams& mp) {
        SpectralCtx c;
        c.N = mp.N;
        c.q = make_scalar<C>(mp.q);
        c.qinv = C(1) / c.q;
        c.c1 = c.q - c.qinv;
        using std::sqrt;
        c.sqq = sqrt(c.q);
        c.x.resize(mp.N);
        for (int i = 0; i < mp.N; ++i) c.x[i] = make_scalar<C>(mp.x[i]);
        const auto& b = mp.boundary;
        c.kappa = make_scalar<C>(b.kappa);
        c.kappa_t = make_scalar<C>(b.kappa_tilde);
        c.tau = make_scalar<C>(b.tau);
        c.tau_t = make_scalar<C>(b.tau_tilde);
        c.xi = make_scalar<C>(b.xi);
        c.xi_t = make_scalar<C>(b.xi_tilde);
        c.mu = make_scalar<C>(b.mu);
        c.mu_t = make_scalar<C>(b.mu_tilde);

        const C i1(0, 1);
        c.nu_m = i1 * c.tau_t * c.tau * (c.mu / c.mu_t + c.mu_t / c.mu);
        c.nu_p = i1 * c.tau_t * c.tau * (c.mu * c.mu_t + C(1) / (c.mu * c.mu_t));
        c.eps_m = i1 * c.kappa_t * c.kappa * (c.xi / c.xi_t + c.xi_t / c.xi);
        c.eps_p = i1 * c.kappa_t * c.kappa * (c.xi * c.xi_t + C(1) / (c.xi_t * c.xi));

        c.beta = -i1 * (c.kappa_t * c.xi_t / (c.kappa * c.xi)) * cpow_int(c.q, 1 - 2 * mp.N);
        c.alpha = -i1 * (c.kappa_t * c.xi / (c.kappa * c.xi_t)) * cpow_int(c.q, 1 + 2 * mp.N);

        c.phi_pref = -c.kappa * c.kappa_t * c.tau * c.tau_t;
        c.h_const = c.kappa * c.kappa * c.tau * c.tau + c.kappa_t * c.kappa_t * c.tau_t * c.tau_t +
                    c.kappa * c.kappa_t * c.tau * c.tau_t *
                        ((c.xi * c.mu_t / (c.xi_t * c.mu)) * cpow_int(c.q, mp.N + 1) +
                         (c.xi_t * c.mu / (c.xi * c.mu_t)) * cpow_int(c.q, -mp.N - 1));
        return c;
    }

    C gamma(long m) const { return alpha * cpow_int(q, -m) - beta * cpow_int(q, m); }

    C U(C u) const {
        C u2 = u * u;
        return (q * u2 + qinv / u2) / (c1 * c1);
    }
    C dU(C u) const {
        C u2 = u * u;
        return C(2) * (q * u2 - qinv / u2) / (c1 * c1 * u);
    }
    C F(C u) const {
        C u2 = u * u;
        return (q * q * u2 - C(1) / (q * q * u2)) / (u * c1);
    }
    C Q(C a, C b) const { return U(a) - U(b); }
    C crossed(C u) const { return C(1) / (q * u); }

    // V(u) = prod_i Q(q^{1/2} u, q^{-1/2} x_i); branch-free since only squares enter
    C V(C u) const {
        C p(1);
        C u2 = u * u, q2 = q * q;
        for (const C& xv : x) {
            C x2 = xv * xv;
            p *= (q2 * u2 + C(1) / (q2 * u2) - x2 - C(1) / x2) / (c1 * c1);
        }
        return p;
    }
    // V(1/(q u)) without forming the crossed argument
    C V_crossed(C u) const {
        C p(1);
        C u2 = u * u;
        for (const C& xv : x) {
            C x2 = xv * xv;
            p *= (u2 + C(1) / u2 - x2 - C(1) / x2) / (c1 * c1);
        }
        return p;
    }

    C phi(C u) const {
        C u2 = u * u;
        C den = q * u2 - qinv / u2;
        if (to_dbl(abs_c(den)) < kGenericityTol * to_dbl(abs_c(q * u2)))
            throw CrossingSingularity("phi evaluated at u^4 = q^{-2}");
        return phi_pref * (xi_t * u + C(1) / (xi_t * u)) * (u / xi + xi / u) * (mu * u + C(1) / (mu * u)) *
               (u / mu_t + mu_t / u) * (q * q * u2 - C(1) / (q * q * u2)) / den * V(u);
    }

    C Hfun(C u) const {
        C u2 = u * u;
        return h_const * (u2 - C(1) / u2) * (q * q * u2 - C(1) / (q * q * u2)) * V(u) * V_crossed(u);
    }

    C Qprod(C a, const std::vector<C>& roots) const {
        C p(1);
        C ua = U(a);
        for (const C& r : roots) p *= ua - U(r);
        return p;
    }
    C Qprod_skip(C a, const std::vector<C>& roots, int skip) const {
        C p(1);
        C ua = U(a);
        for (int j = 0; j < (int)roots.size(); ++j)
            if (j != skip) p *= ua - U(roots[j]);
        return p;
    }

    // Bethe function: pole-free numerator of the TQ relation
    C Y(C u, const std::vector<C>& roots) const {
        return phi(u) * Qprod(qinv * u, roots) + phi(crossed(u)) * Qprod(q * u, roots) + Hfun(u);
    }

    // transfer-matrix eigenvalue on the root set
    C Lambda(C u, const std::vector<C>& roots) const {
        C den = Qprod(u, roots);
        if (to_dbl(abs_c(den)) == 0.0) throw PoleAtRoot("Lambda evaluated at a Bethe root");
        return Y(u, roots) / den;
    }

    // analytic dLambda(u|v)/dv_i
    C dLambda_dv(C u, const std::vector<C>& v, int i) const {
        C lam = Lambda(u, v);
        C num = lam * Qprod_skip(u, v, i) - phi(u) * Qprod_skip(qinv * u, v, i) -
                phi(crossed(u)) * Qprod_skip(q * u, v, i);
        return dU(v[i]) * num / Qprod(u, v);
    }

    // set products
    C Fprod(const std::vector<C>& s) const {
        C p(1);
        for (const C& u : s) p *= F(u);
        return p;
    }
    C dUprod(const std::vector<C>& s) const {
        C p(1);
        for (const C& u : s) p *= dU(u);
        return p;
    }
    C Delta(const std::vector<C>& s) const {  // prod_{i<j} Q(u_i, u_j)
        C p(1);
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j) p *= Q(s[i], s[j]);
        return p;
    }
    C DeltaPrime(const std::vector<C>& s) const {  // prod_{i>j} Q(u_i, u_j)
        C p(1);
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j) p *= Q(s[j], s[i]);
        return p;
    }

    static auto abs_c(const C& z) {
        using std::abs;
        return abs(z);
    }
};

template <class C>
std::vector<C> exclude(const std::vector<C>& s, int i) {
    std::vector<C> out;
    out.reserve(s.size() - 1);
    for (int j = 0; j < (int)s.size(); ++j)
        if (j != i) out.push_back(s[j]);
    return out;
}

template <class C>
std::vector<C> replace_at(const std::vector<C>& s, int i, C u) {
    std::vector<C> out = s;
    out[i] = u;
    return out;
}

using SpectralContext = SpectralCtx<cplx>;

inline SpectralContext make_context(const ModelParams& m) { return SpectralContext::make(m); }

}  // namespace openxxz
