#pragma once

#include <vector>

#include "openxxz/context.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

template <class C>
using MatX = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
template <class C>
using VecX = Eigen::Matrix<C, Eigen::Dynamic, 1>;
template <class C>
using RowX = Eigen::Matrix<C, 1, Eigen::Dynamic>;

template <class C>
double frob_d(const MatX<C>& m) {
    using std::abs;
    auto s = abs(m(0, 0));
    s = s - s;  // zero of the native real type
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            auto a = abs(m(i, j));
            s += a * a;
        }
    using std::sqrt;
    return to_dbl(sqrt(s));
}

template <class C>
MatX<C> kron_t(const MatX<C>& a, const MatX<C>& b) {
    MatX<C> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Embed a two-site operator (4x4) into a chain of nf two-dimensional factors
// at positions p0 < p1.  Factor 0 is the slowest-varying (most significant)
// index throughout the project; for monodromies it is the auxiliary space.
template <class C>
MatX<C> embed_two_site(const MatX<C>& op4, int nf, int p0, int p1) {
    const int dim = 1 << nf;
    MatX<C> out = MatX<C>::Zero(dim, dim);
    for (int row = 0; row < dim; ++row) {
        const int b0 = (row >> (nf - 1 - p0)) & 1;
        const int b1 = (row >> (nf - 1 - p1)) & 1;
        for (int c0 = 0; c0 < 2; ++c0)
            for (int c1 = 0; c1 < 2; ++c1) {
                const C amp = op4(2 * b0 + b1, 2 * c0 + c1);
                int col = row;
                col ^= (b0 ^ c0) << (nf - 1 - p0);
                col ^= (b1 ^ c1) << (nf - 1 - p1);
                out(row, col) += amp;
            }
    }
    return out;
}

template <class C>
MatX<C> embed_one_site(const MatX<C>& op2, int nf, int p) {
    const int dim = 1 << nf;
    MatX<C> out = MatX<C>::Zero(dim, dim);
    for (int row = 0; row < dim; ++row) {
        const int b = (row >> (nf - 1 - p)) & 1;
        for (int c = 0; c < 2; ++c) out(row, row ^ ((b ^ c) << (nf - 1 - p))) += op2(b, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// R- and K-matrices (values and u-derivatives; every entry is Laurent in u)
// ---------------------------------------------------------------------------

template <class C>
MatX<C> r_matrix_t(C u, const SpectralCtx<C>& c) {
    const C a = (c.q * u - C(1) / (c.q * u)) / c.c1;
    const C b = (u - C(1) / u) / c.c1;
    MatX<C> r = MatX<C>::Zero(4, 4);
    r(0, 0) = a;
    r(1, 1) = b;
    r(1, 2) = C(1);
    r(2, 1) = C(1);
    r(2, 2) = b;
    r(3, 3) = a;
    return r;
}

template <class C>
MatX<C> r_matrix_du_t(C u, const SpectralCtx<C>& c) {
    const C ap = (c.q + c.qinv / (u * u)) / c.c1;
    const C bp = (C(1) + C(1) / (u * u)) / c.c1;
    MatX<C> r = MatX<C>::Zero(4, 4);
    r(0, 0) = ap;
    r(1, 1) = bp;
    r(2, 2) = bp;
    r(3, 3) = ap;
    return r;
}

template <class C>
MatX<C> k_minus_t(C u, const SpectralCtx<C>& c) {
    const C f = u * u - C(1) / (u * u);
    MatX<C> k(2, 2);
    k(0, 0) = c.nu_m * u + c.nu_p / u;
    k(0, 1) = c.tau * c.tau * f;
    k(1, 0) = c.tau_t * c.tau_t * f;
    k(1, 1) = c.nu_m / u + c.nu_p * u;
    return k;
}

template <class C>
MatX<C> k_minus_du_t(C u, const SpectralCtx<C>& c) {
    const C fp = C(2) * u + C(2) / (u * u * u);
    MatX<C> k(2, 2);
    k(0, 0) = c.nu_m - c.nu_p / (u * u);
    k(0, 1) = c.tau * c.tau * fp;
    k(1, 0) = c.tau_t * c.tau_t * fp;
    k(1, 1) = -c.nu_m / (u * u) + c.nu_p;
    return k;
}

template <class C>
MatX<C> k_plus_t(C u, const SpectralCtx<C>& c) {
    const C q2 = c.q * c.q;
    const C f = q2 * u * u - C(1) / (q2 * u * u);
    MatX<C> k(2, 2);
    k(0, 0) = c.eps_p * c.q * u + c.eps_m / (c.q * u);
    k(0, 1) = c.kappa_t * c.kappa_t * f;
    k(1, 0) = c.kappa * c.kappa * f;
    k(1, 1) = c.eps_m * c.q * u + c.eps_p / (c.q * u);
    return k;
}

template <class C>
MatX<C> k_plus_du_t(C u, const SpectralCtx<C>& c) {
    const C q2 = c.q * c.q;
    const C fp = C(2) * q2 * u + C(2) / (q2 * u * u * u);
    MatX<C> k(2, 2);
    k(0, 0) = c.eps_p * c.q - c.eps_m / (c.q * u * u);
    k(0, 1) = c.kappa_t * c.kappa_t * fp;
    k(1, 0) = c.kappa * c.kappa * fp;
    k(1, 1) = c.eps_m * c.q - c.eps_p / (c.q * u * u);
    return k;
}

// ---------------------------------------------------------------------------
// monodromies on aux (x) site_1 (x) ... (x) site_N
// ---------------------------------------------------------------------------

template <class C>
MatX<C> monodromy_t(C u, const SpectralCtx<C>& c) {
    const int nf = c.N + 1;
    MatX<C> m = MatX<C>::Identity(1 << nf, 1 << nf);
    for (int i = 0; i < c.N; ++i) m = m * embed_two_site(r_matrix_t(u / c.x[i], c), nf, 0, i + 1);
    return m;
}

template <class C>
MatX<C> hat_monodromy_t(C u, const SpectralCtx<C>& c) {
    const int nf = c.N + 1;
    MatX<C> m = MatX<C>::Identity(1 << nf, 1 << nf);
    for (int i = c.N - 1; i >= 0; --i) m = m * embed_two_site(r_matrix_t(u * c.x[i], c), nf, 0, i + 1);
    return m;
}

// value and u-derivative by the product rule over the R-factors
template <class C>
std::pair<MatX<C>, MatX<C>> monodromy_with_du(C u, const SpectralCtx<C>& c) {
    const int nf = c.N + 1;
    const int dim = 1 << nf;
    MatX<C> val = MatX<C>::Identity(dim, dim);
    MatX<C> der = MatX<C>::Zero(dim, dim);
    for (int i = 0; i < c.N; ++i) {
        const C w = u / c.x[i];
        MatX<C> f = embed_two_site(r_matrix_t(w, c), nf, 0, i + 1);
        MatX<C> fp = embed_two_site(MatX<C>(r_matrix_du_t(w, c) / c.x[i]), nf, 0, i + 1);
        der = der * f + val * fp;
        val = val * f;
    }
    return {val, der};
}

template <class C>
std::pair<MatX<C>, MatX<C>> hat_monodromy_with_du(C u, const SpectralCtx<C>& c) {
    const int nf = c.N + 1;
    const int dim = 1 << nf;
    MatX<C> val = MatX<C>::Identity(dim, dim);
    MatX<C> der = MatX<C>::Zero(dim, dim);
    for (int i = c.N - 1; i >= 0; --i) {
        const C w = u * c.x[i];
        MatX<C> f = embed_two_site(r_matrix_t(w, c), nf, 0, i + 1);
        MatX<C> fp = embed_two_site(MatX<C>(r_matrix_du_t(w, c) * c.x[i]), nf, 0, i + 1);
        der = der * f + val * fp;
        val = val * f;
    }
    return {val, der};
}

// ---------------------------------------------------------------------------
// double-row operators
// ---------------------------------------------------------------------------

template <class C>
struct DoubleRowT {
    MatX<C> A, B, Cc, D;  // D already carries the crossing shift removed
    MatX<C> bottom_right;  // raw block D + shift*A, as it appears in K_a
};

template <class C>
MatX<C> k_a_full(C u, const SpectralCtx<C>& c) {
    const int d = 1 << c.N;
    MatX<C> km = kron_t(k_minus_t(u, c), MatX<C>(MatX<C>::Identity(d, d)));
    return monodromy_t(u, c) * km * hat_monodromy_t(u, c);
}

template <class C>
DoubleRowT<C> double_row_t(C u, const SpectralCtx<C>& c) {
    const int d = 1 << c.N;
    const C den = c.q * u * u - c.qinv / (u * u);
    if (to_dbl(SpectralCtx<C>::abs_c(den)) < kGenericityTol * to_dbl(SpectralCtx<C>::abs_c(c.q * u * u)))
        throw CrossingSingularity("double-row decomposition at u^4 = q^{-2}");
    MatX<C> k = k_a_full(u, c);
    DoubleRowT<C> out;
    out.A = k.block(0, 0, d, d);
    out.B = k.block(0, d, d, d);
    out.Cc = k.block(d, 0, d, d);
    out.bottom_right = k.block(d, d, d, d);
    out.D = out.bottom_right - (c.c1 / den) * out.A;
    return out;
}

template <class C>
MatX<C> transfer_t(C u, const SpectralCtx<C>& c) {
    const int d = 1 << c.N;
    MatX<C> k = k_a_full(u, c);
    MatX<C> kp = k_plus_t(u, c);
    return kp(0, 0) * k.block(0, 0, d, d) + kp(0, 1) * k.block(d, 0, d, d) +
           kp(1, 0) * k.block(0, d, d, d) + kp(1, 1) * k.block(d, d, d, d);
}

template <class C>
std::pair<MatX<C>, MatX<C>> transfer_with_du(C u, const SpectralCtx<C>& c) {
    const int d = 1 << c.N;
    auto [T, Tp] = monodromy_with_du(u, c);
    auto [Th, Thp] = hat_monodromy_with_du(u, c);
    MatX<C> id = MatX<C>::Identity(d, d);
    MatX<C> km = kron_t(k_minus_t(u, c), id);
    MatX<C> kmp = kron_t(k_minus_du_t(u, c), id);
    MatX<C> ka = T * km * Th;
    MatX<C> kap = Tp * km * Th + T * kmp * Th + T * km * Thp;
    MatX<C> kp = k_plus_t(u, c);
    MatX<C> kpp = k_plus_du_t(u, c);
    auto tr = [&](const MatX<C>& kk, const MatX<C>& body) {
        return MatX<C>(kk(0, 0) * body.block(0, 0, d, d) + kk(0, 1) * body.block(d, 0, d, d) +
                       kk(1, 0) * body.block(0, d, d, d) + kk(1, 1) * body.block(d, d, d, d));
    };
    return {tr(kp, ka), MatX<C>(tr(kpp, ka) + tr(kp, kap))};
}

// ---------------------------------------------------------------------------
// modified creation / annihilation operators
// ---------------------------------------------------------------------------

template <class C>
MatX<C> mod_b_t(C u, long m, const DoubleRowT<C>& dr, const SpectralCtx<C>& c) {
    const C g = c.gamma(m + 1);
    if (to_dbl(SpectralCtx<C>::abs_c(g)) <
        kGenericityTol * std::max(to_dbl(SpectralCtx<C>::abs_c(c.alpha)), to_dbl(SpectralCtx<C>::abs_c(c.beta))))
        throw SingularGamma("gamma_{m+1} vanishes at m = " + std::to_string(m));
    const C u2 = u * u;
    const C ga = c.q * u * (u2 - C(1) / u2) / (c.q * u2 - c.qinv / u2);
    const C bqm = c.beta * cpow_int(c.q, m);
    return MatX<C>((c.q * u / g) *
                   (dr.B + bqm * (ga * dr.A - dr.D / u) - bqm * bqm * dr.Cc));
}

template <class C>
MatX<C> mod_c_t(C u, long m, const DoubleRowT<C>& dr, const SpectralCtx<C>& c) {
    const C g = c.gamma(m - 1);
    if (to_dbl(SpectralCtx<C>::abs_c(g)) <
        kGenericityTol * std::max(to_dbl(SpectralCtx<C>::abs_c(c.alpha)), to_dbl(SpectralCtx<C>::abs_c(c.beta))))
        throw SingularGamma("gamma_{m-1} vanishes at m = " + std::to_string(m));
    const C u2 = u * u;
    const C ga = c.q * u * (u2 - C(1) / u2) / (c.q * u2 - c.qinv / u2);
    const C aqm = c.alpha * cpow_int(c.q, -m);
    return MatX<C>(-(c.q * u / g) *
                   (dr.B + aqm * (ga * dr.A - dr.D / u) - aqm * aqm * dr.Cc));
}

// ---------------------------------------------------------------------------
// reference states and Bethe vectors
// ---------------------------------------------------------------------------

template <class C>
VecX<C> ref_ket_t(const SpectralCtx<C>& c) {
    const C i1(0, 1);
    VecX<C> v(1);
    v(0) = C(1);
    for (int j = 1; j <= c.N; ++j) {
        VecX<C> site(2);
        site(0) = i1 * cpow_int(c.q, c.N - j) * c.mu * c.tau / (c.mu_t * c.tau_t * c.x[j - 1]);
        site(1) = C(1);
        VecX<C> nv(v.size() * 2);
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            nv(2 * k) = v(k) * site(0);
            nv(2 * k + 1) = v(k) * site(1);
        }
        v.swap(nv);
    }
    return v;
}

template <class C>
RowX<C> ref_bra_t(const SpectralCtx<C>& c) {
    const C i1(0, 1);
    RowX<C> v(1);
    v(0) = C(1);
    for (int j = 1; j <= c.N; ++j) {
        C s0 = i1 * cpow_int(c.q, c.N - j) * c.mu * c.tau_t * c.x[j - 1] / (c.mu_t * c.tau);
        RowX<C> nv(v.size() * 2);
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            nv(2 * k) = v(k) * s0;
            nv(2 * k + 1) = v(k);
        }
        v.swap(nv);
    }
    return v;
}

// m-sequences fixed by the construction: kets use (2(N-1), ..., 2, 0),
// bras use (2, 4, ..., 2N)
inline std::vector<long> ket_m_sequence(int N) {
    std::vector<long> m(N);
    for (int j = 0; j < N; ++j) m[j] = 2L * (N - 1 - j);
    return m;
}
inline std::vector<long> bra_m_sequence(int N) {
    std::vector<long> m(N);
    for (int j = 0; j < N; ++j) m[j] = 2L * (j + 1);
    return m;
}

template <class C>
VecX<C> bethe_ket_t(const std::vector<C>& roots, const SpectralCtx<C>& c) {
    VecX<C> v = ref_ket_t(c);
    const auto ms = ket_m_sequence(c.N);
    for (int j = c.N - 1; j >= 0; --j) {
        auto dr = double_row_t(roots[j], c);
        v = mod_b_t(roots[j], ms[j], dr, c) * v;
    }
    return v;
}

template <class C>
RowX<C> bethe_bra_t(const std::vector<C>& roots, const SpectralCtx<C>& c) {
    RowX<C> v = ref_bra_t(c);
    const auto ms = bra_m_sequence(c.N);
    for (int j = 0; j < c.N; ++j) {
        auto dr = double_row_t(roots[j], c);
        v = v * mod_c_t(roots[j], ms[j], dr, c);
    }
    return v;
}

// ---------------------------------------------------------------------------
// U_q(sl_2) operators of the large-u expansion
// ---------------------------------------------------------------------------

namespace detail {
inline int bit_of(int state, int nf, int p) { return (state >> (nf - 1 - p)) & 1; }
inline int mag_twice(int state, int nf) {  // sum of sigma^3 eigenvalues
    int m = 0;
    for (int p = 0; p < nf; ++p) m += 1 - 2 * bit_of(state, nf, p);
    return m;
}
}  // namespace detail

template <class C>
MatX<C> op_s3_t(const SpectralCtx<C>& c) {
    const int d = 1 << c.N;
    MatX<C> m = MatX<C>::Zero(d, d);
    for (int b = 0; b < d; ++b) m(b, b) = C(detail::mag_twice(b, c.N)) / C(2);
    return m;
}

// diagonal q^{p*S^3} for p in {-2,-1,1,2}; integer powers of sqrt(q) only
template <class C>
MatX<C> op_q_s3_t(const SpectralCtx<C>& c, int p) {
    const int d = 1 << c.N;
    MatX<C> m = MatX<C>::Zero(d, d);
    for (int b = 0; b < d; ++b) m(b, b) = cpow_int(c.sqq, (long)p * detail::mag_twice(b, c.N));
    return m;
}

// S^+/S^-/Shat^+/Shat^- with the site-ordered q-dressing
template <class C>
MatX<C> op_s_pm_t(const SpectralCtx<C>& c, bool plus, bool hat) {
    const int d = 1 << c.N;
    MatX<C> m = MatX<C>::Zero(d, d);
    for (int b = 0; b < d; ++b) {
        for (int i = 0; i < c.N; ++i) {
            const int bi = detail::bit_of(b, c.N, i);
            if (plus ? bi != 1 : bi != 0) continue;  // sigma^+ lowers the bit, sigma^- raises it
            const int nb = b ^ (1 << (c.N - 1 - i));
            int left = 0, right = 0;
            for (int p = 0; p < i; ++p) left += 1 - 2 * detail::bit_of(b, c.N, p);
            for (int p = i + 1; p < c.N; ++p) right += 1 - 2 * detail::bit_of(b, c.N, p);
            long expo = plus ? (-left + right) : (left - right);
            C amp;
            if (!hat) {
                amp = c.x[i] * cpow_int(c.sqq, expo);
            } else {
                amp = cpow_int(c.sqq, -expo) / c.x[i];
            }
            m(nb, b) += amp;
        }
    }
    return m;
}

template <class C>
struct AsymptoticOps {
    MatX<C> S3, Splus, Sminus, Shat_plus, Shat_minus;
    MatX<C> A, Astar;
};

template <class C>
AsymptoticOps<C> asymptotic_ops_t(const SpectralCtx<C>& c) {
    AsymptoticOps<C> o;
    o.S3 = op_s3_t(c);
    o.Splus = op_s_pm_t(c, true, false);
    o.Sminus = op_s_pm_t(c, false, false);
    o.Shat_plus = op_s_pm_t(c, true, true);
    o.Shat_minus = op_s_pm_t(c, false, true);
    MatX<C> qS3 = op_q_s3_t(c, 1), qS3m = op_q_s3_t(c, -1);
    MatX<C> q2S3 = op_q_s3_t(c, 2), q2S3m = op_q_s3_t(c, -2);
    const C t2 = c.tau * c.tau, tt2 = c.tau_t * c.tau_t;
    o.A = c.nu_m * q2S3 + (c.c1 / c.sqq) * (tt2 * (o.Sminus * qS3) + t2 * (qS3 * o.Shat_plus));
    o.Astar = c.nu_p * q2S3m + (c.c1 / c.sqq) * (t2 * (o.Splus * qS3m) + tt2 * (qS3m * o.Shat_minus));
    return o;
}

// ---------------------------------------------------------------------------
// generic determinant (Gaussian elimination, partial pivoting); used where
// the scalar type is not double precision
// ---------------------------------------------------------------------------

template <class C>
C det_gauss(MatX<C> a) {
    using std::abs;
    const Eigen::Index n = a.rows();
    C det(1);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        auto best = abs(a(k, k));
        for (Eigen::Index i = k + 1; i < n; ++i) {
            auto cur = abs(a(i, k));
            if (cur > best) {
                best = cur;
                piv = i;
            }
        }
        if (piv != k) {
            a.row(piv).swap(a.row(k));
            det = -det;
        }
        if (to_dbl(best) == 0.0) return C(0);
        det *= a(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            C f = a(i, k) / a(k, k);
            for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

}  // namespace openxxz
