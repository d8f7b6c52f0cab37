#include "openxxz/operators.hpp"

#include <sstream>

#include "openxxz/kernels.hpp"

namespace openxxz {

Matrix BlockMonodromy::reassemble() const {
    const Eigen::Index d = A.rows();
    Matrix out(2 * d, 2 * d);
    out.block(0, 0, d, d) = A;
    out.block(0, d, d, d) = B;
    out.block(d, 0, d, d) = C;
    out.block(d, d, d, d) = D + shift * A;
    return out;
}

Matrix r_matrix(cplx u, cplx q) {
    if (std::abs(u) == 0.0) throw ZeroParameter("u must be nonzero");
    if (std::abs(q - 1.0 / q) < kGenericityTol) throw SingularParameter("q - q^{-1} vanishes");
    const cplx c1 = q - 1.0 / q;
    const cplx a = (q * u - 1.0 / (q * u)) / c1;
    const cplx b = (u - 1.0 / u) / c1;
    Matrix r = Matrix::Zero(4, 4);
    r(0, 0) = a;
    r(1, 1) = b;
    r(1, 2) = 1.0;
    r(2, 1) = 1.0;
    r(2, 2) = b;
    r(3, 3) = a;
    return r;
}

Matrix k_minus(cplx u, const ModelParams& m) {
    if (std::abs(u) == 0.0) throw ZeroParameter("u must be nonzero");
    return k_minus_t(u, make_context(m));
}

Matrix k_plus(cplx u, const ModelParams& m) {
    if (std::abs(u) == 0.0) throw ZeroParameter("u must be nonzero");
    return k_plus_t(u, make_context(m));
}

namespace {
BlockMonodromy split_blocks(const Matrix& full, cplx shift) {
    const Eigen::Index d = full.rows() / 2;
    BlockMonodromy b;
    b.A = full.block(0, 0, d, d);
    b.B = full.block(0, d, d, d);
    b.C = full.block(d, 0, d, d);
    b.D = full.block(d, d, d, d) - shift * b.A;
    b.shift = shift;
    return b;
}
}  // namespace

BlockMonodromy monodromy(cplx u, const ModelParams& m) {
    if (std::abs(u) == 0.0) throw ZeroParameter("u must be nonzero");
    return split_blocks(monodromy_t(u, make_context(m)), 0.0);
}

BlockMonodromy hat_monodromy(cplx u, const ModelParams& m) {
    if (std::abs(u) == 0.0) throw ZeroParameter("u must be nonzero");
    return split_blocks(hat_monodromy_t(u, make_context(m)), 0.0);
}

BlockMonodromy double_row_operators(cplx u, const ModelParams& m) {
    const auto ctx = make_context(m);
    const cplx den = ctx.q * u * u - ctx.qinv / (u * u);
    if (std::abs(den) < kGenericityTol * std::abs(ctx.q * u * u))
        throw CrossingSingularity("u^4 = q^{-2}");
    return split_blocks(k_a_full(u, ctx), ctx.c1 / den);
}

Matrix transfer_matrix(cplx u, const ModelParams& m) {
    if (std::abs(u) == 0.0) throw ZeroParameter("u must be nonzero");
    return transfer_t(u, make_context(m));
}

namespace {
Matrix pauli(char which) {
    Matrix s(2, 2);
    switch (which) {
        case 'x': s << 0, 1, 1, 0; break;
        case 'y': s << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'z': s << 1, 0, 0, -1; break;
        case '+': s << 0, 1, 0, 0; break;
        default: s << 0, 0, 1, 0; break;  // '-'
    }
    return s;
}
}  // namespace

Matrix hamiltonian_direct(const ModelParams& m) {
    if (m.N < 2) throw ConfigError("bulk sum needs N >= 2");
    const auto c = derive_hamiltonian_couplings(m);
    const int d = 1 << m.N;
    const cplx delta = (m.q + 1.0 / m.q) / 2.0;
    Matrix h = Matrix::Zero(d, d);
    h += c.epsilon * embed_one_site<cplx>(pauli('z'), m.N, 0);
    h += c.kappa_minus * embed_one_site<cplx>(pauli('-'), m.N, 0);
    h += c.kappa_plus * embed_one_site<cplx>(pauli('+'), m.N, 0);
    h += c.nu * embed_one_site<cplx>(pauli('z'), m.N, m.N - 1);
    h += c.tau_minus * embed_one_site<cplx>(pauli('-'), m.N, m.N - 1);
    h += c.tau_plus * embed_one_site<cplx>(pauli('+'), m.N, m.N - 1);
    for (int k = 0; k + 1 < m.N; ++k) {
        for (char w : {'x', 'y'}) {
            Matrix p = pauli(w);
            h += embed_two_site<cplx>(kron_t<cplx>(p, p), m.N, k, k + 1);
        }
        Matrix pz = pauli('z');
        h += delta * embed_two_site<cplx>(kron_t<cplx>(pz, pz), m.N, k, k + 1);
    }
    return h;
}

Matrix hamiltonian_from_transfer(const ModelParams& m) {
    if (!m.homogeneous()) throw ConfigError("transfer reconstruction requires the homogeneous point");
    const auto ctx = make_context(m);
    const int d = 1 << m.N;
    auto [t1, t1p] = transfer_with_du(cplx(1.0), ctx);
    Eigen::JacobiSVD<Matrix> svd(t1);
    const double smin = svd.singularValues()(d - 1), smax = svd.singularValues()(0);
    if (smin < 1e-12 * smax) throw NonInvertibleTransfer("t(1) numerically singular");
    const cplx q = m.q, c1 = q - 1.0 / q;
    const cplx shift = cplx(m.N) * (q + 1.0 / q) / 2.0 + c1 * c1 / (2.0 * (q + 1.0 / q));
    return (c1 / 2.0) * (t1p * t1.inverse()) - shift * Matrix::Identity(d, d);
}

// ---------------------------------------------------------------------------
// randomized residual checks
// ---------------------------------------------------------------------------

VerificationReport check_yang_baxter(int trials, SeededRng& rng) {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    VerificationReport rep;
    rep.suite = "yang_baxter";
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        cplx q = rng.annulus(0.5, 2.0);
        while (std::abs(q - 1.0 / q) < 1e-2) q = rng.annulus(0.5, 2.0);
        const cplx u = rng.annulus(0.5, 2.0), v = rng.annulus(0.5, 2.0);
        const Matrix r12 = embed_two_site<cplx>(r_matrix(u / v, q), 3, 0, 1);
        const Matrix r13 = embed_two_site<cplx>(r_matrix(u, q), 3, 0, 2);
        const Matrix r23 = embed_two_site<cplx>(r_matrix(v, q), 3, 1, 2);
        const double denom = r12.norm() * r13.norm() * r23.norm();
        worst = std::max(worst, rel_residual(r12 * r13 * r23, r23 * r13 * r12, denom));
    }
    rep.add("ybe_max_residual", worst, 1e-12, std::to_string(trials) + " draws");
    return rep;
}

VerificationReport check_reflection_equations(const ModelParams& m, int trials, SeededRng& rng) {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    const auto ctx = make_context(m);
    const cplx q = m.q;
    VerificationReport rep;
    rep.suite = "reflection_equations";
    double worst_re = 0.0, worst_dre = 0.0;
    std::string draws;
    const Matrix id2 = Matrix::Identity(2, 2);
    for (int t = 0; t < trials; ++t) {
        // first draw is intentionally degenerate (u = v), which the equations allow
        const cplx u = rng.annulus(0.5, 2.0);
        const cplx v = (t == 0) ? u : rng.annulus(0.5, 2.0);
        {
            const Matrix k1 = kron_t<cplx>(k_minus_t(u, ctx), id2);
            const Matrix k2 = kron_t<cplx>(id2, k_minus_t(v, ctx));
            const Matrix ra = r_matrix(u / v, q), rb = r_matrix(u * v, q);
            const double denom = ra.norm() * rb.norm() * k1.norm() * k2.norm() / 4.0;
            worst_re = std::max(worst_re, rel_residual(ra * k1 * rb * k2, k2 * rb * k1 * ra, denom));
        }
        {
            const Matrix k1 = kron_t<cplx>(k_plus_t(u, ctx), id2);
            const Matrix k2 = kron_t<cplx>(id2, k_plus_t(v, ctx));
            const Matrix ra = r_matrix(v / u, q), rb = r_matrix(1.0 / (q * q * u * v), q);
            const double denom = ra.norm() * rb.norm() * k1.norm() * k2.norm() / 4.0;
            worst_dre = std::max(worst_dre, rel_residual(ra * k1 * rb * k2, k2 * rb * k1 * ra, denom));
        }
        if (t < 4) draws += fmt_cplx(u) + " " + fmt_cplx(v) + "; ";
    }
    rep.add("reflection_max_residual", worst_re, 1e-12, std::to_string(trials) + " draws");
    rep.add("dual_reflection_max_residual", worst_dre, 1e-12);
    rep.set_info("first_draws", draws);
    return rep;
}

VerificationReport check_transfer_properties(const ModelParams& m, int trials, SeededRng& rng) {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    const auto ctx = make_context(m);
    VerificationReport rep;
    rep.suite = "transfer_matrix";
    double worst_comm = 0.0, worst_cross = 0.0;
    for (int t = 0; t < trials; ++t) {
        const cplx u = rng.annulus(0.5, 2.0), v = rng.annulus(0.5, 2.0);
        const Matrix tu = transfer_t(u, ctx), tv = transfer_t(v, ctx);
        worst_comm = std::max(worst_comm, (tu * tv - tv * tu).norm() / (tu.norm() * tv.norm()));
        const Matrix tc = transfer_t(1.0 / (ctx.q * u), ctx);
        worst_cross = std::max(worst_cross, (tu - tc).norm() / tu.norm());
    }
    rep.add("commutator_max_residual", worst_comm, 1e-12, "N = " + std::to_string(m.N));
    rep.add("crossing_max_residual", worst_cross, 1e-12);
    return rep;
}

VerificationReport check_hamiltonian_reconstruction(const ModelParams& m) {
    VerificationReport rep;
    rep.suite = "hamiltonian_reconstruction";
    const Matrix hd = hamiltonian_direct(m);
    const Matrix ht = hamiltonian_from_transfer(m);
    rep.add("transfer_vs_direct", (ht - hd).norm() / hd.norm(), 1e-10, "N = " + std::to_string(m.N));
    return rep;
}

// ---------------------------------------------------------------------------
// text export
// ---------------------------------------------------------------------------

std::string matrix_to_text(const Matrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out += fmt_cplx(m(i, j)) + "\n";
    return out;
}

Matrix matrix_from_text(const std::string& text) {
    std::istringstream in(text);
    Eigen::Index rows, cols;
    if (!(in >> rows >> cols)) throw ConfigError("bad matrix header");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            double re, im;
            if (!(in >> re >> im)) throw ConfigError("truncated matrix body");
            m(i, j) = {re, im};
        }
    return m;
}

}  // namespace openxxz
