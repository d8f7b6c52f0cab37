#include "openxxz/vectors.hpp"

#include <sstream>

#include "openxxz/kernels.hpp"

namespace openxxz {

ReferenceStates reference_states(const ModelParams& m) {
    const auto& b = m.boundary;
    if (std::abs(b.mu_tilde) < kGenericityTol || std::abs(b.tau_tilde) < kGenericityTol ||
        std::abs(b.tau) < kGenericityTol || std::abs(b.mu) < kGenericityTol)
        throw ZeroParameter("mu, mu_tilde, tau, tau_tilde must be nonzero");
    for (const auto& xj : m.x)
        if (std::abs(xj) == 0.0) throw ZeroParameter("x_j must be nonzero");
    const auto ctx = make_context(m);
    return {ref_ket_t(ctx), ref_bra_t(ctx)};
}

ModifiedOperators modified_operators(cplx u, long midx, const ModelParams& m) {
    const auto ctx = make_context(m);
    const auto dr = double_row_t(u, ctx);
    return {mod_b_t(u, midx, dr, ctx), mod_c_t(u, midx, dr, ctx)};
}

BetheVector build_bethe_vector(const BetheRoots& roots, Side side, const ModelParams& m) {
    if ((int)roots.roots.size() != m.N)
        throw ConfigError("Bethe vector needs exactly N parameters");
    const auto ctx = make_context(m);
    BetheVector v;
    v.params = roots;
    v.side = side;
    if (side == Side::Ket) {
        v.m_sequence = ket_m_sequence(m.N);
        v.components = bethe_ket_t(roots.roots, ctx);
    } else {
        v.m_sequence = bra_m_sequence(m.N);
        v.components = bethe_bra_t(roots.roots, ctx).transpose();
    }
    return v;
}

VerificationReport offshell_residual(const BetheRoots& roots, const ModelParams& m, cplx u_probe) {
    const auto ctx = make_context(m);
    const auto& ub = roots.roots;
    const int n = m.N;
    for (int i = 0; i < n; ++i) {
        const auto repl = replace_at(ub, i, u_probe);
        if (std::abs(ctx.Qprod(ub[i], repl)) < kGenericityTol)
            throw PoleCollision("Q(u_i, {u, u_bar_i}) vanishes at i = " + std::to_string(i));
    }

    VerificationReport rep;
    rep.suite = "offshell_action";
    const Matrix t = transfer_t(u_probe, ctx);

    {
        const Vector psi = bethe_ket_t(ub, ctx);
        Vector lhs = t * psi;
        Vector rhs = ctx.Lambda(u_probe, ub) * psi;
        for (int i = 0; i < n; ++i) {
            const auto repl = replace_at(ub, i, u_probe);
            const cplx coef = (ctx.F(u_probe) / ctx.F(ub[i])) * ctx.Y(ub[i], ub) / ctx.Qprod(ub[i], repl);
            rhs += coef * bethe_ket_t(repl, ctx);
        }
        rep.add("ket_relation", (lhs - rhs).norm() / lhs.norm(), 1e-9,
                "N = " + std::to_string(n));
    }
    {
        const RowX<cplx> bra = bethe_bra_t(ub, ctx);
        RowX<cplx> lhs = bra * t;
        RowX<cplx> rhs = ctx.Lambda(u_probe, ub) * bra;
        for (int i = 0; i < n; ++i) {
            const auto repl = replace_at(ub, i, u_probe);
            const cplx coef = (ctx.F(u_probe) / ctx.F(ub[i])) * ctx.Y(ub[i], ub) / ctx.Qprod(ub[i], repl);
            rhs += coef * bethe_bra_t(repl, ctx);
        }
        rep.add("bra_relation", (lhs - rhs).norm() / lhs.norm(), 1e-9);
    }
    return rep;
}

AsymptoticOperatorSet asymptotic_operators(const ModelParams& m) {
    const auto o = asymptotic_ops_t(make_context(m));
    return {o.S3, o.Splus, o.Sminus, o.Shat_plus, o.Shat_minus, o.A, o.Astar};
}

std::string bethe_vector_to_kv(const BetheVector& v, cplx q) {
    std::string out;
    out += "side " + std::string(v.side == Side::Ket ? "ket" : "bra") + "\n";
    out += "dim " + std::to_string(v.components.size()) + "\n";
    for (Eigen::Index i = 0; i < v.components.size(); ++i)
        out += "c_" + std::to_string(i) + " " + fmt_cplx(v.components(i)) + "\n";
    out += "m_sequence";
    for (long m : v.m_sequence) out += " " + std::to_string(m);
    out += "\n";
    out += bethe_roots_to_kv(v.params, q);
    return out;
}

BetheVector bethe_vector_from_kv(const std::string& text) {
    std::istringstream in(text);
    std::string key;
    BetheVector v;
    std::string roots_block;
    while (in >> key) {
        if (key == "side") {
            std::string side;
            in >> side;
            v.side = side == "bra" ? Side::Bra : Side::Ket;
        } else if (key == "dim") {
            Eigen::Index d;
            in >> d;
            v.components.resize(d);
        } else if (key.rfind("c_", 0) == 0) {
            double re, im;
            in >> re >> im;
            v.components(std::stol(key.substr(2))) = {re, im};
        } else if (key == "m_sequence") {
            std::string rest;
            std::getline(in, rest);
            std::istringstream ms(rest);
            long m;
            while (ms >> m) v.m_sequence.push_back(m);
        } else {
            std::string val;
            in >> val;
            roots_block += key + " " + val + "\n";
        }
    }
    v.params = bethe_roots_from_kv(roots_block);
    return v;
}

}  // namespace openxxz
