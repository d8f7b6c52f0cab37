#include "openxxz/params.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "openxxz/qspecial.hpp"
#include "openxxz/rng.hpp"

namespace openxxz {

namespace {
const cplx kI(0.0, 1.0);

bool near_zero(cplx z, double tol = kGenericityTol) { return std::abs(z) < tol; }
}  // namespace

bool ModelParams::homogeneous() const {
    for (const auto& xi : x)
        if (xi != cplx(1.0, 0.0)) return false;
    return true;
}

cplx ModifiedConstants::gamma(long m) const {
    return alpha * cpow_int(q, -m) - beta * cpow_int(q, m);
}

SklyaninEntries derive_sklyanin_entries(const BoundaryParams& b) {
    if (near_zero(b.mu) || near_zero(b.mu_tilde) || near_zero(b.xi) || near_zero(b.xi_tilde))
        throw ZeroParameter("mu, mu_tilde, xi, xi_tilde must be nonzero");
    SklyaninEntries s;
    s.nu_minus = kI * b.tau_tilde * b.tau * (b.mu / b.mu_tilde + b.mu_tilde / b.mu);
    s.nu_plus = kI * b.tau_tilde * b.tau * (b.mu * b.mu_tilde + cplx(1.0) / (b.mu * b.mu_tilde));
    s.eps_minus = kI * b.kappa_tilde * b.kappa * (b.xi / b.xi_tilde + b.xi_tilde / b.xi);
    s.eps_plus = kI * b.kappa_tilde * b.kappa * (b.xi * b.xi_tilde + cplx(1.0) / (b.xi_tilde * b.xi));
    return s;
}

HamiltonianCouplings derive_hamiltonian_couplings(const ModelParams& m) {
    const auto s = derive_sklyanin_entries(m.boundary);
    const cplx c1 = m.q - cplx(1.0) / m.q;
    const cplx de = s.eps_plus + s.eps_minus;
    const cplx dn = s.nu_plus + s.nu_minus;
    const double scale_e = std::max(std::abs(s.eps_plus) + std::abs(s.eps_minus),
                                    std::abs(m.boundary.kappa * m.boundary.kappa_tilde));
    const double scale_n = std::max(std::abs(s.nu_plus) + std::abs(s.nu_minus),
                                    std::abs(m.boundary.tau * m.boundary.tau_tilde));
    if (std::abs(de) < kGenericityTol * scale_e || std::abs(dn) < kGenericityTol * scale_n)
        throw DegenerateBoundary("eps_+ + eps_- or nu_+ + nu_- vanishes");
    HamiltonianCouplings c;
    c.epsilon = c1 / 2.0 * (s.eps_plus - s.eps_minus) / de;
    c.kappa_minus = 2.0 * c1 / de * m.boundary.kappa * m.boundary.kappa;
    c.kappa_plus = 2.0 * c1 / de * m.boundary.kappa_tilde * m.boundary.kappa_tilde;
    c.nu = c1 / 2.0 * (s.nu_minus - s.nu_plus) / dn;
    c.tau_minus = 2.0 * c1 / dn * m.boundary.tau_tilde * m.boundary.tau_tilde;
    c.tau_plus = 2.0 * c1 / dn * m.boundary.tau * m.boundary.tau;
    return c;
}

ModifiedConstants modified_constants(const ModelParams& m) {
    const auto& b = m.boundary;
    if (near_zero(b.kappa) || near_zero(b.xi) || near_zero(b.xi_tilde))
        throw ZeroParameter("kappa, xi, xi_tilde must be nonzero");
    ModifiedConstants mc;
    mc.beta = -kI * (b.kappa_tilde * b.xi_tilde / (b.kappa * b.xi)) * cpow_int(m.q, 1 - 2 * m.N);
    mc.alpha = -kI * (b.kappa_tilde * b.xi / (b.kappa * b.xi_tilde)) * cpow_int(m.q, 1 + 2 * m.N);
    mc.q = m.q;

    std::string bad;
    double scale = std::max(std::abs(mc.alpha), std::abs(mc.beta));
    for (long mm = -2 * m.N - 1; mm <= 2 * m.N + 1; mm += 2) {
        if (std::abs(mc.gamma(mm)) < kGenericityTol * scale) {
            if (!bad.empty()) bad += ", ";
            bad += std::to_string(mm);
        }
    }
    if (!bad.empty()) throw SingularGamma("gamma_m below tolerance for m in {" + bad + "}");
    return mc;
}

void validate(const ModelParams& m) {
    if (m.N < 1) throw ConfigError("N must be >= 1");
    if ((int)m.x.size() != m.N) throw ConfigError("inhomogeneity count != N");
    const auto& b = m.boundary;
    for (cplx z : {b.kappa, b.kappa_tilde, b.tau, b.tau_tilde, b.xi, b.xi_tilde, b.mu, b.mu_tilde})
        if (near_zero(z)) throw ZeroParameter("boundary parameter too close to zero");
    if (near_zero(m.q)) throw ZeroParameter("q must be nonzero");

    // q not a root of unity of order <= 4N+8 (protects q^k - q^{-k} denominators)
    cplx qk(1.0);
    for (int k = 1; k <= 4 * m.N + 8; ++k) {
        qk *= m.q;
        if (std::abs(qk - cplx(1.0) / qk) < kGenericityTol)
            throw SingularParameter("q is (close to) a root of unity of order " + std::to_string(k));
    }

    // inhomogeneities pairwise distinct, unless homogeneous mode (all exactly 1)
    if (!m.homogeneous()) {
        for (int i = 0; i < m.N; ++i) {
            if (near_zero(m.x[i])) throw ZeroParameter("inhomogeneity x_i must be nonzero");
            for (int j = i + 1; j < m.N; ++j)
                if (std::abs(m.x[i] - m.x[j]) < kGenericityTol)
                    throw GenericityFailure("inhomogeneities x_i coincide");
        }
    }

    modified_constants(m);  // throws SingularGamma on failure
    derive_hamiltonian_couplings(m);
}

ModelParams sample_generic_params(std::uint64_t seed, int N, ParamMode mode) {
    if (N < 1) throw ConfigError("N must be >= 1");
    SeededRng rng = SeededRng(seed).substream(0x9a7a);
    constexpr int kMaxRetries = 64;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        ModelParams m;
        m.N = N;
        m.q = rng.annulus(0.5, 2.0);
        m.x.resize(N);
        if (mode == ParamMode::Homogeneous) {
            for (auto& xi : m.x) xi = 1.0;
        } else {
            for (auto& xi : m.x) xi = rng.annulus(0.5, 2.0);
        }
        auto& b = m.boundary;
        for (cplx* p : {&b.kappa, &b.kappa_tilde, &b.tau, &b.tau_tilde, &b.xi, &b.xi_tilde, &b.mu, &b.mu_tilde})
            *p = rng.annulus(0.5, 2.0);
        try {
            validate(m);
            return m;
        } catch (const Error&) {
            continue;  // resample
        }
    }
    throw GenericityFailure("no generic parameter set after retry limit, seed " + std::to_string(seed));
}

// ---------------------------------------------------------------------------
// serialisation
// ---------------------------------------------------------------------------

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_cplx(cplx v) { return fmt_double(v.real()) + " " + fmt_double(v.imag()); }

namespace {
void put(std::string& out, const std::string& key, cplx v) {
    out += key + "_re " + fmt_double(v.real()) + "\n";
    out += key + "_im " + fmt_double(v.imag()) + "\n";
}
}  // namespace

std::string to_kv(const ModelParams& m) {
    std::string out;
    out += "N " + std::to_string(m.N) + "\n";
    put(out, "q", m.q);
    for (int i = 0; i < m.N; ++i) put(out, "x_" + std::to_string(i + 1), m.x[i]);
    const auto& b = m.boundary;
    put(out, "kappa", b.kappa);
    put(out, "kappa_tilde", b.kappa_tilde);
    put(out, "tau", b.tau);
    put(out, "tau_tilde", b.tau_tilde);
    put(out, "xi", b.xi);
    put(out, "xi_tilde", b.xi_tilde);
    put(out, "mu", b.mu);
    put(out, "mu_tilde", b.mu_tilde);
    return out;
}

ModelParams model_params_from_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string key, val;
    while (in >> key >> val) kv[key] = val;

    auto need = [&](const std::string& k) -> std::string {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("missing key '" + k + "' in parameter block");
        return it->second;
    };
    auto getc = [&](const std::string& k) -> cplx {
        return {std::strtod(need(k + "_re").c_str(), nullptr), std::strtod(need(k + "_im").c_str(), nullptr)};
    };

    ModelParams m;
    m.N = std::stoi(need("N"));
    m.q = getc("q");
    m.x.resize(m.N);
    for (int i = 0; i < m.N; ++i) m.x[i] = getc("x_" + std::to_string(i + 1));
    auto& b = m.boundary;
    b.kappa = getc("kappa");
    b.kappa_tilde = getc("kappa_tilde");
    b.tau = getc("tau");
    b.tau_tilde = getc("tau_tilde");
    b.xi = getc("xi");
    b.xi_tilde = getc("xi_tilde");
    b.mu = getc("mu");
    b.mu_tilde = getc("mu_tilde");
    return m;
}

}  // namespace openxxz
