#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "openxxz/types.hpp"

namespace openxxz {

// The eight fundamental boundary parameters.  The reflection matrices only
// involve kappa^2, tau^2 etc.; the unsquared values are fundamental here
// because the reference states, the modified-operator constants and the
// overall normalisation of the scalar-product formula need odd powers and
// ratios of them.
struct BoundaryParams {
    cplx kappa, kappa_tilde;
    cplx tau, tau_tilde;
    cplx xi, xi_tilde;
    cplx mu, mu_tilde;
};

struct SklyaninEntries {
    cplx nu_minus, nu_plus;
    cplx eps_minus, eps_plus;
};

struct HamiltonianCouplings {
    cplx epsilon, kappa_minus, kappa_plus;  // left edge
    cplx nu, tau_minus, tau_plus;           // right edge
};

enum class ParamMode { Inhomogeneous, Homogeneous };

struct ModelParams {
    int N = 1;
    cplx q;
    std::vector<cplx> x;  // N inhomogeneities; all 1 in homogeneous mode
    BoundaryParams boundary;

    bool homogeneous() const;
};

struct ModifiedConstants {
    cplx alpha, beta;
    cplx q;
    cplx gamma(long m) const;  // alpha q^{-m} - beta q^{m}
};

// entries of the K-matrices from the boundary parametrisation
SklyaninEntries derive_sklyanin_entries(const BoundaryParams& b);

// the six couplings of the open-chain Hamiltonian
HamiltonianCouplings derive_hamiltonian_couplings(const ModelParams& m);

// constants of the modified creation/annihilation operators; throws
// SingularGamma if any gamma_m with odd m in [-2N-1, 2N+1] is below tolerance
ModifiedConstants modified_constants(const ModelParams& m);

// throws if genericity invariants are violated (zero boundary entries,
// coincident inhomogeneities, q too close to a low-order root of unity, ...)
void validate(const ModelParams& m);

// deterministic-from-seed generic parameter set; resamples internally until
// all genericity invariants hold, throws GenericityFailure on exhaustion
ModelParams sample_generic_params(std::uint64_t seed, int N, ParamMode mode);

// flat key-value serialisation, exact (bit-identical) round trip
std::string to_kv(const ModelParams& m);
ModelParams model_params_from_kv(const std::string& text);

// exact decimal formatting helpers shared with the report writer
std::string fmt_double(double v);
std::string fmt_cplx(cplx v);

}  // namespace openxxz
