#pragma once

#include <optional>
#include <string>
#include <vector>

#include "openxxz/context.hpp"
#include "openxxz/params.hpp"
#include "openxxz/rng.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

struct BetheRoots {
    std::vector<cplx> roots;      // chosen lifts, one per U-root
    std::vector<cplx> U_values;   // the branch-independent data U(u_i)
    bool onshell = false;
    std::vector<double> residuals;  // |Y(u_i | roots)| / local scale
    std::optional<int> eigen_index;
};

struct StructureFunctionValues {
    cplx F, U, V;
    std::optional<cplx> Q;  // U(u) - U(v) when v was supplied
};

struct PhiHValues {
    cplx phi, H;
};

StructureFunctionValues eval_structure_functions(cplx u, std::optional<cplx> v, const SpectralContext& ctx);

PhiHValues eval_phi_H(cplx u, const SpectralContext& ctx);

// eigenvalue Lambda(u | roots); throws PoleAtRoot when u hits a root in U
cplx eigenvalue_lambda(cplx u, const BetheRoots& roots, const SpectralContext& ctx);

// Bethe function Y(u | roots) = Q(u, roots) Lambda(u | roots), pole-free form
cplx bethe_function_Y(cplx u, const BetheRoots& roots, const SpectralContext& ctx);

// local magnitude against which |Y(u_i|roots)| is measured
double bethe_residual_scale(cplx u, const std::vector<cplx>& roots, const SpectralContext& ctx);

// inverse of U: of the four solutions {+-u, +-1/(qu)} returns the one with the
// largest modulus, ties broken toward nonnegative real then imaginary part
cplx lift_U_to_u(cplx Uval, const SpectralContext& ctx);

struct SolveOptions {
    int sample_points = 0;  // 0 -> N + 6
    double radius_lo = 1.1;
    double radius_hi = 1.5;
    double onshell_tol = 1e-8;
    double cond_limit = 1e10;
    double eigen_gap_tol = 1e-9;
    int max_draws = 12;
};

struct SolveDiagnostics {
    double condition = 0.0;
    double max_residual = 0.0;
    cplx probe;
    cplx lambda_probe;  // transfer eigenvalue at the probe point
};

// Bethe roots of the eigen_index-th transfer eigenstate (ordering: eigenvalues
// at a probe point sorted lexicographically by real then imaginary part).
// The TQ relation is linear in the N symmetric coefficients of Q once the
// eigenvalue is known numerically; roots follow from one companion-matrix
// eigenproblem and a lift back from U to u.
BetheRoots solve_bethe_roots(int eigen_index, const ModelParams& m, SeededRng& rng,
                             const SolveOptions& opt = {}, SolveDiagnostics* diag = nullptr);

std::string bethe_roots_to_kv(const BetheRoots& r, cplx q);
BetheRoots bethe_roots_from_kv(const std::string& text);

}  // namespace openxxz
