#pragma once

#include <string>

#include "openxxz/params.hpp"
#include "openxxz/report.hpp"
#include "openxxz/rng.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

// 2x2 auxiliary-space block decomposition of an operator on aux (x) quantum.
// For the double-row monodromy, D carries the crossing shift already removed:
// the raw bottom-right block equals D + shift * A.
struct BlockMonodromy {
    Matrix A, B, C, D;
    cplx shift;  // 0 for single-row monodromies

    Matrix reassemble() const;
};

Matrix r_matrix(cplx u, cplx q);

Matrix k_minus(cplx u, const ModelParams& m);
Matrix k_plus(cplx u, const ModelParams& m);

BlockMonodromy monodromy(cplx u, const ModelParams& m);
BlockMonodromy hat_monodromy(cplx u, const ModelParams& m);

// A, B, C, D of the double-row monodromy T K^- T^hat
BlockMonodromy double_row_operators(cplx u, const ModelParams& m);

Matrix transfer_matrix(cplx u, const ModelParams& m);

// 2^N-dimensional open-chain Hamiltonian assembled from Pauli terms
Matrix hamiltonian_direct(const ModelParams& m);

// Hamiltonian from the logarithmic derivative of the transfer matrix at the
// homogeneous point; the derivative is analytic (product rule over R-factors)
Matrix hamiltonian_from_transfer(const ModelParams& m);

// randomized residual checks; all residuals are relative Frobenius norms
VerificationReport check_yang_baxter(int trials, SeededRng& rng);
VerificationReport check_reflection_equations(const ModelParams& m, int trials, SeededRng& rng);
VerificationReport check_transfer_properties(const ModelParams& m, int trials, SeededRng& rng);
VerificationReport check_hamiltonian_reconstruction(const ModelParams& m);

// plain text export for cross-language comparison: "rows cols" header, then
// row-major "re im" pairs, one entry per line
std::string matrix_to_text(const Matrix& m);
Matrix matrix_from_text(const std::string& text);

}  // namespace openxxz
