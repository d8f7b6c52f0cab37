#pragma once

#include <vector>

#include "openxxz/params.hpp"
#include "openxxz/report.hpp"
#include "openxxz/spectral.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

enum class Side { Ket, Bra };
enum class Precision { Double, Extended };

// Bethe state on the 2^N-dimensional quantum space.  Bras are stored as the
// transpose of the row vector; all pairings in this project are bilinear
// (row times column), never conjugated.
struct BetheVector {
    Vector components;
    BetheRoots params;
    Side side = Side::Ket;
    std::vector<long> m_sequence;
};

inline cplx pair_bilinear(const BetheVector& bra, const BetheVector& ket) {
    return (bra.components.transpose() * ket.components).value();
}

struct ReferenceStates {
    Vector ket;
    RowVector bra;
};

ReferenceStates reference_states(const ModelParams& m);

struct ModifiedOperators {
    Matrix Bmod, Cmod;
};

// modified creation/annihilation operators at shift index midx
ModifiedOperators modified_operators(cplx u, long midx, const ModelParams& m);

BetheVector build_bethe_vector(const BetheRoots& roots, Side side, const ModelParams& m);

// residuals of the transfer-matrix action on off-shell states (ket and bra)
VerificationReport offshell_residual(const BetheRoots& roots, const ModelParams& m, cplx u_probe);

// kv record of the state together with its parameter set, for CLI round trips
std::string bethe_vector_to_kv(const BetheVector& v, cplx q);
BetheVector bethe_vector_from_kv(const std::string& text);

struct AsymptoticOperatorSet {
    Matrix S3, Splus, Sminus, Shat_plus, Shat_minus, A, Astar;
};

AsymptoticOperatorSet asymptotic_operators(const ModelParams& m);

// large-u expansion checks: monodromy two-term expansions and remainder decay,
// leading block of the double-row monodromy, q-deformed Dolan-Grady relations,
// the eigenvalue of A on the reference state, and the leading asymptotics of
// the modified creation operator on it
VerificationReport asymptotic_operator_suite(const ModelParams& m, Precision prec = Precision::Double);

}  // namespace openxxz
