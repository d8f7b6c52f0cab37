#pragma once

#include "openxxz/types.hpp"

namespace openxxz {

// q-Pochhammer symbol (b; q)_n = prod_{k=0}^{n-1} (1 - b q^k)
template <class C>
C q_pochhammer_t(const C& b, const C& q, int n) {
    C p(1);
    C bq = b;
    for (int k = 0; k < n; ++k) {
        p *= C(1) - bq;
        bq *= q;
    }
    return p;
}

inline cplx q_pochhammer(cplx b, cplx q, int n) { return q_pochhammer_t<cplx>(b, q, n); }

// integer power by repeated squaring; negative exponents via inversion
template <class C>
C cpow_int(const C& base, long e) {
    if (e < 0) return C(1) / cpow_int(base, -e);
    C r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace openxxz
