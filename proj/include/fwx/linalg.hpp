#pragma once

#include <vector>

#include "fwx/mp.hpp"

// Small dense complex routines used by the coefficient machinery: a pivoted
// determinant and a Householder least-squares solve. Problem sizes stay in
// the tens, so no external linear-algebra dependency is warranted.

namespace fwx::detail {

using mat = std::vector<std::vector<mp_cplx>>;

inline mp_cplx det_gauss(mat m)
{
    using std::abs;
    const std::size_t n = m.size();
    mp_cplx det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        mp_real best = abs(m[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            mp_real v = abs(m[r][col]);
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0) return mp_cplx(0);
        if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            mp_cplx f = m[r][col] / m[col][col];
            if (f == mp_cplx(0)) continue;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// Minimizes ||A x - b||_2 for rows >= cols; returns x and optionally the
// root-mean-square residual (a cheap honesty check on the fit).
inline std::vector<mp_cplx> least_squares(mat A, std::vector<mp_cplx> b, mp_real* rms_residual = nullptr)
{
    using std::abs;
    using std::conj;
    using std::sqrt;
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;

    for (std::size_t k = 0; k < cols; ++k) {
        mp_real norm2(0);
        for (std::size_t r = k; r < rows; ++r) norm2 += boost::multiprecision::norm(A[r][k]);
        mp_real norm = sqrt(norm2);
        if (norm == 0) continue;
        mp_cplx x0 = A[k][k];
        mp_real ax0 = abs(x0);
        mp_cplx phase = ax0 == 0 ? mp_cplx(1) : x0 / ax0;
        mp_cplx alpha = -phase * norm;

        std::vector<mp_cplx> v(rows - k);
        v[0] = x0 - alpha;
        for (std::size_t r = k + 1; r < rows; ++r) v[r - k] = A[r][k];
        mp_real vnorm2(0);
        for (const auto& e : v) vnorm2 += boost::multiprecision::norm(e);
        if (vnorm2 == 0) continue;

        for (std::size_t c = k; c < cols; ++c) {
            mp_cplx dot(0);
            for (std::size_t r = k; r < rows; ++r) dot += conj(v[r - k]) * A[r][c];
            mp_cplx f = 2 * dot / vnorm2;
            for (std::size_t r = k; r < rows; ++r) A[r][c] -= f * v[r - k];
        }
        mp_cplx dot(0);
        for (std::size_t r = k; r < rows; ++r) dot += conj(v[r - k]) * b[r];
        mp_cplx f = 2 * dot / vnorm2;
        for (std::size_t r = k; r < rows; ++r) b[r] -= f * v[r - k];
    }

    std::vector<mp_cplx> x(cols);
    for (std::size_t kk = cols; kk-- > 0;) {
        mp_cplx acc = b[kk];
        for (std::size_t c = kk + 1; c < cols; ++c) acc -= A[kk][c] * x[c];
        x[kk] = acc / A[kk][kk];
    }
    if (rms_residual) {
        mp_real acc(0);
        for (std::size_t r = cols; r < rows; ++r) acc += boost::multiprecision::norm(b[r]);
        *rms_residual = rows > cols ? sqrt(acc / mp_real(rows - cols)) : mp_real(0);
    }
    return x;
}

} // namespace fwx::detail
