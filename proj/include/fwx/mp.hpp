#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>

namespace fwx {

// Public interface works in hardware doubles; the coefficient engine runs in
// 50-digit software floats because the singular-expansion assembly cancels
// roughly one bit per series order.
using real = double;
using cplx = std::complex<double>;

using mp_real = boost::multiprecision::cpp_bin_float_50;
using mp_cplx = boost::multiprecision::cpp_complex_50;
using mp_rational = boost::multiprecision::cpp_rational;

inline mp_cplx to_mp(const cplx& z) { return mp_cplx(mp_real(z.real()), mp_real(z.imag())); }
inline mp_cplx to_mp(double x) { return mp_cplx(mp_real(x)); }

inline cplx to_cplx(const mp_cplx& z)
{
    return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

inline double to_double(const mp_real& x) { return static_cast<double>(x); }

// Uniform field accessors so numeric templates can run over both
// std::complex<double> and the multiprecision complex type.
template <class C> struct scalar_traits;

template <class R> struct scalar_traits<std::complex<R>> {
    using real_type = R;
    static R re(const std::complex<R>& z) { return z.real(); }
    static R im(const std::complex<R>& z) { return z.imag(); }
    static std::complex<R> make(const R& re, const R& im) { return {re, im}; }
};

template <> struct scalar_traits<mp_cplx> {
    using real_type = mp_real;
    static mp_real re(const mp_cplx& z) { return z.real(); }
    static mp_real im(const mp_cplx& z) { return z.imag(); }
    static mp_cplx make(const mp_real& re, const mp_real& im) { return {re, im}; }
};

} // namespace fwx
