#pragma once

#include <cstddef>
#include <vector>

#include "fwx/errors.hpp"
#include "fwx/mp.hpp"

namespace fwx {

// Dense truncated power series over a commutative ring. All operations keep
// the fixed truncation order of the left operand.
template <class T> class FormalSeries {
public:
    explicit FormalSeries(std::size_t order) : c_(order + 1, T(0)) {}
    FormalSeries(std::vector<T> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty()) throw ShapeError("FormalSeries: needs at least the constant term");
    }

    std::size_t order() const { return c_.size() - 1; }
    const T& operator[](std::size_t k) const { return c_[k]; }
    T& operator[](std::size_t k) { return c_[k]; }
    const std::vector<T>& coeffs() const { return c_; }

    FormalSeries mul(const FormalSeries& rhs) const
    {
        FormalSeries out(order());
        for (std::size_t i = 0; i <= order(); ++i) {
            if (c_[i] == T(0)) continue;
            std::size_t jmax = std::min(order() - i, rhs.order());
            for (std::size_t j = 0; j <= jmax; ++j) out.c_[i + j] += c_[i] * rhs.c_[j];
        }
        return out;
    }

    // log of a series with unit constant term: g' f = f' solved termwise.
    FormalSeries log() const
    {
        if (c_[0] != T(1)) throw DomainError("FormalSeries::log: constant term must be 1");
        FormalSeries g(order());
        for (std::size_t n = 1; n <= order(); ++n) {
            T acc = T(n) * c_[n];
            for (std::size_t k = 1; k < n; ++k) acc -= T(k) * g.c_[k] * c_[n - k];
            g.c_[n] = acc / T(n);
        }
        return g;
    }

    // exp of a series with zero constant term: h' = g' h solved termwise.
    FormalSeries exp() const
    {
        if (c_[0] != T(0)) throw DomainError("FormalSeries::exp: constant term must be 0");
        FormalSeries h(order());
        h.c_[0] = T(1);
        for (std::size_t n = 1; n <= order(); ++n) {
            T acc(0);
            for (std::size_t k = 1; k <= n; ++k) acc += T(k) * c_[k] * h.c_[n - k];
            h.c_[n] = acc / T(n);
        }
        return h;
    }

    // f^s for arbitrary (possibly non-integer) exponent; f must have unit
    // constant term.
    FormalSeries pow(const T& s) const
    {
        FormalSeries g = log();
        for (auto& e : g.c_) e *= s;
        return g.exp();
    }

private:
    std::vector<T> c_;
};

} // namespace fwx
