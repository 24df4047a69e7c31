#include "fwx/tailfit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fwx/errors.hpp"
#include "fwx/linalg.hpp"

namespace fwx {

namespace {

constexpr double collision_tolerance = 1e-9;

bool point_before(const cplx& l, const cplx& r)
{
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
}

// Collapse near-coincident points into (point, multiplicity) pairs.
std::vector<std::pair<cplx, int>> merge_points(std::vector<cplx> raw)
{
    std::sort(raw.begin(), raw.end(), point_before);
    std::vector<std::pair<cplx, int>> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i + 1;
        while (j < raw.size() && std::abs(raw[j] - raw[i]) < collision_tolerance) ++j;
        out.emplace_back(raw[i], static_cast<int>(j - i));
        i = j;
    }
    return out;
}

// Genuine pole coincidences carry log powers 0..mult-1; every integer-shifted
// copy keeps them. When towers from different poles land on one spot, only
// the largest log power set survives (the functions coincide otherwise).
std::vector<BasisTerm> spawn_ladder(const std::vector<std::pair<cplx, int>>& poles,
                                    double weight_power, int count)
{
    struct Entry {
        cplx point;
        int maxlog;
    };
    std::vector<Entry> entries;
    const int depth = count + 4;
    for (const auto& [u, mult] : poles)
        for (int shift = 0; shift < depth; ++shift)
            entries.push_back({u + cplx(shift) + cplx(weight_power - 1.0), mult - 1});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& l, const Entry& r) { return point_before(l.point, r.point); });

    std::vector<BasisTerm> out;
    std::size_t i = 0;
    while (i < entries.size() && out.size() < static_cast<std::size_t>(count)) {
        std::size_t j = i + 1;
        int maxlog = entries[i].maxlog;
        while (j < entries.size() &&
               std::abs(entries[j].point - entries[i].point) < collision_tolerance) {
            maxlog = std::max(maxlog, entries[j].maxlog);
            ++j;
        }
        for (int l = 0; l <= maxlog && out.size() < static_cast<std::size_t>(count); ++l)
            out.push_back({to_mp(entries[i].point), l});
        i = j;
    }
    return out;
}

} // namespace

std::vector<BasisTerm> ladder_basis_from(const std::vector<std::pair<cplx, int>>& base,
                                         double weight_power, int count)
{
    return spawn_ladder(base, weight_power, count);
}

std::vector<BasisTerm> pole_ladder_basis(const ParameterSet& ps, double weight_power, int count)
{
    std::vector<cplx> raw;
    const int depth = count + 4;
    for (std::size_t k = 0; k < ps.p(); ++k) {
        for (int j = 0; j < depth; ++j) {
            cplx u = (ps.a()[k] + cplx(j)) / ps.A()[k];
            if (u.real() > ps.alpha() + depth + 2.0) break;
            raw.push_back(u);
        }
    }
    return spawn_ladder(merge_points(std::move(raw)), weight_power, count);
}

TailFitResult tail_fit_sum(const std::vector<mp_cplx>& terms,
                           const std::vector<BasisTerm>& basis,
                           const mp_cplx& phase)
{
    using std::abs;
    using std::exp;
    using std::log;
    const int N = static_cast<int>(terms.size()) - 1;
    const int M = static_cast<int>(basis.size());
    if (N < 4 * M + 8) throw ToleranceError("tail_fit_sum: too few terms for the requested basis");

    std::vector<mp_cplx> s(terms.size());
    mp_cplx acc(0);
    for (std::size_t n = 0; n < terms.size(); ++n) {
        acc += terms[n];
        s[n] = acc;
    }

    const bool with_phase = phase != mp_cplx(1);
    mp_cplx log_phase = with_phase ? log(phase) : mp_cplx(0);

    auto psi = [&](const BasisTerm& b, int n) {
        mp_real ln = log(mp_real(n));
        mp_cplx v = exp(-b.exponent * ln);
        for (int l = 0; l < b.logpow; ++l) v *= ln;
        if (with_phase) v *= exp(mp_real(n) * log_phase);
        return v;
    };

    // Solves the collocation system on [lo, hi]. Columns are normalized at
    // n = hi so the solver sees O(1) entries even when deep ladder exponents
    // make the raw basis values span many decades.
    auto solve_window = [&](int lo, int hi, mp_real* rms_out, mp_real* deepest_out) {
        std::set<int> pts;
        const int count = 2 * M + 6;
        for (int i = 0; i < count; ++i)
            pts.insert(lo + static_cast<int>((static_cast<long long>(hi) - lo) * i / (count - 1)));

        std::vector<mp_real> colscale(M);
        for (int i = 0; i < M; ++i) {
            colscale[i] = abs(psi(basis[i], hi));
            if (colscale[i] == 0) colscale[i] = 1;
        }

        detail::mat A;
        std::vector<mp_cplx> rhs;
        for (int n : pts) {
            std::vector<mp_cplx> row(M + 1);
            row[0] = 1;
            for (int i = 0; i < M; ++i) row[i + 1] = -psi(basis[i], n) / colscale[i];
            A.push_back(std::move(row));
            rhs.push_back(s[n]);
        }

        mp_real rms(0);
        std::vector<mp_cplx> x = detail::least_squares(std::move(A), std::move(rhs), &rms);
        if (rms_out) *rms_out = rms;
        if (deepest_out) *deepest_out = abs(x[M]);
        return x[0];
    };

    // Error gauge: fit residual, plus the deepest basis contribution at N
    // (columns are normalized at the window top, so the scaled coefficient is
    // already that contribution's magnitude), plus the disagreement with a
    // refit on the lower half-window. A small residual alone cannot certify
    // the extrapolated limit when ladder exponents lie close together; the
    // two-window disagreement measures that drift directly.
    mp_real rms(0), deepest(0);
    mp_cplx limit = solve_window(N / 2, N, &rms, &deepest);
    mp_cplx check = solve_window(N / 4, N / 2, nullptr, nullptr);

    TailFitResult out;
    out.sum = limit;
    out.err = to_double(rms + deepest + abs(limit - check));
    out.terms_used = N + 1;
    return out;
}

TailFitResult direct_sum(const std::vector<mp_cplx>& terms)
{
    using std::abs;
    TailFitResult out;
    mp_cplx acc(0);
    for (const auto& t : terms) acc += t;
    out.sum = acc;
    out.terms_used = static_cast<int>(terms.size());
    if (terms.size() >= 2) {
        mp_real last = abs(terms.back());
        mp_real prev = abs(terms[terms.size() - 2]);
        mp_real ratio = prev > 0 ? last / prev : mp_real(0);
        if (ratio < mp_real(0.75))
            out.err = to_double(last * ratio / (mp_real(1) - ratio));
        else
            out.err = to_double(last * mp_real(4));
    }
    return out;
}

} // namespace fwx
