#include "fwx/params.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fwx/errors.hpp"

namespace fwx {

namespace {

constexpr double delta_tolerance = 1e-12;
constexpr double integer_mu_tolerance = 1e-8;
constexpr double integer_mu_warn_band = 1e-4;

} // namespace

ParameterSet::ParameterSet(std::vector<cplx> a, std::vector<double> A,
                           std::vector<cplx> b, std::vector<double> B)
    : a_(std::move(a)), A_(std::move(A)), b_(std::move(b)), B_(std::move(B))
{
    if (a_.empty()) throw ShapeError("parameter set: needs at least one (a, A) pair");
    if (a_.size() != A_.size()) throw ShapeError("parameter set: a and A lengths differ");
    if (b_.size() != B_.size()) throw ShapeError("parameter set: b and B lengths differ");
    for (double s : A_)
        if (!(s > 0)) throw ShapeError("parameter set: every A entry must be positive");
    for (double s : B_)
        if (!(s > 0)) throw ShapeError("parameter set: every B entry must be positive");

    double delta = 0;
    for (double s : B_) delta += s;
    for (double s : A_) delta -= s;
    if (std::abs(delta + 1.0) > delta_tolerance)
        throw DeltaError("parameter set: sum(B) - sum(A) must equal -1 (got " + std::to_string(delta) + ")");

    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < a_.size(); ++k)
        alpha = std::min(alpha, a_[k].real() / A_[k]);
    if (!(alpha > 0))
        throw DomainError("parameter set: min Re(a_k/A_k) must be positive");

    // rho and nu through logs to stay stable for extreme scales.
    double log_rho = 0;
    for (std::size_t k = 0; k < A_.size(); ++k) log_rho -= A_[k] * std::log(A_[k]);
    for (std::size_t j = 0; j < B_.size(); ++j) log_rho += B_[j] * std::log(B_[j]);

    cplx mu_val = 0.5 * (double(a_.size()) - double(b_.size()) - 1.0);
    for (const cplx& v : b_) mu_val += v;
    for (const cplx& v : a_) mu_val -= v;

    cplx log_nu = 0.5 * (double(a_.size()) - double(b_.size()) - 1.0) * std::log(2 * M_PI);
    for (std::size_t k = 0; k < a_.size(); ++k) log_nu += (a_[k] - 0.5) * std::log(A_[k]);
    for (std::size_t j = 0; j < b_.size(); ++j) log_nu += (0.5 - b_[j]) * std::log(B_[j]);

    derived_.delta = delta;
    derived_.rho = std::exp(log_rho);
    derived_.mu = mu_val;
    derived_.nu = std::exp(log_nu);
    derived_.alpha = alpha;

    all_real_ = true;
    for (const cplx& v : a_)
        if (v.imag() != 0) all_real_ = false;
    for (const cplx& v : b_)
        if (v.imag() != 0) all_real_ = false;

    scales_above_sixth_ = true;
    for (double s : A_)
        if (!(s > 1.0 / 6.0)) scales_above_sixth_ = false;
    for (double s : B_)
        if (!(s > 1.0 / 6.0)) scales_above_sixth_ = false;

    std::ostringstream key;
    key.precision(17);
    for (std::size_t k = 0; k < a_.size(); ++k)
        key << a_[k].real() << ',' << a_[k].imag() << ',' << A_[k] << ';';
    key << '|';
    for (std::size_t j = 0; j < b_.size(); ++j)
        key << b_[j].real() << ',' << b_[j].imag() << ',' << B_[j] << ';';
    key_ = key.str();
}

bool ParameterSet::mu_is_integer() const
{
    const cplx m = derived_.mu;
    return std::abs(m.imag()) <= integer_mu_tolerance &&
           std::abs(m.real() - std::round(m.real())) <= integer_mu_tolerance;
}

long ParameterSet::mu_integer_value() const
{
    return static_cast<long>(std::lround(derived_.mu.real()));
}

bool ParameterSet::mu_near_integer_warning() const
{
    if (mu_is_integer()) return false;
    const cplx m = derived_.mu;
    double dist = std::hypot(m.real() - std::round(m.real()), m.imag());
    return dist < integer_mu_warn_band;
}

double radius_rho(const ParameterSet& ps) { return ps.rho(); }
cplx mu(const ParameterSet& ps) { return ps.mu(); }
cplx mu_sigma(const ParameterSet& ps, double sigma) { return ps.mu() + sigma; }
cplx nu_constant(const ParameterSet& ps) { return ps.nu(); }

double choose_sigma(const ParameterSet& ps, std::optional<double> requested)
{
    const double re_mu = ps.mu().real();
    if (requested) {
        if (!(*requested > 0))
            throw SigmaError("sigma must be positive");
        if (!(re_mu + *requested > 0))
            throw SigmaError("sigma leaves Re(mu)+sigma non-positive");
        return *requested;
    }
    return std::max(1.0, std::ceil(-re_mu) + 1.0);
}

namespace {

bool parse_real_part(const std::string& text, std::size_t& pos, double& out)
{
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) { ++pos; ++digits; }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) { ++pos; ++digits; }
    }
    if (digits == 0) return false;
    out = std::stod(text.substr(start, pos - start));
    return true;
}

} // namespace

cplx parse_complex_literal(const std::string& text)
{
    if (text.empty()) throw ParseError("empty complex literal");
    std::size_t pos = 0;
    double re = 0;
    if (!parse_real_part(text, pos, re))
        throw ParseError("bad complex literal: " + text);
    if (pos == text.size()) return cplx(re, 0);
    if (text[pos] != '+' && text[pos] != '-')
        throw ParseError("bad complex literal: " + text);
    double im = 0;
    if (!parse_real_part(text, pos, im) || pos + 1 != text.size() || text[pos] != 'i')
        throw ParseError("bad complex literal: " + text);
    return cplx(re, im);
}

std::string format_complex_literal(const cplx& z)
{
    char buf[64];
    if (z.imag() == 0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

std::vector<cplx> parse_complex_list(const std::string& text)
{
    std::vector<cplx> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(parse_complex_literal(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text)
{
    std::vector<double> out;
    for (const cplx& z : parse_complex_list(text)) {
        if (z.imag() != 0) throw ParseError("expected a real literal, got " + format_complex_literal(z));
        out.push_back(z.real());
    }
    return out;
}

} // namespace fwx
