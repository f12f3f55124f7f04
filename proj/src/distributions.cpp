#include "ehrelay/distributions.hpp"

#include <cmath>

#include "ehrelay/errors.hpp"
#include "ehrelay/special_functions.hpp"

namespace ehrelay {

ErlangSpec::ErlangSpec(int shape_in, double scale_in) : shape(shape_in), scale(scale_in) {
    if (shape < 1) throw ConfigError("ErlangSpec: shape must be >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("ErlangSpec: scale must be positive");
}

MaxExpSpec::MaxExpSpec(int count_in, double mean_in) : count(count_in), mean(mean_in) {
    if (count < 1) throw ConfigError("MaxExpSpec: count must be >= 1");
    if (!(mean > 0.0) || !std::isfinite(mean)) throw ConfigError("MaxExpSpec: mean must be positive");
}

ErlangPdf::ErlangPdf(ErlangSpec spec)
    : spec_(spec), log_norm_(-std::lgamma(spec.shape) - spec.shape * std::log(spec.scale)) {}

double ErlangPdf::operator()(double z) const {
    if (!(z >= 0.0)) throw std::invalid_argument("erlang_pdf: z must be >= 0");
    if (z == 0.0) return spec_.shape == 1 ? 1.0 / spec_.scale : 0.0;
    return std::exp((spec_.shape - 1) * std::log(z) - z / spec_.scale + log_norm_);
}

double erlang_pdf(double z, const ErlangSpec& spec) {
    return ErlangPdf(spec)(z);
}

double erlang_cdf(double z, const ErlangSpec& spec) {
    if (!(z >= 0.0)) throw std::invalid_argument("erlang_cdf: z must be >= 0");
    return gamma_p(spec.shape, z / spec.scale);
}

double erlang_sf(double z, const ErlangSpec& spec) {
    if (!(z >= 0.0)) throw std::invalid_argument("erlang_sf: z must be >= 0");
    return gamma_q(spec.shape, z / spec.scale);
}

namespace detail {

double max_exp_pdf_sum_form(double y, const MaxExpSpec& spec) {
    // The alternating terms reach binomial(m-1, m/2) in magnitude while
    // the sum itself can be near zero; extended precision keeps the
    // cancellation noise below 1e-10 through m = 30.
    const int m = spec.count;
    long double coeff = 1.0L;  // binomial(m-1, k), exact for m <= 30
    long double sum = 0.0L;
    const long double rate = static_cast<long double>(y) / spec.mean;
    for (int k = 0; k < m; ++k) {
        const long double term = coeff * std::exp(-(k + 1) * rate);
        sum += (k % 2 == 0) ? term : -term;
        coeff = coeff * (m - 1 - k) / (k + 1);
    }
    return static_cast<double>(sum * m / spec.mean);
}

double max_exp_pdf_product_form(double y, const MaxExpSpec& spec) {
    const double u = y / spec.mean;
    const double cdf_single = -std::expm1(-u);  // 1 - e^{-u}
    return spec.count / spec.mean * std::pow(cdf_single, spec.count - 1) * std::exp(-u);
}

}  // namespace detail

MaxExpPdf::MaxExpPdf(MaxExpSpec spec) : spec_(spec) {}

double MaxExpPdf::operator()(double y) const {
    if (!(y >= 0.0)) throw std::invalid_argument("max_exp_pdf: y must be >= 0");
    return spec_.count <= 30 ? detail::max_exp_pdf_sum_form(y, spec_)
                             : detail::max_exp_pdf_product_form(y, spec_);
}

double max_exp_pdf(double y, const MaxExpSpec& spec) {
    return MaxExpPdf(spec)(y);
}

double max_exp_cdf(double y, const MaxExpSpec& spec) {
    if (!(y >= 0.0)) throw std::invalid_argument("max_exp_cdf: y must be >= 0");
    return std::pow(-std::expm1(-y / spec.mean), spec.count);
}

double phi(double x) {
    return std::erf(x);
}

double sample_exponential(double mean, CounterRng& rng) {
    if (!(mean > 0.0)) throw std::invalid_argument("sample_exponential: mean must be positive");
    return rng.next_exponential(mean);
}

double sample_erlang(const ErlangSpec& spec, CounterRng& rng) {
    double sum = 0.0;
    for (int i = 0; i < spec.shape; ++i) sum += rng.next_exponential(spec.scale);
    return sum;
}

double sample_max_exp(const MaxExpSpec& spec, CounterRng& rng) {
    double best = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        const double draw = rng.next_exponential(spec.mean);
        if (draw > best) best = draw;
    }
    return best;
}

}  // namespace ehrelay
