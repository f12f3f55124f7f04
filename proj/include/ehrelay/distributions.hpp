#pragma once

#include "ehrelay/rng.hpp"

namespace ehrelay {

// Sum of `shape` i.i.d. exponentials, each with mean `scale`.
struct ErlangSpec {
    ErlangSpec(int shape_in, double scale_in);
    int shape;
    double scale;
    double mean() const { return shape * scale; }
};

// Maximum of `count` i.i.d. exponentials, each with mean `mean`.
struct MaxExpSpec {
    MaxExpSpec(int count_in, double mean_in);
    int count;
    double mean;
};

// Erlang density with precomputed normalization, for hot loops.
class ErlangPdf {
public:
    explicit ErlangPdf(ErlangSpec spec);
    double operator()(double z) const;

private:
    ErlangSpec spec_;
    double log_norm_;  // -lgamma(shape) - shape*log(scale)
};

double erlang_pdf(double z, const ErlangSpec& spec);
double erlang_cdf(double z, const ErlangSpec& spec);
// Survival 1 - CDF, evaluated without cancellation.
double erlang_sf(double z, const ErlangSpec& spec);

// Density of the maximum of i.i.d. exponentials. Uses the product form
// (M/mean)(1 - e^{-y/mean})^{M-1} e^{-y/mean} for count > 30, where the
// alternating binomial sum cancels catastrophically; the sum form below
// that, matching the printed expansion term for term.
class MaxExpPdf {
public:
    explicit MaxExpPdf(MaxExpSpec spec);
    double operator()(double y) const;

private:
    MaxExpSpec spec_;
};

double max_exp_pdf(double y, const MaxExpSpec& spec);
double max_exp_cdf(double y, const MaxExpSpec& spec);

namespace detail {
// Both algebraic forms of the max-of-exponentials density, exposed so the
// test suite can pin their agreement on the stable range.
double max_exp_pdf_sum_form(double y, const MaxExpSpec& spec);
double max_exp_pdf_product_form(double y, const MaxExpSpec& spec);
}  // namespace detail

// Error function (2/sqrt(pi)) * integral_0^x e^{-t^2} dt.
double phi(double x);

// Samplers. Erlang and max-of-exponentials are built from raw exponential
// draws exactly as the aggregates are defined, not from shortcut
// distributions, so simulations stay independent of the closed forms
// they are used to check.
double sample_exponential(double mean, CounterRng& rng);
double sample_erlang(const ErlangSpec& spec, CounterRng& rng);
double sample_max_exp(const MaxExpSpec& spec, CounterRng& rng);

}  // namespace ehrelay
