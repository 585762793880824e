#ifndef EVWIN_DISTRIBUTIONS_HPP_
#define EVWIN_DISTRIBUTIONS_HPP_

namespace evwin::dist {

double normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x);
double normal_quantile(double p);

/// Chi-square survival function with two degrees of freedom, exp(-x/2).
double chi2_2_sf(double x);

/// Survival function of the F(d1, d2) distribution.
double f_sf(double x, double d1, double d2);

/// Asymptotic Kolmogorov distribution: P(K > lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

}  // namespace evwin::dist

#endif  // EVWIN_DISTRIBUTIONS_HPP_
