#pragma once

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <random>
#include <string>

#include "epicount/errors.hpp"

namespace epicount {

enum class Family { Poisson, NegBin };

inline std::string to_string(Family f) {
  return f == Family::Poisson ? "poisson" : "negbin";
}

// Below this dispersion the negative binomial is evaluated as Poisson;
// keeps every routine continuous in psi at 0.
inline constexpr double kPsiPoissonSwitch = 1e-12;

namespace detail {

// lgamma(y+r) - lgamma(r) - y*log(r+mu) + r*log(r/(r+mu)), assembled from
// log1p sums so that the r -> infinity (Poisson) limit keeps full
// precision. Falls back to lgamma for very large counts.
inline constexpr long kSumFormulaMaxCount = 2048;

inline double negbin_log_ratio_terms(long y, double r, double mu) {
  if (y <= kSumFormulaMaxCount) {
    double sum = 0;
    for (long k = 0; k < y; ++k) sum += std::log1p((k - mu) / (r + mu));
    return sum - r * std::log1p(mu / r);
  }
  return std::lgamma(y + r) - std::lgamma(r) - y * std::log(r + mu) +
         r * (std::log(r) - std::log(r + mu));
}

inline double digamma_diff(long y, double r) {  // dg(y+r) - dg(r)
  if (y <= kSumFormulaMaxCount) {
    double sum = 0;
    for (long k = 0; k < y; ++k) sum += 1.0 / (r + k);
    return sum;
  }
  return boost::math::digamma(y + r) - boost::math::digamma(r);
}

inline double trigamma_diff(long y, double r) {  // tg(y+r) - tg(r)
  if (y <= kSumFormulaMaxCount) {
    double sum = 0;
    for (long k = 0; k < y; ++k) sum -= 1.0 / ((r + k) * (r + k));
    return sum;
  }
  return boost::math::trigamma(y + r) - boost::math::trigamma(r);
}

inline void check_args(long y, double mu, double psi) {
  if (y < 0) throw input_error("count must be nonnegative, got " +
                               std::to_string(y));
  if (!(mu > 0)) throw input_error("mean must be positive, got " +
                                   std::to_string(mu));
  if (!(psi >= 0)) throw input_error("dispersion must be nonnegative, got " +
                                     std::to_string(psi));
}

}  // namespace detail

// Log-pmf of a count distribution with mean mu and variance mu*(1+psi*mu).
inline double log_pmf(Family family, long y, double mu, double psi) {
  detail::check_args(y, mu, psi);
  if (family == Family::Poisson || psi < kPsiPoissonSwitch)
    return y * std::log(mu) - mu - std::lgamma(y + 1.0);
  const double r = 1.0 / psi;
  return detail::negbin_log_ratio_terms(y, r, mu) + y * std::log(mu) -
         std::lgamma(y + 1.0);
}

inline double cdf(Family family, long y, double mu, double psi) {
  if (y < 0) return 0.0;
  detail::check_args(y, mu, psi);
  if (family == Family::Poisson || psi < kPsiPoissonSwitch)
    return boost::math::gamma_q(y + 1.0, mu);
  const double r = 1.0 / psi;
  return boost::math::ibeta(r, y + 1.0, r / (r + mu));
}

// Smallest y with cdf(y) >= p; p in (0,1).
inline long quantile(Family family, double p, double mu, double psi) {
  long lo = -1;
  long hi = std::max<long>(1, static_cast<long>(std::ceil(mu)));
  while (cdf(family, hi, mu, psi) < p) {
    lo = hi;
    hi = 2 * hi + 16;
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (cdf(family, mid, mu, psi) < p)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

// Per-observation log-pmf together with the partial derivatives the score
// and observed information need; s = log(psi) is the estimation scale.
struct PmfDerivs {
  double logp = 0;
  double d_mu = 0, d_mumu = 0;      // first/second in mu
  double d_s = 0, d_ss = 0, d_mus = 0;  // in s = log(psi), and mixed
};

inline PmfDerivs log_pmf_derivs(Family family, long y, double mu,
                                double psi) {
  detail::check_args(y, mu, psi);
  PmfDerivs out;
  if (family == Family::Poisson || psi < kPsiPoissonSwitch) {
    out.logp = y * std::log(mu) - mu - std::lgamma(y + 1.0);
    out.d_mu = y / mu - 1.0;
    out.d_mumu = -y / (mu * mu);
    return out;
  }
  const double r = 1.0 / psi;
  const double rm = r + mu;
  out.logp = detail::negbin_log_ratio_terms(y, r, mu) + y * std::log(mu) -
             std::lgamma(y + 1.0);
  out.d_mu = y / mu - (r + y) / rm;
  out.d_mumu = -y / (mu * mu) + (r + y) / (rm * rm);
  const double d_r = detail::digamma_diff(y, r) - std::log1p(mu / r) +
                     (mu - y) / rm;
  const double d_rr = detail::trigamma_diff(y, r) + mu / (r * rm) -
                      (mu - y) / (rm * rm);
  const double d_mur = (y - mu) / (rm * rm);
  // r = exp(-s): dr/ds = -r, d2r/ds2 = r
  out.d_s = -r * d_r;
  out.d_ss = r * r * d_rr + r * d_r;
  out.d_mus = -r * d_mur;
  return out;
}

// Draws one count; the negative binomial uses the exact gamma-Poisson
// mixture (rate ~ Gamma(1/psi, scale psi*mu)).
template <class Rng>
long sample(Family family, double mu, double psi, Rng& rng) {
  if (!(mu > 0)) return 0;
  if (family == Family::Poisson || psi < kPsiPoissonSwitch)
    return std::poisson_distribution<long>(mu)(rng);
  std::gamma_distribution<double> gamma(1.0 / psi, psi * mu);
  const double rate = gamma(rng);
  if (!(rate > 0)) return 0;
  return std::poisson_distribution<long>(rate)(rng);
}

}  // namespace epicount
