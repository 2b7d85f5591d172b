#include "oracles.hpp"

#include <cmath>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

namespace {

// log I_v(z); large arguments use the Hankel expansion to avoid overflow
double log_bessel_i(double v, double z) {
  if (z < 500.0) return std::log(std::cyl_bessel_i(v, z));
  const double mu = 4.0 * v * v;
  double term = 1.0;
  double series = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = -term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * z);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    series += term;
    if (std::abs(term) < 1e-17) break;
  }
  return z - 0.5 * std::log(2.0 * M_PI * z) + std::log(series);
}

double log_integrand(double nu, double a, double x) {
  if (x <= 0.0) return -INFINITY;
  if (a == 0.0) {
    return (2.0 * nu - 1.0) * std::log(x) - (nu - 1.0) * std::log(2.0) - std::lgamma(nu) - 0.5 * x * x;
  }
  return std::log(x) + (nu - 1.0) * (std::log(x) - std::log(a)) - 0.5 * (x * x + a * a) + log_bessel_i(nu - 1.0, a * x);
}

}  // namespace

double marcum_q_quadrature(double nu, double a, double b) {
  if (b == 0.0) return 1.0;
  auto f = [&](double x) { return std::exp(log_integrand(nu, a, x)); };
  const double peak = std::sqrt(a * a + 2.0 * nu - 1.0);
  const double upper = peak + 40.0;
  if (b >= upper) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  // split at the peak so each piece is unimodal
  if (b < peak) {
    total += gauss_kronrod<double, 61>::integrate(f, b, peak, 10, 1e-13);
    total += gauss_kronrod<double, 61>::integrate(f, peak, upper, 10, 1e-13);
  } else {
    total += gauss_kronrod<double, 61>::integrate(f, b, upper, 10, 1e-13);
  }
  return total;
}

double marcum_q_series_direct(double nu, double a, double b) {
  const double mean = 0.5 * a * a;
  const double x = 0.5 * b * b;
  if (x == 0.0) return 1.0;
  if (mean == 0.0) return boost::math::gamma_q(nu, x);
  double total = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double weight = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
    total += weight * boost::math::gamma_q(nu + k, x);
    if (k > mean && weight < 1e-18) break;
  }
  return total;
}

double pd_rayleigh_literal(const cssim::DetectionParams& p, double g) {
  const int u = p.n_samples / 2;
  const double ag = p.noncentrality * g;
  const double L = p.threshold / (2.0 * p.sigma2);
  double first = 0.0;
  double second = 0.0;
  const double ratio = p.threshold * ag / (2.0 * p.sigma2 * (2.0 * p.sigma2 + ag));
  for (int i = 0; i <= u - 2; ++i) {
    first += std::pow(L, i) / std::tgamma(i + 1.0);
    second += std::pow(ratio, i) / std::tgamma(i + 1.0);
  }
  const double prefactor = std::pow((2.0 * p.sigma2 + ag) / ag, u - 1);
  return std::exp(-L) * first +
         prefactor * (std::exp(-p.threshold / (2.0 * p.sigma2 + ag)) - std::exp(-L) * second);
}

Estimate monte_carlo_rayleigh(double mean_snr, std::size_t draws, std::uint64_t seed,
                              const std::function<double(double)>& conditional) {
  std::mt19937_64 engine(seed);
  std::exponential_distribution<double> snr(1.0 / mean_snr);
  double sum = 0.0;
  double squares = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double v = conditional(snr(engine));
    sum += v;
    squares += v * v;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  const double var = (squares - n * mean * mean) / (n - 1.0);
  return {mean, std::sqrt(std::max(var, 0.0) / n)};
}

double chi_square_uniform(std::span<const std::uint64_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return stat;
}

double chi_square_critical(double dof, double level) {
  return boost::math::quantile(boost::math::chi_squared(dof), level);
}

std::size_t brute_force_edges(const std::vector<cssim::Point>& nodes, double range_km) {
  std::size_t edges = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double dx = nodes[i].x - nodes[j].x;
      const double dy = nodes[i].y - nodes[j].y;
      if (dx * dx + dy * dy <= range_km * range_km) ++edges;
    }
  }
  return edges;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace oracle
