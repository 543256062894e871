#include "biortho/gas_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biortho/error.hpp"
#include "biortho/parallel.hpp"

namespace biortho {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kCoincidence = 1e-14;
constexpr double kInitialStep = 0.5;

bool too_close(double a, double b) { return std::abs(a - b) <= kCoincidence * std::max(a, b); }

}  // namespace

double log_gas_density(const GasConfig& cfg, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(cfg.n)) throw DomainError("log_gas_density: x must have length n");
  for (double xi : x) {
    if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("log_gas_density: coordinates must be positive");
  }
  const double n = static_cast<double>(cfg.n);
  double confinement = 0.0;
  double weight = 0.0;
  for (double xi : x) {
    confinement += cfg.v(xi);
    weight += std::log(xi);
  }
  double interaction = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) return kNegInf;
      const double lg = cfg.g.log_abs_diff(x[i], x[j]);
      if (lg == kNegInf) return kNegInf;
      interaction += std::log(std::abs(x[i] - x[j])) + lg;
    }
  }
  return -n * confinement + (cfg.b - 1.0) * weight + interaction;
}

GasChain::GasChain(const GasConfig& cfg, std::uint64_t seed, std::uint64_t stream) : cfg_(cfg), rng_(seed, stream) {
  if (cfg.n < 1) throw DomainError("GasChain: n must be positive");
  if (!(cfg.b > 0.0)) throw DomainError("GasChain: b must be positive");
  const GrowthReport growth = check_growth(cfg);
  if (!growth.passed) throw DomainError("GasChain: " + growth.message);
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  x_.resize(n);
  for (std::size_t i = 0; i < n; ++i) x_[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  step_.assign(n, kInitialStep);
  log_density_ = log_gas_density(cfg_, x_);
}

double GasChain::coordinate_delta(std::size_t i, double x_new) const {
  const double x_old = x_[i];
  const double n = static_cast<double>(cfg_.n);
  // (b - 1) log x plus the Jacobian log x of the log-coordinate walk.
  double delta = -n * (cfg_.v(x_new) - cfg_.v(x_old)) + cfg_.b * (std::log(x_new) - std::log(x_old));
  for (std::size_t j = 0; j < x_.size(); ++j) {
    if (j == i) continue;
    const double xj = x_[j];
    delta += std::log(std::abs(x_new - xj)) - std::log(std::abs(x_old - xj));
    delta += cfg_.g.log_abs_diff(x_new, xj) - cfg_.g.log_abs_diff(x_old, xj);
  }
  return delta;
}

void GasChain::sweep(bool adapt) {
  const double gain = adapt ? 1.0 / std::pow(static_cast<double>(adapt_round_) + 1.0, 0.6) : 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double x_new = x_[i] * std::exp(step_[i] * rng_.normal());
    bool accept = false;
    double delta = 0.0;
    if (x_new > 0.0 && std::isfinite(x_new)) {
      bool clash = false;
      for (std::size_t j = 0; j < x_.size() && !clash; ++j) clash = j != i && too_close(x_new, x_[j]);
      if (!clash) {
        delta = coordinate_delta(i, x_new);
        accept = delta >= 0.0 || std::log(rng_.uniform()) < delta;
      }
    }
    ++proposals_;
    if (accept) {
      log_density_ += delta - (std::log(x_new) - std::log(x_[i]));
      x_[i] = x_new;
      ++accepted_;
    }
    if (adapt) {
      step_[i] *= std::exp(gain * ((accept ? 1.0 : 0.0) - kTargetAcceptance));
      step_[i] = std::clamp(step_[i], 1e-8, 10.0);
    }
  }
  if (adapt) ++adapt_round_;
}

void GasChain::reset_counters() {
  proposals_ = 0;
  accepted_ = 0;
}

McmcResult mcmc_sample(const GasConfig& cfg, std::uint64_t steps, std::uint64_t burn_in, std::uint64_t seed,
                       std::uint64_t chain) {
  if (steps == 0 || burn_in == 0) throw DomainError("mcmc_sample: steps and burn_in must be positive");
  GasChain walker(cfg, seed, chain);
  for (std::uint64_t s = 0; s < burn_in; ++s) walker.sweep(true);
  McmcResult result;
  result.diagnostics.burn_in_acceptance =
      static_cast<double>(walker.accepted()) / static_cast<double>(std::max<std::uint64_t>(walker.proposals(), 1));
  walker.reset_counters();
  for (std::uint64_t s = 0; s < steps; ++s) walker.sweep(false);
  result.diagnostics.acceptance =
      static_cast<double>(walker.accepted()) / static_cast<double>(std::max<std::uint64_t>(walker.proposals(), 1));
  result.diagnostics.step_sizes.assign(walker.step_sizes().begin(), walker.step_sizes().end());
  result.diagnostics.sweeps = burn_in + steps;
  // Recompute rather than trust the running sum.
  result.diagnostics.final_log_density = log_gas_density(cfg, walker.state());
  result.sample = EmpiricalMeasure(std::vector<double>(walker.state().begin(), walker.state().end()));
  return result;
}

std::vector<McmcResult> mcmc_sample_chains(const GasConfig& cfg, std::uint64_t steps, std::uint64_t burn_in,
                                           std::uint64_t seed, int chains) {
  if (chains < 1) throw DomainError("mcmc_sample_chains: chains must be positive");
  std::vector<McmcResult> out(static_cast<std::size_t>(chains));
  parallel_for(out.size(), [&](std::size_t c) { out[c] = mcmc_sample(cfg, steps, burn_in, seed, c); });
  return out;
}

}  // namespace biortho
