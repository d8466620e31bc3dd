#include "soco/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace soco {

ExpertGrid build_grid(double G, double R, long T) {
  if (G <= 0.0 || R <= 0.0)
    throw std::invalid_argument("build_grid: G and R must be positive");
  if (T < 2) throw std::invalid_argument("build_grid: T must be >= 2");

  ExpertGrid grid;
  grid.g_bound = G;
  grid.radius = R;
  grid.horizon = T;
  grid.top = std::sqrt((G * G + 2.0 * G) * static_cast<double>(T) / (R * R));

  const int N = static_cast<int>(std::ceil(
                    0.5 * std::log2(8.0 * static_cast<double>(T) - 7.0))) +
                1;
  grid.sigmas.resize(static_cast<std::size_t>(N));
  double s = grid.top;
  for (int i = 0; i < N; ++i) {
    grid.sigmas[static_cast<std::size_t>(i)] = s;
    s /= 2.0;
  }
  return grid;
}

int k_from_sigma(double sigma, double R, double G) {
  if (sigma <= 0.0 || R <= 0.0 || G <= 0.0)
    throw std::invalid_argument("k_from_sigma: inputs must be positive");
  const double raw = std::floor(2.0 * R * sigma / G);
  return std::max(1, static_cast<int>(raw));
}

std::vector<double> init_weights(int N) {
  if (N < 1) throw std::invalid_argument("init_weights: N must be >= 1");
  const double C =
      (static_cast<double>(N) + 1.0) / static_cast<double>(N);
  std::vector<double> w(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i)
    w[static_cast<std::size_t>(i - 1)] =
        C / (static_cast<double>(i) * (static_cast<double>(i) + 1.0));
  return w;
}

double alpha_default(double G, double R, long T) {
  if (G <= 0.0 || R <= 0.0 || T < 1)
    throw std::invalid_argument("alpha_default: inputs must be positive");
  const double diameter = 2.0 * R;
  return 2.0 / ((2.0 * G + 1.0) * diameter) *
         std::sqrt(2.0 / (5.0 * static_cast<double>(T)));
}

void hedge_update(std::vector<double>& w, const std::vector<double>& losses,
                  double alpha) {
  if (w.size() != losses.size())
    throw std::invalid_argument("hedge_update: size mismatch");
  // Factor out the largest exponent so the update never overflows.
  double max_exp = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    max_exp = std::max(max_exp, -alpha * losses[i]);
  double z = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] *= std::exp(-alpha * losses[i] - max_exp);
    z += w[i];
  }
  for (double& v : w) v /= z;
}

Sader::Sader(Domain dom, ExpertGrid grid, double alpha, bool parallel)
    : dom_(std::move(dom)),
      grid_(std::move(grid)),
      alpha_(alpha),
      parallel_(parallel) {
  if (alpha_ <= 0.0) throw std::invalid_argument("sader: alpha must be positive");
  experts_.reserve(grid_.sigmas.size());
  for (double s : grid_.sigmas) {
    const int k = k_from_sigma(s, grid_.radius, grid_.g_bound);
    experts_.emplace_back(dom_, SigmaSchedule::constant(s), k);
  }
  w_ = init_weights(grid_.size());
  prev_actions_.reserve(experts_.size());
  for (const auto& e : experts_) prev_actions_.push_back(e.action());
  rebuild_action();
}

Sader::Sader(Domain dom, double G, double R, long T, bool parallel)
    : Sader(dom, build_grid(G, R, T), alpha_default(G, R, T), parallel) {}

const Vec& Sader::step(const Vec& g) {
  note_gradient(g);
  const int N = static_cast<int>(experts_.size());

  std::vector<double> losses(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const Vec& xi = experts_[static_cast<std::size_t>(i)].action();
    double hit = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) hit += g[c] * (xi[c] - x_[c]);
    losses[static_cast<std::size_t>(i)] =
        hit + dist2(xi, prev_actions_[static_cast<std::size_t>(i)]);
  }
  hedge_update(w_, losses, alpha_);

  for (int i = 0; i < N; ++i)
    prev_actions_[static_cast<std::size_t>(i)] =
        experts_[static_cast<std::size_t>(i)].action();

#pragma omp parallel for schedule(static) if (parallel_)
  for (int i = 0; i < N; ++i) experts_[static_cast<std::size_t>(i)].step(g);

  rebuild_action();
  last_n_ = 0;
  ++t_;
  return x_;
}

void Sader::rebuild_action() {
  x_ = zeros(dom_.dim());
  for (std::size_t i = 0; i < experts_.size(); ++i) {
    const Vec& xi = experts_[i].action();
    for (std::size_t c = 0; c < x_.size(); ++c) x_[c] += w_[i] * xi[c];
  }
}

}  // namespace soco
