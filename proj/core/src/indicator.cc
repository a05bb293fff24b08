#include "paritylab/indicator.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "paritylab/errors.h"

namespace paritylab {

double IndicatorComponent::magnitude() const { return std::ldexp(1.0, -std::abs(level)); }

double IndicatorComponent::value() const { return level > 0 ? magnitude() : -magnitude(); }

double IndicatorComponent::norm() const {
  return magnitude() * std::sqrt(static_cast<double>(support.size()));
}

std::vector<IndicatorComponent> Decompose(std::span<const double> x, int depth) {
  if (depth < 1) throw std::invalid_argument("decomposition depth must be at least 1");
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  if (std::sqrt(norm2) > 1.0 + 1e-12) {
    throw std::invalid_argument("Decompose: ||x|| = " + std::to_string(std::sqrt(norm2)) +
                                " exceeds 1");
  }

  // Residual magnitudes of the positive and negative parts.
  std::vector<double> pos(x.size(), 0.0);
  std::vector<double> neg(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) pos[i] = x[i];
    if (x[i] < 0) neg[i] = -x[i];
  }

  std::vector<IndicatorComponent> out;
  for (int j = 1; j <= depth; ++j) {
    const double step = std::ldexp(1.0, -j);
    for (int side : {+1, -1}) {
      std::vector<double>& residual = side > 0 ? pos : neg;
      IndicatorComponent c{side * j, {}};
      for (std::size_t i = 0; i < residual.size(); ++i) {
        if (residual[i] > step) {
          residual[i] -= step;
          c.support.push_back(static_cast<Vertex>(i));
        }
      }
      if (!c.support.empty()) out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<double> Reconstruct(std::span<const IndicatorComponent> components, int n) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (const IndicatorComponent& c : components) {
    const double v = c.value();
    for (Vertex i : c.support) x[static_cast<std::size_t>(i)] += v;
  }
  return x;
}

int DefaultDepth(int order, int n) {
  if (n <= 1) return 1;
  const int d = static_cast<int>(std::ceil(order * std::log2(static_cast<double>(n)) - 1e-12));
  return d < 1 ? 1 : d;
}

std::vector<double> DiscretizedVector::ToDense(int n) const {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  const double v = sign / std::sqrt(static_cast<double>(support.size()));
  for (Vertex i : support) x[static_cast<std::size_t>(i)] = v;
  return x;
}

double CountU(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return 2.0 * std::round(c);
}

void ForEachInU(int n, int k, const std::function<void(const DiscretizedVector&)>& visit,
                double guard) {
  if (k < 1 || k > n) throw std::invalid_argument("ForEachInU: need 1 <= k <= n");
  if (CountU(n, k) > guard) {
    throw ResourceLimitError("enumerating U_k with 2*C(" + std::to_string(n) + "," +
                             std::to_string(k) + ") members exceeds the guard");
  }
  DiscretizedVector v{1, VertexSet(static_cast<std::size_t>(k))};
  for (int i = 0; i < k; ++i) v.support[static_cast<std::size_t>(i)] = i;
  while (true) {
    v.sign = 1;
    visit(v);
    v.sign = -1;
    visit(v);
    // Next k-combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && v.support[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++v.support[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < k; ++t)
      v.support[static_cast<std::size_t>(t)] = v.support[static_cast<std::size_t>(t - 1)] + 1;
  }
}

}  // namespace paritylab
