#include "paritylab/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "paritylab/errors.h"
#include "paritylab/parity_tensor.h"
#include "paritylab/rng.h"

namespace paritylab {

namespace {

__extension__ using Wide = __int128;

VertexSet MaskToSet(std::uint32_t mask) {
  VertexSet s;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1U) s.push_back(i);
  return s;
}

// (t1 / sqrt(d1)) > (t2 / sqrt(d2)) for t >= 0, d > 0.
bool Greater(std::int64_t t1, std::int64_t d1, std::int64_t t2, std::int64_t d2) {
  return static_cast<Wide>(t1) * t1 * d2 > static_cast<Wide>(t2) * t2 * d1;
}

class UMaxSearch {
 public:
  UMaxSearch(const SignGraph& g, int order) : g_(g), order_(order), supports_(order - 1) {}

  UMaximum Run() {
    best_.argmax.assign(static_cast<std::size_t>(order_), DiscretizedVector{1, {0}});
    EnumeratePrefix(0);
    best_.value = static_cast<double>(best_.integer_sum) /
                  std::sqrt(static_cast<double>(best_.denominator));
    return best_;
  }

 private:
  void EnumeratePrefix(int slot) {
    if (slot == order_ - 1) {
      SolveLastSlot();
      return;
    }
    const std::uint32_t full = (std::uint32_t{1} << g_.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      supports_[static_cast<std::size_t>(slot)] = MaskToSet(mask);
      EnumeratePrefix(slot + 1);
    }
  }

  // c[k] = sum over distinct prefix tuples (k_1..k_{r-1}) avoiding k of
  // prod_{i<j} E over the full tuple (k_1..k_{r-1}, k).
  void SolveLastSlot() {
    const int n = g_.size();
    std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> tuple;
    std::function<void(std::size_t, int)> walk = [&](std::size_t depth, int sign) {
      if (depth == supports_.size()) {
        for (Vertex k = 0; k < n; ++k) {
          int s = sign;
          bool repeated = false;
          for (Vertex t : tuple) {
            if (t == k) {
              repeated = true;
              break;
            }
            if (!g_.adjacent(t, k)) s = -s;
          }
          if (!repeated) c[static_cast<std::size_t>(k)] += s;
        }
        return;
      }
      for (Vertex v : supports_[depth]) {
        if (std::find(tuple.begin(), tuple.end(), v) != tuple.end()) continue;
        int s = sign;
        for (Vertex t : tuple)
          if (!g_.adjacent(t, v)) s = -s;
        tuple.push_back(v);
        walk(depth + 1, s);
        tuple.pop_back();
      }
    };
    walk(0, 1);

    std::int64_t prefix_den = 1;
    for (const VertexSet& s : supports_) prefix_den *= static_cast<std::int64_t>(s.size());

    std::vector<Vertex> by_coeff(static_cast<std::size_t>(n));
    for (Vertex k = 0; k < n; ++k) by_coeff[static_cast<std::size_t>(k)] = k;
    std::stable_sort(by_coeff.begin(), by_coeff.end(), [&](Vertex a, Vertex b) {
      return c[static_cast<std::size_t>(a)] > c[static_cast<std::size_t>(b)];
    });
    std::int64_t top = 0;
    std::int64_t bottom = 0;
    for (int m = 1; m <= n; ++m) {
      top += c[static_cast<std::size_t>(by_coeff[static_cast<std::size_t>(m - 1)])];
      bottom += c[static_cast<std::size_t>(by_coeff[static_cast<std::size_t>(n - m)])];
      const bool use_top = top >= -bottom;
      const std::int64_t t = use_top ? top : -bottom;
      const std::int64_t d = prefix_den * m;
      if (!found_ || Greater(t, d, best_.integer_sum, best_.denominator)) {
        found_ = true;
        best_.integer_sum = t;
        best_.denominator = d;
        for (std::size_t i = 0; i < supports_.size(); ++i) best_.argmax[i] = {1, supports_[i]};
        VertexSet last;
        if (use_top) {
          last.assign(by_coeff.begin(), by_coeff.begin() + m);
        } else {
          last.assign(by_coeff.end() - m, by_coeff.end());
        }
        std::sort(last.begin(), last.end());
        best_.argmax.back() = {use_top ? 1 : -1, std::move(last)};
      }
    }
  }

  const SignGraph& g_;
  int order_;
  std::vector<VertexSet> supports_;
  UMaximum best_;
  bool found_ = false;
};

std::vector<double> RandomBallVector(int n, Rng& rng) {
  std::vector<double> x = RandomUnitVector(n, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = std::pow(unit(rng), 1.0 / n);
  for (double& v : x) v *= radius;
  return x;
}

}  // namespace

UMaximum BruteForceMaxOverU(const SignGraph& g, int order, double guard) {
  if (order < 2) throw std::invalid_argument("tensor order must be at least 2");
  const double work = std::pow(2.0, static_cast<double>(g.size()) * order);
  if (work > guard || g.size() > 30) {
    throw ResourceLimitError("brute force over U^r: (2^" + std::to_string(g.size()) + ")^" +
                             std::to_string(order) + " exceeds the guard");
  }
  return UMaxSearch(g, order).Run();
}

double ConcentrationBound(int count, double threshold) {
  const double base = 4.0 * std::sqrt(std::numbers::e * std::numbers::pi);
  return std::exp(-threshold / 18.0 + count * std::log(base));
}

TailEstimate ConcentrationTail(int count, int dimension, double threshold, long long samples,
                               std::uint64_t seed, VSource source,
                               const std::vector<std::vector<double>>* supplied) {
  if (count < 1 || dimension < 1) throw std::invalid_argument("N and N' must be positive");
  if (samples < 1) throw std::invalid_argument("samples must be positive");

  Rng rng(seed);
  std::vector<std::vector<double>> v;
  switch (source) {
    case VSource::kUnitRandom:
      for (int i = 0; i < count; ++i) v.push_back(RandomUnitVector(dimension, rng));
      break;
    case VSource::kWorstIsh:
      v.assign(static_cast<std::size_t>(count),
               std::vector<double>(static_cast<std::size_t>(dimension),
                                   1.0 / std::sqrt(static_cast<double>(dimension))));
      break;
    case VSource::kSupplied:
      if (supplied == nullptr) throw std::invalid_argument("supplied v source needs vectors");
      v = *supplied;
      break;
  }
  if (v.size() != static_cast<std::size_t>(count)) {
    throw std::invalid_argument("expected " + std::to_string(count) + " v vectors");
  }
  for (const auto& vi : v) {
    if (vi.size() != static_cast<std::size_t>(dimension)) {
      throw std::invalid_argument("v vector has the wrong dimension");
    }
    double norm2 = 0.0;
    for (double c : vi) norm2 += c * c;
    if (std::sqrt(norm2) > 1.0 + 1e-12) throw std::invalid_argument("||v_i|| exceeds 1");
  }

  TailEstimate est;
  est.count = count;
  est.dimension = dimension;
  est.threshold = threshold;
  est.samples = samples;
  est.paper_bound = ConcentrationBound(count, threshold);

  double total = 0.0;
  for (long long s = 0; s < samples; ++s) {
    double stat = 0.0;
    for (const auto& vi : v) {
      double dot = 0.0;
      std::uint64_t bits = 0;
      for (int j = 0; j < dimension; ++j) {
        if ((j & 63) == 0) bits = rng();
        dot += (bits & 1U) ? vi[static_cast<std::size_t>(j)] : -vi[static_cast<std::size_t>(j)];
        bits >>= 1;
      }
      stat += dot * dot;
    }
    total += stat;
    est.sample_max = std::max(est.sample_max, stat);
    if (stat >= threshold) ++est.exceed_count;
  }
  est.sample_mean = total / static_cast<double>(samples);
  est.empirical_rate = static_cast<double>(est.exceed_count) / static_cast<double>(samples);
  return est;
}

UApproxReport CheckUApprox(const SignGraph& g, int order, long long samples, std::uint64_t seed) {
  UApproxReport rep;
  rep.n = g.size();
  rep.order = order;
  rep.depth = g.size() <= 1
                  ? 0
                  : static_cast<int>(std::ceil(order * std::log2(static_cast<double>(g.size())) -
                                               1e-12));
  rep.factor = std::pow(2.0 * rep.depth, order);
  rep.u_maximum = BruteForceMaxOverU(g, order).value;
  rep.bound = rep.factor * rep.u_maximum;
  rep.samples = samples;

  const ParityForm form(g, order);
  Rng rng(seed);
  for (long long s = 0; s < samples; ++s) {
    std::vector<Vector> xs;
    for (int i = 0; i < order; ++i) xs.push_back(RandomBallVector(g.size(), rng));
    const double value = form.Evaluate(xs);
    rep.sampled_maximum = s == 0 ? value : std::max(rep.sampled_maximum, value);
    if (value > rep.bound + 1e-9) ++rep.violations;
  }
  return rep;
}

double ContractDense(const DenseTensor& t, std::span<const Vector> xs,
                     const std::vector<VertexSet>* blocks) {
  if (xs.size() != static_cast<std::size_t>(t.order)) {
    throw std::invalid_argument("ContractDense: one vector per slot required");
  }
  std::vector<std::vector<char>> allowed;
  if (blocks != nullptr) {
    for (const VertexSet& b : *blocks) {
      std::vector<char> a(static_cast<std::size_t>(t.n), 0);
      for (Vertex v : b) a[static_cast<std::size_t>(v)] = 1;
      allowed.push_back(std::move(a));
    }
  }
  double acc = 0.0;
  std::vector<Vertex> k(static_cast<std::size_t>(t.order), 0);
  for (std::size_t off = 0; off < t.entries.size(); ++off) {
    bool inside = true;
    if (blocks != nullptr) {
      for (std::size_t d = 0; d < k.size(); ++d)
        if (!allowed[d][static_cast<std::size_t>(k[d])]) inside = false;
    }
    if (inside && t.entries[off] != 0) {
      double term = t.entries[off];
      for (std::size_t d = 0; d < k.size(); ++d) term *= xs[d][static_cast<std::size_t>(k[d])];
      acc += term;
    }
    for (int d = t.order - 1; d >= 0; --d) {
      if (++k[static_cast<std::size_t>(d)] < t.n) break;
      k[static_cast<std::size_t>(d)] = 0;
    }
  }
  return acc;
}

std::vector<std::vector<VertexSet>> EqualPartitions(int n, int order) {
  if (order < 1 || n % order != 0) {
    throw std::invalid_argument("partition needs the order to divide n");
  }
  const int block = n / order;
  std::vector<std::vector<VertexSet>> out;
  std::vector<VertexSet> current(static_cast<std::size_t>(order));
  std::function<void(Vertex)> place = [&](Vertex v) {
    if (v == n) {
      out.push_back(current);
      return;
    }
    for (auto& b : current) {
      if (static_cast<int>(b.size()) == block) continue;
      b.push_back(v);
      place(v + 1);
      b.pop_back();
    }
  };
  place(0);
  return out;
}

PartitionReport CheckPartitionIdentity(const SignGraph& g, int order, long long tuples,
                                       std::uint64_t seed) {
  const int n = g.size();
  PartitionReport rep;
  rep.n = n;
  rep.order = order;
  double count = 1.0;  // n! / ((n/r)!)^r
  for (int i = 1; i <= n; ++i) count *= i;
  for (int b = 0; b < order; ++b)
    for (int i = 1; i <= n / order; ++i) count /= i;
  if (count > 1e6) throw ResourceLimitError("too many partitions to enumerate");
  const auto partitions = EqualPartitions(n, order);
  rep.partitions = static_cast<long long>(partitions.size());

  // Appearance counts over ordered distinct r-tuples.
  std::vector<int> owner(static_cast<std::size_t>(n));
  std::vector<long long> appearances;
  std::vector<Vertex> tuple(static_cast<std::size_t>(order));
  const double tuple_count = std::pow(static_cast<double>(n), order);
  appearances.assign(static_cast<std::size_t>(tuple_count), 0);
  for (const auto& part : partitions) {
    for (int b = 0; b < order; ++b)
      for (Vertex v : part[static_cast<std::size_t>(b)]) owner[static_cast<std::size_t>(v)] = b;
    for (std::size_t code = 0; code < appearances.size(); ++code) {
      std::size_t rest = code;
      bool ok = true;
      for (int i = order - 1; i >= 0; --i) {
        const auto v = static_cast<std::size_t>(rest % static_cast<std::size_t>(n));
        rest /= static_cast<std::size_t>(n);
        if (owner[v] != i) ok = false;
      }
      if (ok) ++appearances[code];
    }
  }
  rep.appearances = -1;
  rep.equal_appearance = true;
  for (std::size_t code = 0; code < appearances.size(); ++code) {
    std::size_t rest = code;
    std::vector<Vertex> k(static_cast<std::size_t>(order));
    for (int i = order - 1; i >= 0; --i) {
      k[static_cast<std::size_t>(i)] = static_cast<Vertex>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    std::vector<Vertex> sorted = k;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    if (rep.appearances < 0) rep.appearances = appearances[code];
    if (appearances[code] != rep.appearances) rep.equal_appearance = false;
  }
  if (!rep.equal_appearance) rep.appearances = -1;

  const ParityForm form(g, order);
  const double scale = std::pow(static_cast<double>(order), order) /
                       static_cast<double>(rep.partitions);
  Rng rng(seed);
  for (long long t = 0; t < tuples; ++t) {
    std::vector<Vector> xs;
    for (int i = 0; i < order; ++i) xs.push_back(RandomBallVector(n, rng));
    const double full = form.Evaluate(xs);
    double abs_sum = 0.0;
    double signed_sum = 0.0;
    for (const auto& part : partitions) {
      const double block = EvaluateBlock(g, TensorQuery{order, part}, xs);
      abs_sum += std::abs(block);
      signed_sum += block;
    }
    ++rep.tuples_checked;
    if (std::abs(full) > scale * abs_sum + 1e-12) ++rep.violations;
    if (rep.appearances > 0) {
      rep.identity_error =
          std::max(rep.identity_error, std::abs(signed_sum - rep.appearances * full));
    }
  }
  return rep;
}

}  // namespace paritylab
