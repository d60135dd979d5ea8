#include <cmath>
#include <cstdint>
#include <sstream>

#include "dwbc/cli.hpp"

namespace dwbc {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag1,
                       std::uint64_t tag2, std::uint64_t tag3) {
  std::uint64_t h = base;
  h = splitmix(h ^ (tag1 * 0x9E3779B97F4A7C15ull));
  h = splitmix(h ^ (tag2 * 0xC2B2AE3D27D4EB4Full));
  h = splitmix(h ^ (tag3 * 0x165667B19E3779F9ull));
  return h;
}

double ParamSampler::uniform(double lo, double hi) {
  // Top 53 bits of the engine word; identical stream on every platform,
  // unlike std::uniform_real_distribution.
  const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

std::vector<Complex> ParamSampler::rapidities(int n, double lo, double hi,
                                              double min_sep) {
  if (n < 0) throw ValidationError("cannot draw a negative count");
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(n));
  long guard = 0;
  const long limit = 10000L * std::max(1, n);
  while (static_cast<int>(vals.size()) < n) {
    if (++guard > limit) {
      std::ostringstream msg;
      msg << "cannot place " << n << " values in [" << lo << ", " << hi
          << "] with separation " << min_sep;
      throw ValidationError(msg.str());
    }
    const double cand = uniform(lo, hi);
    bool ok = true;
    for (double v : vals)
      if (std::abs(cand - v) < min_sep) {
        ok = false;
        break;
      }
    if (ok) vals.push_back(cand);
  }
  std::vector<Complex> out;
  out.reserve(vals.size());
  for (double v : vals) out.emplace_back(v, 0.0);
  return out;
}

Complex ParamSampler::lambda(double lo, double hi) {
  return {uniform(lo, hi), 0.0};
}

}  // namespace dwbc
