#include "qfilab/means.hpp"

#include <cmath>
#include <stdexcept>

namespace qfilab {

double log_mean(double a, double b) {
  if (a < 0.0 || b < 0.0) {
    throw std::invalid_argument("log_mean: arguments must be nonnegative");
  }
  if (a == 0.0 || b == 0.0) return 0.0;  // limit of (a-b)/(ln a - ln b)
  const double mu = 0.5 * (a + b);
  if (std::abs(a - b) < 1e-8 * std::max(a, b)) {
    // (a-b)/(ln a - ln b) = mu / (1 + u^2/3 + u^4/5 + ...), u = (a-b)/(a+b)
    const double u = (a - b) / (a + b);
    const double u2 = u * u;
    return mu / (1.0 + u2 / 3.0 + u2 * u2 / 5.0);
  }
  return (a - b) / (std::log(a) - std::log(b));
}

MonotoneMean MonotoneMean::from_name(const std::string& name) {
  if (name == "arithmetic") return arithmetic();
  if (name == "harmonic") return harmonic();
  if (name == "logarithmic") return logarithmic();
  throw std::invalid_argument("unknown mean: " + name);
}

const char* MonotoneMean::name() const {
  switch (kind_) {
    case MeanKind::arithmetic: return "arithmetic";
    case MeanKind::harmonic: return "harmonic";
    case MeanKind::logarithmic: return "logarithmic";
  }
  return "?";
}

double MonotoneMean::evaluate(double a, double b) const {
  switch (kind_) {
    case MeanKind::arithmetic:
      return 0.5 * (a + b);
    case MeanKind::harmonic:
      return (a + b > 0.0) ? 2.0 * a * b / (a + b) : 0.0;
    case MeanKind::logarithmic:
      return log_mean(a, b);
  }
  return 0.0;
}

}  // namespace qfilab
