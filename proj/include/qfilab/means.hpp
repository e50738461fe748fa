#pragma once

#include <string>

namespace qfilab {

enum class MeanKind { arithmetic, harmonic, logarithmic };

// Logarithmic mean (a-b)/(ln a - ln b), continued by m(a,a) = a and
// m(a,0) = 0. Evaluated through a series in u = (a-b)/(a+b) when a ~ b to
// avoid the cancellation in the quotient.
double log_mean(double a, double b);

// Named matrix-monotone mean m_f(a,b) selecting a member of the generalized
// variance / Fisher information families.
class MonotoneMean {
 public:
  explicit MonotoneMean(MeanKind kind) : kind_(kind) {}

  static MonotoneMean arithmetic() { return MonotoneMean(MeanKind::arithmetic); }
  static MonotoneMean harmonic() { return MonotoneMean(MeanKind::harmonic); }
  static MonotoneMean logarithmic() {
    return MonotoneMean(MeanKind::logarithmic);
  }
  static MonotoneMean from_name(const std::string& name);

  MeanKind kind() const { return kind_; }
  const char* name() const;

  double evaluate(double a, double b) const;

 private:
  MeanKind kind_;
};

}  // namespace qfilab
