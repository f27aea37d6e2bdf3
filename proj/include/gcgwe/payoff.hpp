#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>

namespace gcgwe {

// Payoff functions are strictly decreasing continuous functions of the
// congestion level. Four closed forms are supported; each one is a small
// parameter struct so payoff tables can be compared structurally and
// serialized exactly.

/// f(x) = -x
struct NegLinear {
  bool operator==(const NegLinear&) const = default;
};

/// f(x) = -(a + b x + c x^2 + d x^3), all coefficients strictly positive.
struct DecreasingCubic {
  double a = 0.5;
  double b = 0.5;
  double c = 0.5;
  double d = 0.5;
  bool operator==(const DecreasingCubic&) const = default;
};

/// f(x) = 1/x, with f(0) = +infinity in the extended reals.
struct Reciprocal {
  bool operator==(const Reciprocal&) const = default;
};

/// Shannon rate f(x) = B log2(1 + p / (tau0 B + x)).
///
/// B is the channel bandwidth in Hz, p the received signal power in mW and
/// tau0 the noise density in mW/Hz; x is the interference power in mW.
struct Shannon {
  double bandwidth_hz = 20e6;
  double signal_mw = 1.0;
  double noise_mw_per_hz = 3.981071705534973e-18;  // 10^(-17.4)
  bool operator==(const Shannon&) const = default;
};

using PayoffSpec = std::variant<NegLinear, DecreasingCubic, Reciprocal, Shannon>;

/// Evaluates the payoff at congestion level x >= 0. Reciprocal at x = 0
/// returns +infinity.
inline double evaluate(const PayoffSpec& spec, double x) {
  struct Visitor {
    double x;
    double operator()(const NegLinear&) const { return -x; }
    double operator()(const DecreasingCubic& p) const {
      return -(p.a + x * (p.b + x * (p.c + x * p.d)));
    }
    double operator()(const Reciprocal&) const {
      if (x == 0.0) return std::numeric_limits<double>::infinity();
      return 1.0 / x;
    }
    double operator()(const Shannon& p) const {
      return p.bandwidth_hz *
             std::log2(1.0 + p.signal_mw / (p.noise_mw_per_hz * p.bandwidth_hz + x));
    }
  };
  return std::visit(Visitor{x}, spec);
}

/// Throws std::invalid_argument unless the parameters define a strictly
/// decreasing function on [0, inf).
inline void validate(const PayoffSpec& spec) {
  struct Visitor {
    void operator()(const NegLinear&) const {}
    void operator()(const DecreasingCubic& p) const {
      if (!(p.a > 0.0 && p.b > 0.0 && p.c > 0.0 && p.d > 0.0) ||
          !std::isfinite(p.a + p.b + p.c + p.d)) {
        throw std::invalid_argument("DecreasingCubic coefficients must be strictly positive");
      }
    }
    void operator()(const Reciprocal&) const {}
    void operator()(const Shannon& p) const {
      if (!(p.bandwidth_hz > 0.0 && p.signal_mw > 0.0 && p.noise_mw_per_hz > 0.0) ||
          !std::isfinite(p.bandwidth_hz + p.signal_mw + p.noise_mw_per_hz)) {
        throw std::invalid_argument("Shannon parameters must be strictly positive");
      }
    }
  };
  std::visit(Visitor{}, spec);
}

inline std::string variant_name(const PayoffSpec& spec) {
  struct Visitor {
    std::string operator()(const NegLinear&) const { return "neg_linear"; }
    std::string operator()(const DecreasingCubic&) const { return "decreasing_cubic"; }
    std::string operator()(const Reciprocal&) const { return "reciprocal"; }
    std::string operator()(const Shannon&) const { return "shannon"; }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace gcgwe
