#include "rumor/theory.hpp"

#include <cmath>

#include "rumor/error.hpp"

namespace rumor::theory {
namespace {

void check_q(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorKind::out_of_range, "q must lie in (0, 1]");
}

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps < 0.5)) throw Error(ErrorKind::out_of_range, "eps must lie in [0, 1/2)");
}

[[noreturn]] void unsupported(const PredictionInputs& in) {
  throw Error(ErrorKind::unsupported, "no prediction for family " +
                                          std::string(to_string(in.family)) + " with protocol " +
                                          std::string(to_string(in.protocol)) + " (" +
                                          to_string(in.target) + ")");
}

}  // namespace

const char* to_string(Target target) noexcept {
  return target == Target::completion ? "completion" : "threshold";
}

double protocol_constant(Protocol protocol, double q) {
  check_q(q);
  const bool limit = q == 1.0;
  switch (protocol) {
    case Protocol::push:
      return 1.0 / std::log1p(q) + 1.0 / q;
    case Protocol::pull:
      return 1.0 / std::log1p(q) - (limit ? 0.0 : 1.0 / std::log1p(-q));
    case Protocol::push_pull:
      return 1.0 / std::log1p(2.0 * q) + (limit ? 0.0 : 1.0 / (q - std::log1p(-q)));
  }
  throw Error(ErrorKind::unsupported, "unknown protocol");
}

TwoBlockMatrix two_block_matrix(double eps, double q) {
  check_eps(eps);
  check_q(q);
  const double tilt = eps / (2.0 - 2.0 * eps);
  return {1.0 + q, q * (1.0 + tilt), 1.0 + q * (1.0 - 2.0 * tilt)};
}

double top_eigenvalue(const TwoBlockMatrix& m) {
  const double half_trace = 0.5 * (m.m11 + m.m22);
  const double half_gap = 0.5 * (m.m11 - m.m22);
  return half_trace + std::hypot(half_gap, m.m12);
}

double lambda_max_pp(double eps, double q) {
  check_eps(eps);
  check_q(q);
  const double radical = std::sqrt(eps * eps / 2.0 - eps + 1.0);
  return 1.0 + 2.0 * q + (2.0 * q * (radical - 1.0) + q * eps) / (2.0 - 2.0 * eps);
}

TheoryPrediction constant_prediction(Protocol protocol, double q) {
  TheoryPrediction p;
  p.kind = TheoryPrediction::Kind::constant;
  p.value = protocol_constant(protocol, q);
  p.formula_id = "c_" + std::string(to_string(protocol)) + "(q)";
  p.inputs.protocol = protocol;
  p.inputs.q = q;
  return p;
}

TheoryPrediction predict_rounds(const PredictionInputs& in) {
  check_q(in.q);
  if (!(in.n >= 2.0)) throw Error(ErrorKind::out_of_range, "n must be at least 2");
  const double log_n = std::log(in.n);
  TheoryPrediction p;
  p.kind = TheoryPrediction::Kind::rounds;
  p.inputs = in;

  const bool expander_like =
      in.family == Family::complete || in.family == Family::gnp || in.family == Family::regular;

  if (in.target == Target::threshold) {
    if (in.family == Family::star) unsupported(in);
    if (in.protocol == Protocol::push) {
      p.value = log_n / std::log1p(in.q);
      p.formula_id = "threshold-push:log_{1+q}(n)";
      return p;
    }
    if (in.protocol == Protocol::push_pull) {
      p.value = log_n / std::log1p(2.0 * in.q);
      p.formula_id = "threshold-pp-upper:log_{1+2q}(n)";
      return p;
    }
    unsupported(in);
  }

  if (expander_like) {
    p.value = protocol_constant(in.protocol, in.q) * log_n;
    p.formula_id = "expander:c_" + std::string(to_string(in.protocol)) + "(q)*ln(n)";
    return p;
  }
  if (in.family == Family::push_adversary && in.protocol == Protocol::push) {
    if (!in.eps) throw Error(ErrorKind::invalid_spec, "push-adversary prediction needs eps");
    check_eps(*in.eps);
    p.value = (protocol_constant(Protocol::push, in.q) + *in.eps / (2.0 * in.q)) * log_n;
    p.formula_id = "push-adversary-lower:(c_push(q)+eps/(2q))*ln(n)";
    return p;
  }
  if (in.family == Family::pp_adversary && in.protocol == Protocol::push_pull && in.q < 1.0) {
    if (!in.eps) throw Error(ErrorKind::invalid_spec, "pp-adversary prediction needs eps");
    const double eps = *in.eps;
    check_eps(eps);
    const double growth = std::log(lambda_max_pp(eps, in.q));
    const double tail_rate = in.q * (1.0 - 1.5 * eps) / (1.0 - eps) - std::log1p(-in.q);
    p.value = log_n / growth + log_n / tail_rate;
    p.formula_id = "pp-adversary:ln(n)/ln(lambda_max)+ln(n)/(q(1-1.5eps)/(1-eps)-ln(1-q))";
    return p;
  }
  unsupported(in);
}

}  // namespace rumor::theory
