#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "rumor/generators.hpp"
#include "rumor/protocol.hpp"

namespace rumor::theory {

/// Leading-order runtime constant on K_n and expanders:
///   push: 1/ln(1+q) + 1/q
///   pull: 1/ln(1+q) - 1/ln(1-q)
///   pp:   1/ln(1+2q) + 1/(q - ln(1-q))
/// At q = 1 the analytic limits are returned (the last addends vanish for pull
/// and pp; push keeps 1/q = 1). Throws out_of_range unless q in (0, 1].
double protocol_constant(Protocol protocol, double q);

/// Expected-growth matrix of (|I ∩ A|, |I ∩ B|) for push&pull on the two-block
/// graph with a G(n/2, 1-2 eps) second block.
struct TwoBlockMatrix {
  double m11 = 0.0;
  double m12 = 0.0;
  double m22 = 0.0;

  double m21() const noexcept { return m12; }
};

/// eps in [0, 1/2), q in (0, 1].
TwoBlockMatrix two_block_matrix(double eps, double q);

/// Largest eigenvalue of a symmetric 2x2 matrix, computed from the trace and
/// discriminant.
double top_eigenvalue(const TwoBlockMatrix& m);

/// Closed form 1 + 2q + (2q(sqrt(eps^2/2 - eps + 1) - 1) + q eps) / (2 - 2 eps).
double lambda_max_pp(double eps, double q);

enum class Target { completion, threshold };

struct PredictionInputs {
  Family family = Family::complete;
  Protocol protocol = Protocol::push;
  double n = 0.0;
  double q = 1.0;
  std::optional<double> eps;
  Target target = Target::completion;
};

struct TheoryPrediction {
  enum class Kind { constant, rounds };
  Kind kind = Kind::rounds;
  double value = 0.0;
  std::string formula_id;
  PredictionInputs inputs;
};

/// Constant c_P(q) wrapped as a prediction record.
TheoryPrediction constant_prediction(Protocol protocol, double q);

/// Leading-order round count. Supported combinations:
///   completion, {complete, gnp, regular} x any protocol: c_P(q) ln n
///   completion, push-adversary x push: (c_push(q) + eps/(2q)) ln n (lower bound)
///   completion, pp-adversary x pp, q < 1:
///       ln n / ln lambda_max_pp + ln n / (q(1 - 1.5 eps)/(1 - eps) - ln(1 - q))
///   threshold, any non-star family: push ln n / ln(1+q); pp ln n / ln(1+2q)
/// Throws Error(unsupported) otherwise.
TheoryPrediction predict_rounds(const PredictionInputs& in);

const char* to_string(Target target) noexcept;

}  // namespace rumor::theory
