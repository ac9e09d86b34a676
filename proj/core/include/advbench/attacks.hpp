#pragma once

#include <optional>
#include <string>

#include "advbench/classifier.hpp"
#include "advbench/image.hpp"

namespace advbench {

enum class AttackMethod { fast, basic_iterative, least_likely };

std::string to_string(AttackMethod method);
AttackMethod attack_method_from_string(const std::string& name);

struct AttackConfig {
  AttackMethod method = AttackMethod::fast;
  int epsilon = 0;  // max-norm budget, integer pixel units
  int alpha = 1;    // per-step size, integer pixel units
  /// Iteration count for the iterative methods. When unset it resolves to
  /// default_iterations(epsilon), or to 1 for epsilon = 0 (where every step
  /// is clipped back to the source anyway).
  std::optional<int> iterations;
};

/// Heuristic iteration count: ceil(min(epsilon + 4, 1.25 * epsilon)),
/// computed exactly in integers. Requires epsilon >= 1.
int default_iterations(int epsilon);

int resolved_iterations(const AttackConfig& cfg);

/// Per-pixel projection into the intersection of [0, 255] and the L-inf
/// epsilon-ball around `source`: min(255, X + eps, max(0, X - eps, X')).
ImageTensor clip_eps(const ImageTensor& source, const ImageTensor& candidate, int epsilon);

/// sign with sign(0) = 0, so zero-gradient pixels are left untouched.
inline int sign_of(double v) noexcept { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/// image + step * sign(gradient), clamped to [0, 255] per pixel.
ImageTensor signed_gradient_step(const ImageTensor& image, const GradientImage& gradient,
                                 int step);

/// One-shot method: X + epsilon * sign(grad J(X, label)), clamped to [0, 255].
ImageTensor fast_attack(const ModelParams& params, const ImageTensor& image, Label label,
                        int epsilon);

/// Repeated alpha-sized sign steps on J(., label), each clipped into the
/// epsilon-ball of the original image. Iterates stay integer throughout.
ImageTensor basic_iterative_attack(const ModelParams& params, const ImageTensor& image,
                                   Label label, const AttackConfig& cfg);

/// Class with minimal predicted probability; ties broken by ascending index.
Label least_likely_label(const ModelParams& params, const ImageTensor& image);

/// Iterative descent toward the least-likely class of the ORIGINAL image
/// (the target is computed once and held fixed across iterations).
ImageTensor least_likely_class_attack(const ModelParams& params, const ImageTensor& image,
                                      const AttackConfig& cfg);

/// Dispatch on cfg.method. `label` must be the true class; the least-likely
/// method ignores it when picking its target.
ImageTensor run_attack(const ModelParams& params, const ImageTensor& image, Label label,
                       const AttackConfig& cfg);

}  // namespace advbench
