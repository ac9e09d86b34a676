#include "advbench/attacks.hpp"

#include <algorithm>

namespace advbench {

std::string to_string(AttackMethod method) {
  switch (method) {
    case AttackMethod::fast:
      return "fast";
    case AttackMethod::basic_iterative:
      return "basic_iterative";
    case AttackMethod::least_likely:
      return "least_likely";
  }
  throw ValueError("bad attack method enum");
}

AttackMethod attack_method_from_string(const std::string& name) {
  if (name == "fast") return AttackMethod::fast;
  if (name == "basic_iterative") return AttackMethod::basic_iterative;
  if (name == "least_likely") return AttackMethod::least_likely;
  throw ValueError("unknown attack method: " + name);
}

int default_iterations(int epsilon) {
  if (epsilon < 1) throw ValueError("default_iterations requires epsilon >= 1");
  // min(eps + 4, 1.25 eps) = min(4 eps + 16, 5 eps) / 4, rounded up.
  const int quarters = std::min(4 * epsilon + 16, 5 * epsilon);
  return std::max(1, (quarters + 3) / 4);
}

int resolved_iterations(const AttackConfig& cfg) {
  if (cfg.iterations) {
    if (*cfg.iterations < 1) throw ValueError("iterations must be >= 1");
    return *cfg.iterations;
  }
  return cfg.epsilon >= 1 ? default_iterations(cfg.epsilon) : 1;
}

namespace {

void check_attack_config(const AttackConfig& cfg) {
  if (cfg.epsilon < 0) throw ValueError("epsilon must be >= 0");
  if (cfg.alpha < 1) throw ValueError("alpha must be >= 1");
}

}  // namespace

ImageTensor clip_eps(const ImageTensor& source, const ImageTensor& candidate, int epsilon) {
  if (!source.same_shape(candidate)) {
    throw ShapeError("clip_eps requires identical shapes");
  }
  if (epsilon < 0) throw ValueError("epsilon must be >= 0");
  std::vector<std::uint8_t> out(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    const int x = source[i];
    const int c = candidate[i];
    const int v = std::min({255, x + epsilon, std::max({0, x - epsilon, c})});
    out[i] = static_cast<std::uint8_t>(v);
  }
  return ImageTensor(source.width(), source.height(), source.channels(), std::move(out));
}

ImageTensor signed_gradient_step(const ImageTensor& image, const GradientImage& gradient,
                                 int step) {
  if (!gradient.matches_shape(image)) {
    throw ShapeError("gradient shape does not match image");
  }
  std::vector<std::uint8_t> out(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const int v = static_cast<int>(image[i]) + step * sign_of(gradient[i]);
    out[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  }
  return ImageTensor(image.width(), image.height(), image.channels(), std::move(out));
}

ImageTensor fast_attack(const ModelParams& params, const ImageTensor& image, Label label,
                        int epsilon) {
  if (epsilon < 0) throw ValueError("epsilon must be >= 0");
  const GradientImage grad = input_gradient(params, image, label);
  // For a step of exactly +/- epsilon the [0,255] clamp coincides with
  // clip_eps against the source.
  return signed_gradient_step(image, grad, epsilon);
}

ImageTensor basic_iterative_attack(const ModelParams& params, const ImageTensor& image,
                                   Label label, const AttackConfig& cfg) {
  if (cfg.method != AttackMethod::basic_iterative) {
    throw ValueError("config method is not basic_iterative");
  }
  check_attack_config(cfg);
  const int iterations = resolved_iterations(cfg);
  ImageTensor current = image;
  for (int it = 0; it < iterations; ++it) {
    const GradientImage grad = input_gradient(params, current, label);
    current = clip_eps(image, signed_gradient_step(current, grad, cfg.alpha), cfg.epsilon);
  }
  return current;
}

Label least_likely_label(const ModelParams& params, const ImageTensor& image) {
  const Prediction pred = forward(params, image);
  std::size_t best = 0;
  for (std::size_t i = 1; i < pred.probabilities.size(); ++i) {
    if (pred.probabilities[i] < pred.probabilities[best]) best = i;
  }
  return Label{static_cast<int>(best)};
}

ImageTensor least_likely_class_attack(const ModelParams& params, const ImageTensor& image,
                                      const AttackConfig& cfg) {
  if (cfg.method != AttackMethod::least_likely) {
    throw ValueError("config method is not least_likely");
  }
  check_attack_config(cfg);
  const Label target = least_likely_label(params, image);
  const int iterations = resolved_iterations(cfg);
  ImageTensor current = image;
  for (int it = 0; it < iterations; ++it) {
    const GradientImage grad = input_gradient(params, current, target);
    current = clip_eps(image, signed_gradient_step(current, grad, -cfg.alpha), cfg.epsilon);
  }
  return current;
}

ImageTensor run_attack(const ModelParams& params, const ImageTensor& image, Label label,
                       const AttackConfig& cfg) {
  switch (cfg.method) {
    case AttackMethod::fast:
      return fast_attack(params, image, label, cfg.epsilon);
    case AttackMethod::basic_iterative:
      return basic_iterative_attack(params, image, label, cfg);
    case AttackMethod::least_likely:
      return least_likely_class_attack(params, image, cfg);
  }
  throw ValueError("bad attack method enum");
}

}  // namespace advbench
