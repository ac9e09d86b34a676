#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "advbench/dataset.hpp"
#include "advbench/image.hpp"

namespace advbench {

/// Fully-connected feedforward net: layer_sizes[0] inputs through hidden
/// layers to layer_sizes.back() logits, with `activation` between affine
/// layers ("relu" is the only supported tag) and softmax on top.
struct Architecture {
  std::vector<int> layer_sizes;
  std::string activation = "relu";

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  friend bool operator==(const Architecture&, const Architecture&) = default;
};

/// Reference architecture used by the shipped experiment configs.
Architecture reference_architecture();

struct TrainConfig {
  std::uint64_t seed = 0;
  int epochs = 1;
  int batch_size = 32;
  double learning_rate = 0.01;
  double momentum = 0.9;
};

/// Weights and biases of the classifier, fixed during attacks. Raw pixels are
/// mapped to network inputs as x_norm = x * input_scale + input_offset.
struct ModelParams {
  Architecture arch;
  std::vector<std::vector<double>> weights;  // per layer, row-major [out][in]
  std::vector<std::vector<double>> biases;   // per layer, [out]
  double input_scale = 1.0 / 255.0;
  double input_offset = 0.0;

  int num_classes() const { return arch.output_dim(); }
  int input_dim() const { return arch.input_dim(); }
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct Prediction {
  std::vector<double> probabilities;
  std::vector<double> logits;
  /// All classes, sorted by descending probability; ties broken by ascending
  /// class index.
  std::vector<Label> ranked_labels;
};

/// Glorot-uniform weights (uniform in +/- sqrt(6 / (fan_in + fan_out)), drawn
/// from the counter RNG stream derive_key(mix64(seed), layer); zero biases.
ModelParams init_model(std::uint64_t seed, const Architecture& arch, int num_classes);

/// Flatten and normalize an image into the network input vector.
std::vector<double> normalized_input(const ModelParams& params, const ImageTensor& image);

Prediction forward(const ModelParams& params, const ImageTensor& image);
Prediction forward_normalized(const ModelParams& params, std::span<const double> input);

/// Cross-entropy loss: equals -log(probability of `label`).
double loss(const ModelParams& params, const ImageTensor& image, Label label);
double loss_normalized(const ModelParams& params, std::span<const double> input, Label label);

/// Exact analytic gradient of the loss with respect to the raw [0, 255]
/// pixel values (the input_scale factor is part of the chain rule).
GradientImage input_gradient(const ModelParams& params, const ImageTensor& image, Label label);

/// Gradient with respect to the normalized input vector. Test hook for
/// finite-difference checks; input_gradient is this times input_scale.
std::vector<double> input_gradient_normalized(const ModelParams& params,
                                              std::span<const double> input, Label label);

/// Minibatch SGD with momentum and seeded shuffling. Deterministic given
/// (params, data, cfg); the input params are not modified.
ModelParams train(const ModelParams& params, const Dataset& data, const TrainConfig& cfg);

/// First k entries of ranked_labels. Requires 1 <= k <= num_classes.
std::vector<Label> predict_topk(const ModelParams& params, const ImageTensor& image, int k);

/// Line-oriented text checkpoint ("ADVBENCH-CKPT 1" magic). Floats are
/// printed with 17 significant digits, so save/load round-trips bit-exactly.
std::string checkpoint_to_text(const ModelParams& params);
ModelParams checkpoint_from_text(const std::string& text);
void save_checkpoint(const ModelParams& params, const std::string& path);
ModelParams load_checkpoint(const std::string& path);

}  // namespace advbench
