#include "advbench/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "advbench/rng.hpp"

namespace advbench {

namespace {

void check_architecture(const Architecture& arch) {
  if (arch.layer_sizes.size() < 2) {
    throw ValueError("architecture needs at least input and output sizes");
  }
  for (const int size : arch.layer_sizes) {
    if (size <= 0) throw ValueError("architecture layer sizes must be positive");
  }
  if (arch.activation != "relu") {
    throw ValueError("unsupported activation tag: " + arch.activation);
  }
}

void check_params(const ModelParams& params) {
  check_architecture(params.arch);
  const std::size_t layers = params.arch.layer_sizes.size() - 1;
  if (params.weights.size() != layers || params.biases.size() != layers) {
    throw ValueError("parameter count does not match architecture");
  }
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = static_cast<std::size_t>(params.arch.layer_sizes[l]);
    const std::size_t out = static_cast<std::size_t>(params.arch.layer_sizes[l + 1]);
    if (params.weights[l].size() != in * out || params.biases[l].size() != out) {
      throw ValueError("layer " + std::to_string(l) + " has mismatched shapes");
    }
  }
}

void check_input_shape(const ModelParams& params, const ImageTensor& image) {
  const std::size_t dim = image.size();
  if (dim != static_cast<std::size_t>(params.input_dim())) {
    throw ShapeError("image size " + std::to_string(dim) + " does not match network input " +
                     std::to_string(params.input_dim()));
  }
}

void check_label(const ModelParams& params, Label label) {
  if (label.value < 0 || label.value >= params.num_classes()) {
    throw ValueError("label " + std::to_string(label.value) + " out of range");
  }
}

// Affine pass: out = W x + b.
void affine(std::span<const double> weights, std::span<const double> biases,
            std::span<const double> x, std::vector<double>& out) {
  const std::size_t rows = biases.size();
  const std::size_t cols = x.size();
  out.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = biases[r];
    const double* w = weights.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += w[c] * x[c];
    out[r] = acc;
  }
}

struct ForwardTrace {
  // activations[0] is the input; activations[l+1] the post-ReLU output of
  // hidden layer l; the final entry holds the logits.
  std::vector<std::vector<double>> activations;
  // pre_relu[l] is the preactivation of hidden layer l (needed for masks).
  std::vector<std::vector<double>> pre_relu;
};

ForwardTrace run_forward(const ModelParams& params, std::span<const double> input) {
  ForwardTrace trace;
  const std::size_t layers = params.weights.size();
  trace.activations.resize(layers + 1);
  trace.pre_relu.resize(layers > 0 ? layers - 1 : 0);
  trace.activations[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < layers; ++l) {
    std::vector<double> z;
    affine(params.weights[l], params.biases[l], trace.activations[l], z);
    if (l + 1 < layers) {
      trace.pre_relu[l] = z;
      for (double& v : z) v = v > 0.0 ? v : 0.0;
    }
    trace.activations[l + 1] = std::move(z);
  }
  return trace;
}

double log_sum_exp(std::span<const double> logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double acc = 0.0;
  for (const double v : logits) acc += std::exp(v - m);
  return m + std::log(acc);
}

Prediction prediction_from_logits(std::vector<double> logits) {
  Prediction pred;
  const double lse = log_sum_exp(logits);
  pred.probabilities.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    pred.probabilities[i] = std::exp(logits[i] - lse);
  }
  pred.logits = std::move(logits);
  pred.ranked_labels.resize(pred.probabilities.size());
  for (std::size_t i = 0; i < pred.ranked_labels.size(); ++i) {
    pred.ranked_labels[i] = Label{static_cast<int>(i)};
  }
  std::stable_sort(pred.ranked_labels.begin(), pred.ranked_labels.end(),
                   [&](Label a, Label b) {
                     return pred.probabilities[a.value] > pred.probabilities[b.value];
                   });
  return pred;
}

// Backpropagates dL/dlogits to dL/dinput (normalized scale).
std::vector<double> backprop_to_input(const ModelParams& params, const ForwardTrace& trace,
                                      std::vector<double> delta) {
  const std::size_t layers = params.weights.size();
  for (std::size_t l = layers; l-- > 0;) {
    const std::size_t in = trace.activations[l].size();
    const std::size_t out = delta.size();
    std::vector<double> prev(in, 0.0);
    const std::vector<double>& w = params.weights[l];
    for (std::size_t r = 0; r < out; ++r) {
      const double d = delta[r];
      if (d == 0.0) continue;
      const double* row = w.data() + r * in;
      for (std::size_t c = 0; c < in; ++c) prev[c] += d * row[c];
    }
    if (l > 0) {
      const std::vector<double>& z = trace.pre_relu[l - 1];
      for (std::size_t c = 0; c < in; ++c) {
        if (z[c] <= 0.0) prev[c] = 0.0;
      }
    }
    delta = std::move(prev);
  }
  return delta;
}

// dL/dlogits for cross-entropy over softmax: probabilities minus one-hot.
std::vector<double> softmax_delta(std::span<const double> logits, Label label) {
  const double lse = log_sum_exp(logits);
  std::vector<double> delta(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    delta[i] = std::exp(logits[i] - lse);
  }
  delta[static_cast<std::size_t>(label.value)] -= 1.0;
  return delta;
}

}  // namespace

Architecture reference_architecture() {
  return Architecture{{784, 256, 128, 10}, "relu"};
}

ModelParams init_model(std::uint64_t seed, const Architecture& arch, int num_classes) {
  check_architecture(arch);
  if (arch.output_dim() != num_classes) {
    throw ValueError("architecture output size " + std::to_string(arch.output_dim()) +
                     " does not match num_classes " + std::to_string(num_classes));
  }
  ModelParams params;
  params.arch = arch;
  const std::uint64_t base = mix64(seed);
  const std::size_t layers = arch.layer_sizes.size() - 1;
  params.weights.resize(layers);
  params.biases.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t fan_in = static_cast<std::size_t>(arch.layer_sizes[l]);
    const std::size_t fan_out = static_cast<std::size_t>(arch.layer_sizes[l + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    params.weights[l].resize(fan_in * fan_out);
    const std::uint64_t key = counter_hash(base, l);
    for (std::size_t i = 0; i < params.weights[l].size(); ++i) {
      const double u = unit_double(counter_hash(key, i));
      params.weights[l][i] = (2.0 * u - 1.0) * limit;
    }
    params.biases[l].assign(fan_out, 0.0);
  }
  return params;
}

std::vector<double> normalized_input(const ModelParams& params, const ImageTensor& image) {
  check_input_shape(params, image);
  std::vector<double> x(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    x[i] = static_cast<double>(image[i]) * params.input_scale + params.input_offset;
  }
  return x;
}

Prediction forward_normalized(const ModelParams& params, std::span<const double> input) {
  check_params(params);
  if (input.size() != static_cast<std::size_t>(params.input_dim())) {
    throw ShapeError("input vector does not match network input size");
  }
  ForwardTrace trace = run_forward(params, input);
  return prediction_from_logits(std::move(trace.activations.back()));
}

Prediction forward(const ModelParams& params, const ImageTensor& image) {
  return forward_normalized(params, normalized_input(params, image));
}

double loss_normalized(const ModelParams& params, std::span<const double> input, Label label) {
  check_params(params);
  check_label(params, label);
  if (input.size() != static_cast<std::size_t>(params.input_dim())) {
    throw ShapeError("input vector does not match network input size");
  }
  ForwardTrace trace = run_forward(params, input);
  const std::vector<double>& logits = trace.activations.back();
  return log_sum_exp(logits) - logits[static_cast<std::size_t>(label.value)];
}

double loss(const ModelParams& params, const ImageTensor& image, Label label) {
  return loss_normalized(params, normalized_input(params, image), label);
}

std::vector<double> input_gradient_normalized(const ModelParams& params,
                                              std::span<const double> input, Label label) {
  check_params(params);
  check_label(params, label);
  if (input.size() != static_cast<std::size_t>(params.input_dim())) {
    throw ShapeError("input vector does not match network input size");
  }
  ForwardTrace trace = run_forward(params, input);
  std::vector<double> delta = softmax_delta(trace.activations.back(), label);
  return backprop_to_input(params, trace, std::move(delta));
}

GradientImage input_gradient(const ModelParams& params, const ImageTensor& image, Label label) {
  std::vector<double> grad =
      input_gradient_normalized(params, normalized_input(params, image), label);
  for (double& g : grad) g *= params.input_scale;
  return GradientImage(image.width(), image.height(), image.channels(), std::move(grad));
}

ModelParams train(const ModelParams& params, const Dataset& data, const TrainConfig& cfg) {
  check_params(params);
  if (data.images.empty()) throw ValueError("train: dataset is empty");
  validate(data);
  if (data.num_classes > params.num_classes()) {
    throw ValueError("train: dataset has more classes than the model");
  }
  check_input_shape(params, data.images.front());
  if (cfg.epochs < 0) throw ValueError("train: epochs must be >= 0");
  if (cfg.batch_size <= 0) throw ValueError("train: batch_size must be positive");
  if (cfg.learning_rate <= 0.0) throw ValueError("train: learning_rate must be positive");
  if (cfg.momentum < 0.0 || cfg.momentum >= 1.0) {
    throw ValueError("train: momentum must be in [0, 1)");
  }

  ModelParams model = params;
  const std::size_t layers = model.weights.size();

  // Normalized inputs are reused across epochs.
  std::vector<std::vector<double>> inputs;
  inputs.reserve(data.size());
  for (const ImageTensor& image : data.images) {
    inputs.push_back(normalized_input(model, image));
  }

  std::vector<std::vector<double>> weight_vel(layers), bias_vel(layers);
  std::vector<std::vector<double>> weight_grad(layers), bias_grad(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    weight_vel[l].assign(model.weights[l].size(), 0.0);
    bias_vel[l].assign(model.biases[l].size(), 0.0);
    weight_grad[l].resize(model.weights[l].size());
    bias_grad[l].resize(model.biases[l].size());
  }

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  const std::uint64_t shuffle_base = derive_key(cfg.seed, "train-shuffle");

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    SeqRng shuffle_rng(counter_hash(shuffle_base, static_cast<std::uint64_t>(epoch)));
    shuffle_rng.shuffle(order);

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      for (std::size_t l = 0; l < layers; ++l) {
        std::fill(weight_grad[l].begin(), weight_grad[l].end(), 0.0);
        std::fill(bias_grad[l].begin(), bias_grad[l].end(), 0.0);
      }

      for (std::size_t pos = start; pos < end; ++pos) {
        const std::size_t idx = order[pos];
        ForwardTrace trace = run_forward(model, inputs[idx]);
        std::vector<double> delta =
            softmax_delta(trace.activations.back(), data.labels[idx]);

        for (std::size_t l = layers; l-- > 0;) {
          const std::vector<double>& x = trace.activations[l];
          std::vector<double>& gw = weight_grad[l];
          std::vector<double>& gb = bias_grad[l];
          const std::size_t in = x.size();
          for (std::size_t r = 0; r < delta.size(); ++r) {
            const double d = delta[r];
            gb[r] += d;
            if (d == 0.0) continue;
            double* grow = gw.data() + r * in;
            for (std::size_t c = 0; c < in; ++c) grow[c] += d * x[c];
          }
          if (l == 0) break;
          std::vector<double> prev(in, 0.0);
          const std::vector<double>& w = model.weights[l];
          for (std::size_t r = 0; r < delta.size(); ++r) {
            const double d = delta[r];
            if (d == 0.0) continue;
            const double* row = w.data() + r * in;
            for (std::size_t c = 0; c < in; ++c) prev[c] += d * row[c];
          }
          const std::vector<double>& z = trace.pre_relu[l - 1];
          for (std::size_t c = 0; c < in; ++c) {
            if (z[c] <= 0.0) prev[c] = 0.0;
          }
          delta = std::move(prev);
        }
      }

      for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t i = 0; i < model.weights[l].size(); ++i) {
          weight_vel[l][i] = cfg.momentum * weight_vel[l][i] -
                             cfg.learning_rate * weight_grad[l][i] * inv_batch;
          model.weights[l][i] += weight_vel[l][i];
        }
        for (std::size_t i = 0; i < model.biases[l].size(); ++i) {
          bias_vel[l][i] = cfg.momentum * bias_vel[l][i] -
                           cfg.learning_rate * bias_grad[l][i] * inv_batch;
          model.biases[l][i] += bias_vel[l][i];
        }
      }
    }
  }
  return model;
}

std::vector<Label> predict_topk(const ModelParams& params, const ImageTensor& image, int k) {
  if (k < 1 || k > params.num_classes()) {
    throw ValueError("predict_topk: k out of range");
  }
  const Prediction pred = forward(params, image);
  return std::vector<Label>(pred.ranked_labels.begin(), pred.ranked_labels.begin() + k);
}

std::string checkpoint_to_text(const ModelParams& params) {
  check_params(params);
  std::ostringstream out;
  out << "ADVBENCH-CKPT 1\n";
  out << "arch " << params.arch.activation;
  for (const int size : params.arch.layer_sizes) out << ' ' << size;
  out << '\n';
  char buf[64];
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  out << "norm ";
  put(params.input_scale);
  out << ' ';
  put(params.input_offset);
  out << '\n';
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    const std::size_t in = static_cast<std::size_t>(params.arch.layer_sizes[l]);
    const std::size_t out_dim = static_cast<std::size_t>(params.arch.layer_sizes[l + 1]);
    out << "layer " << l << ' ' << out_dim << ' ' << in << '\n';
    for (std::size_t r = 0; r < out_dim; ++r) {
      for (std::size_t c = 0; c < in; ++c) {
        if (c) out << ' ';
        put(params.weights[l][r * in + c]);
      }
      out << '\n';
    }
    out << "bias " << l << ' ' << out_dim << '\n';
    for (std::size_t r = 0; r < out_dim; ++r) {
      if (r) out << ' ';
      put(params.biases[l][r]);
    }
    out << '\n';
  }
  return out.str();
}

ModelParams checkpoint_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "ADVBENCH-CKPT 1") {
    throw ParseError("checkpoint: bad magic line");
  }
  std::string tag;
  if (!(in >> tag) || tag != "arch") throw ParseError("checkpoint: missing arch line");
  ModelParams params;
  if (!(in >> params.arch.activation)) throw ParseError("checkpoint: missing activation");
  {
    std::getline(in, line);
    std::istringstream sizes(line);
    int size = 0;
    while (sizes >> size) params.arch.layer_sizes.push_back(size);
  }
  check_architecture(params.arch);
  if (!(in >> tag) || tag != "norm") throw ParseError("checkpoint: missing norm line");
  if (!(in >> params.input_scale >> params.input_offset)) {
    throw ParseError("checkpoint: malformed norm line");
  }

  const std::size_t layers = params.arch.layer_sizes.size() - 1;
  params.weights.resize(layers);
  params.biases.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    std::size_t idx = 0, rows = 0, cols = 0;
    if (!(in >> tag >> idx >> rows >> cols) || tag != "layer" || idx != l) {
      throw ParseError("checkpoint: malformed layer header");
    }
    const std::size_t expect_in = static_cast<std::size_t>(params.arch.layer_sizes[l]);
    const std::size_t expect_out = static_cast<std::size_t>(params.arch.layer_sizes[l + 1]);
    if (rows != expect_out || cols != expect_in) {
      throw ParseError("checkpoint: layer dimensions disagree with arch");
    }
    params.weights[l].resize(rows * cols);
    for (double& v : params.weights[l]) {
      if (!(in >> v)) throw ParseError("checkpoint: truncated weights");
    }
    if (!(in >> tag >> idx >> rows) || tag != "bias" || idx != l || rows != expect_out) {
      throw ParseError("checkpoint: malformed bias header");
    }
    params.biases[l].resize(rows);
    for (double& v : params.biases[l]) {
      if (!(in >> v)) throw ParseError("checkpoint: truncated biases");
    }
  }
  check_params(params);
  return params;
}

void save_checkpoint(const ModelParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  const std::string text = checkpoint_to_text(params);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("short write to checkpoint: " + path);
}

ModelParams load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return checkpoint_from_text(text);
}

}  // namespace advbench
