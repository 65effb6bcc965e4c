#ifndef CASECRIT_MODEL_HPP_
#define CASECRIT_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "casecrit/core.hpp"
#include "casecrit/loss.hpp"

namespace casecrit {

// Dense classification head: logits = weights * x + bias.
class LinearHead {
 public:
  // Zero-initialized. Throws std::invalid_argument for classes < 2 or dim 0.
  LinearHead(std::size_t num_classes, std::size_t dim);

  // Uniform in [-1/sqrt(dim), 1/sqrt(dim)], bias zero.
  static LinearHead random(std::size_t num_classes, std::size_t dim,
                           std::uint64_t seed);

  std::size_t num_classes() const { return classes_; }
  std::size_t dim() const { return dim_; }

  double& weight(std::size_t c, std::size_t k) { return weights_[c * dim_ + k]; }
  double weight(std::size_t c, std::size_t k) const {
    return weights_[c * dim_ + k];
  }
  std::span<double> weights() { return weights_; }
  std::span<const double> weights() const { return weights_; }
  std::span<double> bias() { return bias_; }
  std::span<const double> bias() const { return bias_; }

  friend bool operator==(const LinearHead&, const LinearHead&) = default;

 private:
  std::size_t classes_;
  std::size_t dim_;
  Vector weights_;  // row-major classes_ x dim_
  Vector bias_;
};

// Throws DataError when x.size() != head.dim().
Vector forward(const LinearHead& head, std::span<const double> x);

// Max-subtracted softmax.
Vector softmax(std::span<const double> logits);

// Index of the largest logit; ties go to the lowest index.
std::size_t argmax(std::span<const double> logits);

ClassLabel predict(const LinearHead& head, std::span<const double> x);

struct Checkpoint {
  LinearHead head;
  std::uint64_t seed = 0;
  LossConfig loss;
};

std::string serialize_checkpoint(const Checkpoint& checkpoint);
Checkpoint parse_checkpoint(std::string_view text);
void write_checkpoint(const std::filesystem::path& path,
                      const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace casecrit

#endif  // CASECRIT_MODEL_HPP_
