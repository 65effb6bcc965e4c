#include "casecrit/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "casecrit/io.hpp"
#include "casecrit/random.hpp"

namespace casecrit {

namespace {

constexpr std::string_view kCheckpointMagic = "casecrit-checkpoint 1";

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = line.find(' ', i);
    if (j == std::string_view::npos) j = line.size();
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

LinearHead::LinearHead(std::size_t num_classes, std::size_t dim)
    : classes_(num_classes),
      dim_(dim),
      weights_(num_classes * dim, 0.0),
      bias_(num_classes, 0.0) {
  if (num_classes < 2) throw std::invalid_argument("head needs >= 2 classes");
  if (dim == 0) throw std::invalid_argument("head dimension must be positive");
}

LinearHead LinearHead::random(std::size_t num_classes, std::size_t dim,
                              std::uint64_t seed) {
  LinearHead head(num_classes, dim);
  Rng rng(seed);
  const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
  for (double& w : head.weights_) w = rng.uniform(-bound, bound);
  return head;
}

Vector forward(const LinearHead& head, std::span<const double> x) {
  if (x.size() != head.dim()) {
    throw DataError("input has dimension " + std::to_string(x.size()) +
                    ", head expects " + std::to_string(head.dim()));
  }
  Vector logits(head.bias().begin(), head.bias().end());
  const auto w = head.weights();
  for (std::size_t c = 0; c < head.num_classes(); ++c) {
    const double* row = w.data() + c * head.dim();
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += row[k] * x[k];
    logits[c] += acc;
  }
  return logits;
}

Vector softmax(std::span<const double> logits) {
  Vector p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double m = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

std::size_t argmax(std::span<const double> logits) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < logits.size(); ++i) {
    if (logits[i] > logits[best]) best = i;
  }
  return best;
}

ClassLabel predict(const LinearHead& head, std::span<const double> x) {
  return ClassLabel(argmax(forward(head, x)));
}

std::string serialize_checkpoint(const Checkpoint& checkpoint) {
  const LinearHead& head = checkpoint.head;
  const LossConfig& loss = checkpoint.loss;
  std::string out(kCheckpointMagic);
  out += "\nclasses " + std::to_string(head.num_classes());
  out += "\ndim " + std::to_string(head.dim());
  out += "\nseed " + std::to_string(checkpoint.seed);
  out += "\nloss " + loss_kind_name(loss.kind);
  if (loss.kind == LossKind::kOppositeClassWeighted) {
    out += ' ' + io::format_double(loss.opposite_class_weight);
    out += loss.literal_sign ? " literal" : " negated";
  }
  out += "\nbias";
  for (double b : head.bias()) out += ' ' + io::format_double(b);
  for (std::size_t c = 0; c < head.num_classes(); ++c) {
    out += "\nweights";
    for (std::size_t k = 0; k < head.dim(); ++k) {
      out += ' ' + io::format_double(head.weight(c, k));
    }
  }
  out += '\n';
  return out;
}

Checkpoint parse_checkpoint(std::string_view text) {
  const auto lines = io::split_lines(text);
  auto expect = [&](std::size_t n, std::string_view key) {
    if (n >= lines.size()) {
      throw DataError("checkpoint truncated before '" + std::string(key) + "'");
    }
    auto f = fields_of(lines[n]);
    if (f.empty() || f[0] != key) {
      throw DataError("checkpoint line " + std::to_string(n + 1) +
                      ": expected '" + std::string(key) + "'");
    }
    return f;
  };
  if (lines.empty() || lines[0] != kCheckpointMagic) {
    throw DataError("not a casecrit checkpoint");
  }
  auto one_value = [](const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw DataError("malformed checkpoint header");
    return parse_u64(f[1]);
  };
  const std::size_t classes = one_value(expect(1, "classes"));
  const std::size_t dim = one_value(expect(2, "dim"));
  if (classes < 2 || dim == 0) throw DataError("invalid checkpoint shape");
  const std::uint64_t seed = one_value(expect(3, "seed"));

  LossConfig loss;
  auto lf = expect(4, "loss");
  if (lf.size() == 2 && lf[1] == "cross_entropy") {
    loss = LossConfig::cross_entropy();
  } else if (lf.size() == 4 && lf[1] == "opposite_class_weighted" &&
             (lf[3] == "negated" || lf[3] == "literal")) {
    loss = LossConfig::opposite_class_weighted(io::parse_double(lf[2]));
    loss.literal_sign = lf[3] == "literal";
  } else {
    throw DataError("malformed checkpoint loss line");
  }

  Checkpoint cp{LinearHead(classes, dim), seed, loss};
  auto bf = expect(5, "bias");
  if (bf.size() != classes + 1) throw DataError("checkpoint bias length");
  for (std::size_t c = 0; c < classes; ++c) {
    cp.head.bias()[c] = io::parse_double(bf[c + 1]);
  }
  for (std::size_t c = 0; c < classes; ++c) {
    auto wf = expect(6 + c, "weights");
    if (wf.size() != dim + 1) {
      throw DataError("checkpoint weight row " + std::to_string(c) +
                      " has wrong length");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      cp.head.weight(c, k) = io::parse_double(wf[k + 1]);
    }
  }
  if (lines.size() != 6 + classes) {
    throw DataError("trailing data after checkpoint weights");
  }
  return cp;
}

void write_checkpoint(const std::filesystem::path& path,
                      const Checkpoint& checkpoint) {
  io::write_file_atomic(path, serialize_checkpoint(checkpoint));
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_checkpoint(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace casecrit
