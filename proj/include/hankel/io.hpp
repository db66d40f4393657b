#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hankel/errors.hpp"
#include "hankel/hankel_tensor.hpp"

namespace hankel {

/// Optional provenance carried alongside a tensor file.  Generators with
/// planted structure record their ground truth here so recovery runs can
/// score themselves.
struct TensorMetadata {
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  std::optional<Eigen::VectorXd> poles;
  std::optional<Eigen::VectorXd> alphas;
  std::optional<double> alpha_inf;

  bool empty() const {
    return !name && !seed && !poles && !alphas && !alpha_inf;
  }
};

/// On-disk tensor representation:
/// {"order": int, "dim": int, "generator": [float, ...]} plus an optional
/// "metadata" object.  Loading enforces the generator length contract.
struct TensorFile {
  int order = 0;
  int dim = 0;
  Eigen::VectorXd generator;
  TensorMetadata metadata;

  HankelTensor tensor() const { return make_hankel(generator, order, dim); }
};

namespace detail {

/// Shortest decimal form that round-trips the double exactly: 17
/// significant digits.  Non-finite values must never reach a JSON file.
inline std::string json_number(double v) {
  if (!std::isfinite(v))
    throw structure_error("refusing to serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void append_json_array(std::string& out, const Eigen::VectorXd& v) {
  out += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += json_number(v[i]);
  }
  out += ']';
}

inline Eigen::VectorXd parse_vector(const nlohmann::json& arr,
                                    const char* field) {
  if (!arr.is_array())
    throw structure_error(std::string("tensor file field '") + field +
                          "' must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& item : arr) {
    if (!item.is_number())
      throw structure_error(std::string("tensor file field '") + field +
                            "' must contain only numbers");
    v[i++] = item.get<double>();
  }
  return v;
}

}  // namespace detail

/// Serializes a TensorFile to its canonical JSON text.
inline std::string tensor_file_json(const TensorFile& tf) {
  std::string out;
  out += "{\n  \"order\": " + std::to_string(tf.order);
  out += ",\n  \"dim\": " + std::to_string(tf.dim);
  out += ",\n  \"generator\": ";
  detail::append_json_array(out, tf.generator);
  if (!tf.metadata.empty()) {
    out += ",\n  \"metadata\": {";
    bool first = true;
    const auto sep = [&] {
      if (!first) out += ", ";
      first = false;
    };
    if (tf.metadata.name) {
      sep();
      out += "\"name\": \"" + *tf.metadata.name + "\"";
    }
    if (tf.metadata.seed) {
      sep();
      out += "\"seed\": " + std::to_string(*tf.metadata.seed);
    }
    if (tf.metadata.poles) {
      sep();
      out += "\"poles\": ";
      detail::append_json_array(out, *tf.metadata.poles);
    }
    if (tf.metadata.alphas) {
      sep();
      out += "\"alphas\": ";
      detail::append_json_array(out, *tf.metadata.alphas);
    }
    if (tf.metadata.alpha_inf) {
      sep();
      out += "\"alpha_inf\": " + detail::json_number(*tf.metadata.alpha_inf);
    }
    out += "}";
  }
  out += "\n}\n";
  return out;
}

/// Parses TensorFile JSON text, enforcing the generator length contract
/// m(n-1)+1 before returning.
inline TensorFile parse_tensor_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw structure_error(std::string("tensor file is not valid JSON: ") +
                          e.what());
  }
  if (!j.is_object())
    throw structure_error("tensor file must be a JSON object");
  for (const char* field : {"order", "dim", "generator"})
    if (!j.contains(field))
      throw structure_error(std::string("tensor file is missing field '") +
                            field + "'");
  if (!j["order"].is_number_integer() || !j["dim"].is_number_integer())
    throw structure_error("tensor file fields 'order' and 'dim' must be integers");

  TensorFile tf;
  tf.order = j["order"].get<int>();
  tf.dim = j["dim"].get<int>();
  tf.generator = detail::parse_vector(j["generator"], "generator");

  if (tf.order < 1 || tf.dim < 1)
    throw dimension_error("tensor file order and dim must be positive");
  const Eigen::Index expected =
      static_cast<Eigen::Index>(tf.order) * (tf.dim - 1) + 1;
  if (tf.generator.size() != expected)
    throw dimension_error(
        "tensor file generator has length " +
        std::to_string(tf.generator.size()) + " but order " +
        std::to_string(tf.order) + " and dim " + std::to_string(tf.dim) +
        " require m(n-1)+1 = " + std::to_string(expected));

  if (j.contains("metadata")) {
    const nlohmann::json& md = j["metadata"];
    if (!md.is_object())
      throw structure_error("tensor file 'metadata' must be an object");
    if (md.contains("name")) tf.metadata.name = md["name"].get<std::string>();
    if (md.contains("seed"))
      tf.metadata.seed = md["seed"].get<std::uint64_t>();
    if (md.contains("poles"))
      tf.metadata.poles = detail::parse_vector(md["poles"], "poles");
    if (md.contains("alphas"))
      tf.metadata.alphas = detail::parse_vector(md["alphas"], "alphas");
    if (md.contains("alpha_inf"))
      tf.metadata.alpha_inf = md["alpha_inf"].get<double>();
  }
  return tf;
}

/// Reads and validates a tensor file from disk.
inline TensorFile read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw structure_error("cannot open tensor file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tensor_file(buf.str());
}

/// Writes the canonical JSON form to disk.
inline void write_tensor_file(const std::string& path, const TensorFile& tf) {
  std::ofstream out(path);
  if (!out)
    throw structure_error("cannot write tensor file '" + path + "'");
  out << tensor_file_json(tf);
  if (!out)
    throw structure_error("failed writing tensor file '" + path + "'");
}

}  // namespace hankel
