#include "chartan/io.hpp"

#include <fstream>
#include <sstream>

namespace chartan {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace {

Rational rational_leaf(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InputError("expected a rational as a \"p/q\" string, got " + j.dump());
}

std::vector<int> parse_triple_key(const std::string& key, int n) {
  std::vector<int> idx;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      idx.push_back(v - 1);
    } catch (const std::logic_error&) {
      throw InputError("phi key '" + key + "' is not of the form \"i,j,k\"");
    }
  }
  if (idx.size() != 3) throw InputError("phi key '" + key + "' must name three indices");
  for (int v : idx)
    if (v < 0 || v >= n) throw InputError("phi key '" + key + "' has an index outside 1.." + std::to_string(n));
  if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2])
    throw InputError("phi key '" + key + "' repeats an index");
  return idx;
}

}  // namespace

FirstOrderData parse_first_order(const Json& j) {
  if (!j.is_object() || !j.contains("q") || !j["q"].is_array())
    throw InputError("first-order data: \"q\" must be an array of rows");
  const auto& rows = j["q"];
  const int n = static_cast<int>(rows.size());
  FirstOrderData out{RationalMatrix(n, n), Lambda3Form::Zero(triple_count(n))};
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
      throw InputError("first-order data: \"q\" must be square");
    for (int c = 0; c < n; ++c) out.q(r, c) = rational_leaf(rows[r][c]);
  }
  if (out.q != out.q.transpose()) throw InputError("first-order data: \"q\" must be symmetric");
  if (j.contains("phi")) {
    if (!j["phi"].is_object()) throw InputError("first-order data: \"phi\" must be an object");
    for (const auto& [key, value] : j["phi"].items()) {
      std::vector<int> idx = parse_triple_key(key, n);
      // Sort to increasing order, tracking the sign of the permutation.
      int sign = 1;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b + 1 < 3 - a; ++b)
          if (idx[b] > idx[b + 1]) {
            std::swap(idx[b], idx[b + 1]);
            sign = -sign;
          }
      out.phi(triple_index(n, idx[0], idx[1], idx[2])) += Rational(sign) * rational_leaf(value);
    }
  }
  return out;
}

Json to_json(const FirstOrderData& data) {
  const int n = static_cast<int>(data.q.rows());
  Json q = Json::array();
  for (int r = 0; r < n; ++r) {
    Json row = Json::array();
    for (int c = 0; c < n; ++c) row.push_back(to_string(data.q(r, c)));
    q.push_back(row);
  }
  Json phi = Json::object();
  for (const auto& [i, j, k] : increasing_triples(n)) {
    const Rational& v = data.phi(triple_index(n, i, j, k));
    if (v != 0) phi[std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1)] = to_string(v);
  }
  return Json{{"q", q}, {"phi", phi}};
}

std::string to_string(ScalarMode mode) {
  switch (mode) {
    case ScalarMode::kRational: return "exact";
    case ScalarMode::kGaussian: return "exact-gaussian";
    case ScalarMode::kFloating: return "floating";
  }
  return "?";
}

ScalarMode detect_mode(const Json& j) {
  bool strings = false, floating = false, gaussian = false;
  auto visit = [&](const Json& node, auto&& self) -> void {
    if (node.is_array()) {
      for (const auto& child : node) self(child, self);
    } else if (node.is_object()) {
      for (const auto& [key, child] : node.items())
        if (key != "order") self(child, self);
    } else if (node.is_string()) {
      strings = true;
      if (node.get<std::string>().find('i') != std::string::npos) gaussian = true;
    } else if (node.is_number_float()) {
      floating = true;
    }
  };
  visit(j, visit);
  if (strings && floating) throw InputError("input mixes exact strings and floating numbers");
  if (floating) return ScalarMode::kFloating;
  return gaussian ? ScalarMode::kGaussian : ScalarMode::kRational;
}

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  return rational_leaf(j);
}

template <>
GaussianRational scalar_from_json<GaussianRational>(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_gaussian(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  return {rational_leaf(j)};
}

template <>
Complex scalar_from_json<Complex>(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("expected a number or a [re, im] pair, got " + j.dump());
}

Json scalar_to_json(const Rational& x) { return to_string(x); }
Json scalar_to_json(const GaussianRational& x) { return to_string(x); }
Json scalar_to_json(const Complex& x) {
  if (x.imag() == 0.0) return x.real();
  return Json::array({x.real(), x.imag()});
}

int read_order(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j["order"].is_number_integer())
    throw InputError("missing integer \"order\"");
  const int order = j["order"].get<int>();
  if (order < 0 || order > 64) throw InputError("\"order\" must be in 0..64");
  return order;
}

}  // namespace chartan
