#pragma once

// JSON file formats. Exact scalars travel as strings ("p/q", or "p/q+r/si"
// for Gaussian rationals); floating scalars travel as numbers, or [re, im]
// pairs when complex.
//
//   first-order data  {"q": [["p/q", ...], ...], "phi": {"1,2,3": "p/q", ...}}
//   representation    {"order": N, "gens": {"a": [[c00, c01], [c10, c11]], ...}}
//                     where each c is an array of coefficients of t^0, t^1, ...
//   trace triple      {"order": N, "x": [...], "y": [...], "z": [...]}

#include "chartan/errors.hpp"
#include "chartan/exterior.hpp"
#include "chartan/jets.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace chartan {

using Json = nlohmann::ordered_json;

Json load_json(const std::string& path);

/// phi keys are 1-based generator indices; a permuted triple contributes
/// with the sign of the permutation, a repeated index is rejected.
struct FirstOrderData {
  RationalMatrix q;
  Lambda3Form phi;
};

FirstOrderData parse_first_order(const Json& j);
Json to_json(const FirstOrderData& data);

enum class ScalarMode { kRational, kGaussian, kFloating };
std::string to_string(ScalarMode mode);

/// Looks at every scalar leaf below `j` and picks the narrowest mode.
ScalarMode detect_mode(const Json& j);

template <class S>
S scalar_from_json(const Json& j);
template <>
Rational scalar_from_json<Rational>(const Json& j);
template <>
GaussianRational scalar_from_json<GaussianRational>(const Json& j);
template <>
Complex scalar_from_json<Complex>(const Json& j);

Json scalar_to_json(const Rational& x);
Json scalar_to_json(const GaussianRational& x);
Json scalar_to_json(const Complex& x);

int read_order(const Json& j);

template <class S>
Series<S> series_from_json(const Json& j, int precision) {
  if (!j.is_array()) throw InputError("expected an array of series coefficients");
  std::vector<S> coeffs;
  for (const auto& c : j) coeffs.push_back(scalar_from_json<S>(c));
  return Series<S>::from_coefficients(std::move(coeffs)).truncated(precision);
}

template <class S>
Json series_to_json(const Series<S>& s) {
  Json out = Json::array();
  if (s.is_zero() && s.exact()) return Json::array({scalar_to_json(S(0))});
  if (s.valuation() < 0) throw PreconditionError("series_to_json: negative powers have no JSON form");
  const int hi = s.exact() ? s.last_degree() : s.precision() - 1;
  for (int k = 0; k <= hi; ++k) out.push_back(scalar_to_json(s.coefficient(k)));
  return out;
}

template <class S>
Json matrix_to_json(const Mat2<S>& m) {
  return Json::array({Json::array({series_to_json(m(0, 0)), series_to_json(m(0, 1))}),
                      Json::array({series_to_json(m(1, 0)), series_to_json(m(1, 1))})});
}

template <class S>
struct RepresentationData {
  int order = 0;
  std::vector<std::string> names;
  std::vector<Mat2<S>> gens;
};

template <class S>
RepresentationData<S> parse_representation(const Json& j) {
  RepresentationData<S> out;
  out.order = read_order(j);
  if (!j.contains("gens") || !j["gens"].is_object() || j["gens"].empty())
    throw InputError("representation: \"gens\" must be a non-empty object");
  for (const auto& [name, value] : j["gens"].items()) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_array() || value[0].size() != 2 ||
        !value[1].is_array() || value[1].size() != 2)
      throw InputError("representation: generator '" + name + "' is not a 2x2 array");
    Mat2<S> m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = series_from_json<S>(value[r][c], out.order + 1);
    out.names.push_back(name);
    out.gens.push_back(m);
  }
  return out;
}

template <class S>
Json to_json(const RepresentationData<S>& rep) {
  Json gens = Json::object();
  for (std::size_t i = 0; i < rep.gens.size(); ++i) gens[rep.names[i]] = matrix_to_json(rep.gens[i]);
  return Json{{"order", rep.order}, {"gens", gens}};
}

template <class S>
struct TraceTriple {
  int order = 0;
  Series<S> x, y, z;
};

template <class S>
TraceTriple<S> parse_trace_triple(const Json& j) {
  TraceTriple<S> out;
  out.order = read_order(j);
  for (const char* key : {"x", "y", "z"})
    if (!j.contains(key)) throw InputError(std::string("trace triple: missing \"") + key + "\"");
  out.x = series_from_json<S>(j["x"], out.order + 1);
  out.y = series_from_json<S>(j["y"], out.order + 1);
  out.z = series_from_json<S>(j["z"], out.order + 1);
  return out;
}

}  // namespace chartan
