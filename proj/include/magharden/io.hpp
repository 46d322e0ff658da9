#ifndef MAGHARDEN_IO_HPP
#define MAGHARDEN_IO_HPP

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "magharden/field2d.hpp"
#include "magharden/hardy.hpp"

// JSON wire formats:
//   CirclePotential  {"n": N, "fourier": [[k, re, im], ...]}
//                 or {"samples": [[re, im], ...]}
//   ComplexField2D   {"components": [{"kind": "...", "center": [x, y],
//                     "scale": s, "amplitude": [re, im]}, ...]}
// FluxProfile and LambdaCurve go out as CSV.

namespace magharden {

using json = nlohmann::json;

inline CirclePotential potential_from_json(const json& j) {
  if (j.contains("samples")) {
    std::vector<complex> s;
    for (const auto& v : j.at("samples"))
      s.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return CirclePotential::from_samples(std::move(s));
  }
  if (j.contains("fourier")) {
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, complex>> coeffs;
    for (const auto& v : j.at("fourier"))
      coeffs.emplace_back(v.at(0).get<int>(),
                          complex(v.at(1).get<double>(), v.at(2).get<double>()));
    return CirclePotential::from_fourier(n, coeffs);
  }
  throw InvalidInput("potential JSON needs \"samples\" or \"fourier\"");
}

inline json potential_to_json(const CirclePotential& a) {
  json j;
  j["n"] = a.n();
  json f = json::array();
  for (int k = -a.k_max(); k <= a.k_max(); ++k) {
    const complex c = a.coeff(k);
    if (std::abs(c) > 1e-15) f.push_back({k, c.real(), c.imag()});
  }
  j["fourier"] = f;
  return j;
}

inline ComplexField2D field_from_json(const json& j) {
  std::vector<FieldComponent> comps;
  for (const auto& cj : j.at("components")) {
    FieldComponent c;
    const std::string kind = cj.at("kind").get<std::string>();
    if (kind == "gaussian") c.kind = FieldComponent::Kind::gaussian;
    else if (kind == "compact_bump") c.kind = FieldComponent::Kind::compact_bump;
    else if (kind == "disk_constant") c.kind = FieldComponent::Kind::disk_constant;
    else throw InvalidInput("unknown field component kind: " + kind);
    if (cj.contains("center"))
      c.center = {cj.at("center").at(0).get<double>(),
                  cj.at("center").at(1).get<double>()};
    c.scale = cj.value("scale", 1.0);
    if (cj.contains("amplitude"))
      c.amplitude = complex(cj.at("amplitude").at(0).get<double>(),
                            cj.at("amplitude").at(1).get<double>());
    comps.push_back(c);
  }
  return ComplexField2D(std::move(comps));
}

inline json estimate_to_json(const HardyEstimate& est) {
  json j;
  switch (est.kind) {
    case HardyEstimate::Kind::compact_c: j["kind"] = "compact_c"; break;
    case HardyEstimate::Kind::log_c_tilde: j["kind"] = "log_c_tilde"; break;
    case HardyEstimate::Kind::ab_c_inf: j["kind"] = "ab_c_inf"; break;
    case HardyEstimate::Kind::robust_c_hat: j["kind"] = "robust_c_hat"; break;
  }
  j["constant"] = est.constant;
  j["ledger"] = est.ledger;
  return j;
}

inline void curve_to_csv(const LambdaCurve& curve, std::ostream& os) {
  os << "r,lambda,mean_re,mean_im,converged\n";
  for (size_t i = 0; i < curve.radii.size(); ++i)
    os << curve.radii[i] << ',' << curve.lambda[i] << ',' << curve.mean_re[i]
       << ',' << curve.mean_im[i] << ',' << (curve.converged[i] ? 1 : 0) << '\n';
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidInput("JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace magharden

#endif
