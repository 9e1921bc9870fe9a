#include "wchi/io.hpp"

#include <string>

namespace wchi {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(where + ": missing field '" + name + "'");
  return *it;
}

int int_field(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number_integer()) throw FormatError(where + "." + name + ": expected an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw FormatError(where + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

SymmetricKernel load_kernel(int order, int dim, const json& coeffs, const std::string& where) {
  if (order < 0) throw FormatError(where + ".order: must be >= 0");
  if (dim < 1) throw FormatError(where + ".dim: must be >= 1");
  std::vector<double> c = number_list(coeffs, where + ".coeffs");
  Tensor t(order, dim);
  if (c.size() != t.size()) {
    throw FormatError(where + ".coeffs: expected " + std::to_string(t.size()) + " entries, got " +
                      std::to_string(c.size()));
  }
  try {
    return SymmetricKernel::from_symmetric(Tensor(order, dim, std::move(c)));
  } catch (const FormatError& e) {
    throw FormatError(where + ": " + e.what());
  }
}

}  // namespace

json to_json(const SymmetricKernel& f) {
  return {{"order", f.order()},
          {"dim", f.dim()},
          {"coeffs", std::vector<double>(f.coeffs().begin(), f.coeffs().end())}};
}

SymmetricKernel kernel_from_json(const json& j) {
  return load_kernel(int_field(j, "order", "kernel"), int_field(j, "dim", "kernel"),
                     field(j, "coeffs", "kernel"), "kernel");
}

json to_json(const ChaosExpansion& f) {
  json kernels = json::array();
  for (const auto& [q, fq] : f.kernels()) {
    kernels.push_back({{"order", q}, {"coeffs", std::vector<double>(fq.coeffs().begin(), fq.coeffs().end())}});
  }
  return {{"dim", f.dim()}, {"kernels", kernels}};
}

ChaosExpansion chaos_from_json(const json& j) {
  const int dim = int_field(j, "dim", "chaos");
  if (dim < 1) throw FormatError("chaos.dim: must be >= 1");
  const json& ks = field(j, "kernels", "chaos");
  if (!ks.is_array()) throw FormatError("chaos.kernels: expected an array");
  ChaosExpansion out(dim);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const std::string where = "chaos.kernels[" + std::to_string(i) + "]";
    const int order = int_field(ks[i], "order", where);
    if (out.kernel(order)) throw FormatError(where + ".order: duplicate order " + std::to_string(order));
    out.add(load_kernel(order, dim, field(ks[i], "coeffs", where), where));
  }
  return out;
}

json to_json(const TargetSpec& spec) { return {{"alphas", spec.alphas()}}; }

TargetSpec target_from_json(const json& j) {
  std::vector<double> alphas = number_list(field(j, "alphas", "target"), "alphas");
  try {
    return TargetSpec(std::move(alphas));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const CriterionReport& report) {
  json gaps = json::array();
  for (const auto& g : report.cumulant_gaps) {
    gaps.push_back({{"r", g.r}, {"kappa_n", g.kappa_n}, {"kappa_target", g.kappa_target}, {"gap", g.gap}});
  }
  json norms = json::object();
  for (const auto& [k, v] : report.contraction_norms) norms[k] = v;
  return {{"cumulant_gaps", gaps},
          {"gamma_stat", report.gamma_stat},
          {"gamma_stat_label", report.gamma_stat_label},
          {"contraction_norms", norms},
          {"notes", report.notes}};
}

}  // namespace wchi
