#include "ordcone/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ordcone/errors.hpp"

namespace ordcone::io {
namespace {

using nlohmann::json;

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

SymMatrix sym_from(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("data"))
    throw InvalidArgument("matrix JSON needs \"dim\" and \"data\"");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0)
    throw InvalidArgument("matrix JSON: \"dim\" must be a positive integer");
  const auto n = static_cast<std::size_t>(j["dim"].get<long long>());
  const json& data = j["data"];
  if (!data.is_array() || data.size() != n * n)
    throw InvalidArgument("matrix JSON: \"data\" must hold dim*dim numbers");
  std::vector<double> raw;
  raw.reserve(n * n);
  for (const auto& v : data) {
    if (!v.is_number()) throw InvalidArgument("matrix JSON: non-numeric entry");
    raw.push_back(v.get<double>());
  }
  double asym = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double d = raw[i * n + k] - raw[k * n + i];
      asym += d * d;
      norm += raw[i * n + k] * raw[i * n + k];
    }
  if (std::sqrt(asym) > 1e-8 * std::sqrt(norm))
    throw InvalidArgument("matrix JSON: asymmetry exceeds 1e-8 relative");
  return SymMatrix(n, std::move(raw));
}

json json_of(const SymMatrix& m) {
  json data = json::array();
  for (double v : m.data()) data.push_back(v);
  return json{{"dim", m.dim()}, {"data", std::move(data)}};
}

json json_of(const DiscreteMeasure& m) {
  json points = json::array(), weights = json::array();
  for (std::size_t k = 0; k < m.size(); ++k) {
    points.push_back(json_of(m.point(k).sym()));
    weights.push_back(m.weight(k).to_string());
  }
  return json{{"points", std::move(points)}, {"weights", std::move(weights)}};
}

json json_of_arcs(const Coupling& c, double cost) {
  json arcs = json::array();
  for (const auto& a : c.arcs()) arcs.push_back(json{{"i", a.i}, {"j", a.j}, {"w", a.w.to_string()}});
  return json{{"cost", cost}, {"arcs", std::move(arcs)}};
}

json json_of(const OrderCertificate& cert, const Tolerances& tol) {
  json out{{"leq", cert.verdict}, {"witness", nullptr}, {"violating_subset", nullptr}};
  if (cert.witness) out["witness"] = json_of_arcs(*cert.witness, coupling_cost(*cert.witness, tol));
  if (cert.violating_subset) out["violating_subset"] = *cert.violating_subset;
  return out;
}

}  // namespace

SymMatrix parse_sym_matrix(std::string_view json_text) { return sym_from(parse_text(json_text)); }

PDMatrix parse_matrix(std::string_view json_text, const Tolerances& tol) {
  return PDMatrix(parse_sym_matrix(json_text), tol);
}

DiscreteMeasure parse_measure(std::string_view json_text, const Tolerances& tol) {
  const json j = parse_text(json_text);
  if (!j.is_object() || !j.contains("points") || !j.contains("weights"))
    throw InvalidArgument("measure JSON needs \"points\" and \"weights\"");
  const json& pts = j["points"];
  const json& ws = j["weights"];
  if (!pts.is_array() || !ws.is_array()) throw InvalidArgument("measure JSON: points/weights must be arrays");
  std::vector<PDMatrix> points;
  std::vector<Rational> weights;
  for (const auto& p : pts) points.emplace_back(sym_from(p), tol);
  for (const auto& w : ws) {
    if (!w.is_string()) throw InvalidArgument("measure JSON: weights must be \"num/den\" strings, not numbers");
    weights.push_back(Rational::parse(w.get<std::string>()));
  }
  return DiscreteMeasure(std::move(points), std::move(weights), tol);
}

std::string to_json(const SymMatrix& m) { return json_of(m).dump(2); }

std::string to_json(const DiscreteMeasure& m) { return json_of(m).dump(2); }

std::string to_json(const TransportPlan& plan) { return json_of_arcs(plan.coupling, plan.cost).dump(2); }

std::string to_json(const OrderCertificate& cert, const Tolerances& tol) { return json_of(cert, tol).dump(2); }

std::string to_json(const KarcherResult& result) {
  return json{{"mean", json_of(result.mean.sym())}, {"residual", result.residual}, {"iterations", result.iterations}}
      .dump(2);
}

std::string to_json(const ApproxStep& step, const Tolerances& tol) {
  json out{{"n", step.n},
           {"eps", step.eps},
           {"q_n", json_of(step.q_n)},
           {"p_n", json_of(step.p_n)},
           {"truncated_q", json_of(step.truncated_q)},
           {"truncated_p", json_of(step.truncated_p)},
           {"dW_q", step.dw_q},
           {"dW_p", step.dw_p},
           {"certificates", json{{"q_n_leq_p_n", json_of(step.certificate, tol)}}}};
  return out.dump(2);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_csv(const ApproxTrace& trace) {
  std::string out = "n,dW_q,dW_p,leq_ok,supp_q,supp_p\n";
  for (const auto& s : trace.steps) {
    out += std::to_string(s.n) + "," + format_real(s.dw_q) + "," + format_real(s.dw_p) + "," +
           (s.leq_ok() ? "true" : "false") + "," + std::to_string(s.q_n.size()) + "," +
           std::to_string(s.p_n.size()) + "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InvalidArgument("write failed for " + path.string());
}

}  // namespace ordcone::io
