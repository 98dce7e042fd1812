#pragma once

// JSON and CSV formats read and written by the command-line tool.
//
//   Matrix        {"dim": n, "data": [n*n reals, row-major]}
//   Measure       {"points": [Matrix...], "weights": ["num/den"...]}
//   TransportPlan {"cost": real, "arcs": [{"i": int, "j": int, "w": "num/den"}...]}
//   Certificate   {"leq": bool, "witness": TransportPlan | null, "violating_subset": [int] | null}
//   Karcher       {"mean": Matrix, "residual": real, "iterations": int}

#include <filesystem>
#include <string>
#include <string_view>

#include "ordcone/karcher.hpp"
#include "ordcone/measure.hpp"
#include "ordcone/order_approx.hpp"
#include "ordcone/stochastic_order.hpp"
#include "ordcone/transport.hpp"

namespace ordcone::io {

/// Symmetrizes (A + A^T)/2; rejects ||A - A^T||_F > 1e-8 ||A||_F.
SymMatrix parse_sym_matrix(std::string_view json_text);
PDMatrix parse_matrix(std::string_view json_text, const Tolerances& tol = {});
/// Weights must be strings; JSON numbers are rejected.
DiscreteMeasure parse_measure(std::string_view json_text, const Tolerances& tol = {});

std::string to_json(const SymMatrix& m);
std::string to_json(const DiscreteMeasure& m);
std::string to_json(const TransportPlan& plan);
std::string to_json(const OrderCertificate& cert, const Tolerances& tol = {});
std::string to_json(const KarcherResult& result);
/// {"n", "eps", "q_n", "p_n", "truncated_q", "truncated_p", "dW_q", "dW_p",
///  "certificates": {"q_n_leq_p_n": Certificate}}
std::string to_json(const ApproxStep& step, const Tolerances& tol = {});

/// Header n,dW_q,dW_p,leq_ok,supp_q,supp_p and one row per step.
std::string trace_csv(const ApproxTrace& trace);

/// Round-trip formatting used in every CSV ("%.17g").
std::string format_real(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ordcone::io
