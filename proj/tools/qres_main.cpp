#include <cstddef>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qres/channels.hpp"
#include "qres/decompositions.hpp"
#include "qres/errors.hpp"
#include "qres/io.hpp"
#include "qres/matrix.hpp"
#include "qres/reorderings.hpp"
#include "qres/schmidt.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qres;

double clean(double v) {
  return v == 0.0 ? 0.0 : v;
}

void emit_matrix(const ComplexMatrix& m, bool plain) {
  if (plain) {
    std::cout << io::plain_text(m);
  } else {
    std::cout << io::matrix_to_json(m).dump(2) << "\n";
  }
}

void emit_report(const ordered_json& doc) {
  std::cout << doc.dump(2) << "\n";
}

double smallest_eigenvalue(const ComplexMatrix& a) {
  const EigResult e = eig_hermitian(0.5 * (a + dagger(a)));
  return e.values.back();
}

Factor parse_factor(const std::string& mode) {
  return mode == "first" ? Factor::First : Factor::Second;
}

ordered_json factor_list(const std::vector<ComplexMatrix>& factors) {
  ordered_json out = ordered_json::array();
  for (const ComplexMatrix& f : factors) out.push_back(io::matrix_to_json(f));
  return out;
}

void run_schmidt(const std::string& path, DimPair dims, const std::string& mode,
                 double count_tol) {
  const ComplexMatrix input = io::load_matrix(path);
  SchmidtResult r;
  if (mode == "vector") {
    r = schmidt_vector(input, dims);
  } else {
    r = schmidt_operator(input, dims);
  }
  const double largest = r.coefficients.empty() ? 0.0 : r.coefficients.front();
  std::size_t count = 0;
  for (double c : r.coefficients) {
    if (c > count_tol * largest) ++count;
  }
  const double residual =
      r.coefficients.empty() ? max_abs(input) : max_abs_diff(r.reconstruct(), input);
  ordered_json doc;
  doc["action"] = "schmidt";
  doc["mode"] = mode;
  ordered_json coeffs = ordered_json::array();
  for (double c : r.coefficients) coeffs.push_back(clean(c));
  doc["coefficients"] = std::move(coeffs);
  doc["schmidt_number"] = count;
  if (mode == "vector") doc["separable"] = (count == 1);
  doc["residual"] = clean(residual);
  doc["left_factors"] = factor_list(r.left_factors);
  doc["right_factors"] = factor_list(r.right_factors);
  emit_report(doc);
}

void run_channel(const std::string& path, const std::string& action, double tol, bool plain) {
  const io::ChannelSpec spec = io::load_channel_spec(path);
  if (action == "superop") {
    emit_matrix(to_superoperator(spec.rep).matrix, plain);
    return;
  }
  if (action == "choi") {
    emit_matrix(to_dynamical(spec.rep).matrix, plain);
    return;
  }
  if (action == "jamiolkowski") {
    emit_matrix(jamiolkowski_state(to_dynamical(spec.rep)), plain);
    return;
  }
  if (action == "kraus") {
    const KrausSet ks = kraus_from_dynamical(to_dynamical(spec.rep));
    ordered_json doc;
    doc["action"] = "kraus";
    ordered_json weights = ordered_json::array();
    for (const ComplexMatrix& op : ks.operators) {
      const double f = frobenius_norm(op);
      weights.push_back(clean(f * f));
    }
    doc["singular_values"] = std::move(weights);
    doc["operators"] = factor_list(ks.operators);
    emit_report(doc);
    return;
  }
  if (action == "check-cp") {
    const DynamicalMatrix d = to_dynamical(spec.rep);
    ordered_json doc;
    doc["action"] = "check-cp";
    doc["verdict"] = is_completely_positive(spec.rep, tol);
    doc["witness_eigenvalue"] = clean(smallest_eigenvalue(d.matrix));
    emit_report(doc);
    return;
  }
  if (action == "check-tp") {
    double deviation = 0.0;
    if (spec.kraus_backed) {
      const auto& ks = std::get<KrausSet>(spec.rep);
      ComplexMatrix acc(ks.dim_in, ks.dim_in);
      for (const ComplexMatrix& op : ks.operators) acc = acc + matmul(dagger(op), op);
      deviation = max_abs_diff(acc, ComplexMatrix::identity(ks.dim_in));
    } else {
      const DynamicalMatrix d = to_dynamical(spec.rep);
      const ComplexMatrix reduced = partial_trace(d.matrix, {d.dim_out, d.dim_in}, Factor::First);
      deviation = max_abs_diff(reduced, ComplexMatrix::identity(d.dim_in));
    }
    ordered_json doc;
    doc["action"] = "check-tp";
    doc["verdict"] = (deviation <= tol);
    doc["max_deviation"] = clean(deviation);
    emit_report(doc);
    return;
  }
  // check-unital
  const Superoperator s = to_superoperator(spec.rep);
  const ComplexMatrix image = apply_superoperator(s, ComplexMatrix::identity(s.dim_in));
  const double deviation = max_abs_diff(image, ComplexMatrix::identity(s.dim_out));
  ordered_json doc;
  doc["action"] = "check-unital";
  doc["verdict"] = is_unital(spec.rep, tol);
  doc["max_deviation"] = clean(deviation);
  emit_report(doc);
}

void run_ppt(const std::string& path, DimPair dims, double tol) {
  const ComplexMatrix rho = io::load_matrix(path);
  const bool verdict = is_ppt(rho, dims, tol);
  const ComplexMatrix pt = partial_transpose(rho, dims, Factor::First);
  ordered_json doc;
  doc["action"] = "ppt";
  doc["verdict"] = verdict;
  doc["min_eigenvalue"] = clean(smallest_eigenvalue(pt));
  if (dims.m == 2 && dims.n == 2) {
    doc["classification"] = verdict ? "separable" : "entangled";
  }
  emit_report(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-reordering toolkit: reshuffling, Schmidt and Kraus decompositions, "
               "channel composition, and positivity verdicts for small complex matrices."};
  app.require_subcommand(1);

  std::string input, input_b, variant = "standard", mode, action;
  std::vector<std::size_t> dims;
  double tol = -1.0;
  bool plain = false;

  auto add_dims = [&dims](CLI::App* sub) {
    sub->add_option("--dims", dims, "Factor dimensions M N")->expected(2)->required();
  };
  auto add_plain = [&plain](CLI::App* sub) {
    sub->add_flag("--plain", plain, "Bare text matrix output");
  };
  auto add_tol = [&tol](CLI::App* sub) {
    sub->add_option("--tol", tol, "Verdict tolerance (default 1e-8)")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* reshuffle_cmd = app.add_subcommand("reshuffle", "Reorder a square matrix over a split");
  reshuffle_cmd->add_option("input", input, "Matrix file (- for stdin)")->required();
  add_dims(reshuffle_cmd);
  reshuffle_cmd->add_option("--variant", variant, "standard | alternative")
      ->check(CLI::IsMember({"standard", "alternative"}));
  add_plain(reshuffle_cmd);

  CLI::App* schmidt_cmd = app.add_subcommand("schmidt", "Tensor-product decomposition");
  schmidt_cmd->add_option("input", input, "Matrix file (- for stdin)")->required();
  add_dims(schmidt_cmd);
  schmidt_cmd->add_option("--mode", mode, "vector | operator")
      ->check(CLI::IsMember({"vector", "operator"}));
  add_tol(schmidt_cmd);

  CLI::App* channel_cmd = app.add_subcommand("channel", "Channel representations and verdicts");
  channel_cmd->add_option("input", input, "Channel spec file (- for stdin)")->required();
  channel_cmd
      ->add_option("--action", action,
                   "superop | choi | kraus | jamiolkowski | check-cp | check-tp | check-unital")
      ->required()
      ->check(CLI::IsMember({"superop", "choi", "kraus", "jamiolkowski", "check-cp", "check-tp",
                             "check-unital"}));
  add_tol(channel_cmd);
  add_plain(channel_cmd);

  CLI::App* compose_cmd = app.add_subcommand("compose", "Superoperator of a product channel");
  compose_cmd->add_option("spec_a", input, "First channel spec")->required();
  compose_cmd->add_option("spec_b", input_b, "Second channel spec")->required();
  add_plain(compose_cmd);

  CLI::App* ppt_cmd = app.add_subcommand("ppt", "Positive-partial-transpose verdict");
  ppt_cmd->add_option("input", input, "Matrix file (- for stdin)")->required();
  add_dims(ppt_cmd);
  add_tol(ppt_cmd);

  CLI::App* pt_cmd = app.add_subcommand("partial-transpose", "Transpose one tensor factor");
  pt_cmd->add_option("input", input, "Matrix file (- for stdin)")->required();
  add_dims(pt_cmd);
  pt_cmd->add_option("--mode", mode, "first | second")->check(CLI::IsMember({"first", "second"}));
  add_plain(pt_cmd);

  CLI::App* ptr_cmd = app.add_subcommand("partial-trace", "Trace out one tensor factor");
  ptr_cmd->add_option("input", input, "Matrix file (- for stdin)")->required();
  add_dims(ptr_cmd);
  ptr_cmd->add_option("--mode", mode, "first | second")->check(CLI::IsMember({"first", "second"}));
  add_plain(ptr_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const double verdict_tol = tol >= 0.0 ? tol : 1e-8;
  try {
    if (reshuffle_cmd->parsed()) {
      const ComplexMatrix m = io::load_matrix(input);
      const DimPair split{dims[0], dims[1]};
      emit_matrix(variant == "standard" ? reshuffle(m, split) : reshuffle_alt(m, split), plain);
    } else if (schmidt_cmd->parsed()) {
      if (mode.empty()) mode = "vector";
      run_schmidt(input, {dims[0], dims[1]}, mode, tol >= 0.0 ? tol : 1e-10);
    } else if (channel_cmd->parsed()) {
      run_channel(input, action, verdict_tol, plain);
    } else if (compose_cmd->parsed()) {
      const io::ChannelSpec a = io::load_channel_spec(input);
      const io::ChannelSpec b = io::load_channel_spec(input_b);
      emit_matrix(compose_channels(a.rep, b.rep).matrix, plain);
    } else if (ppt_cmd->parsed()) {
      run_ppt(input, {dims[0], dims[1]}, verdict_tol);
    } else if (pt_cmd->parsed()) {
      if (mode.empty()) mode = "first";
      const ComplexMatrix m = io::load_matrix(input);
      emit_matrix(partial_transpose(m, {dims[0], dims[1]}, parse_factor(mode)), plain);
    } else if (ptr_cmd->parsed()) {
      if (mode.empty()) mode = "first";
      const ComplexMatrix m = io::load_matrix(input);
      emit_matrix(partial_trace(m, {dims[0], dims[1]}, parse_factor(mode)), plain);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotCompletelyPositive& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NotTracePreserving& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
