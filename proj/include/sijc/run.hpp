#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <sijc/config.hpp>
#include <sijc/evolution.hpp>
#include <sijc/inversion.hpp>
#include <sijc/oracle.hpp>
#include <sijc/spectrum.hpp>

namespace sijc {

/// 17 significant digits, enough to round-trip any double and stable
/// across reruns, which the verify command depends on.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Column-oriented result of a run command. Cells hold JSON values; CSV
/// rendering formats doubles with fmt17 so files are byte-stable.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

inline std::string cell_to_csv(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  if (c.is_number_integer()) return std::to_string(c.get<long long>());
  if (c.is_number()) return fmt17(c.get<double>());
  return c.dump();
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_to_csv(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json_text(const Table& t) {
  json j;
  j["columns"] = t.header;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(c);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

inline Table run_spectrum(const RunConfig& cfg) {
  const LadderSpectrum spec = build_spectrum(cfg.model, cfg.N);
  const OperatorBundle b = build_operators(spec, cfg.params);
  Table t;
  t.header = {"kind", "m", "branch", "energy", "lambda", "amp_e", "amp_g"};
  for (Index m = 0; m + 1 < b.N; ++m) {
    const DressedPair d = dressed_pair(b, m);
    t.rows.push_back({"pair", m, "minus", d.energy_minus, d.lambda_minus,
                      d.c_lower_minus, -d.c_upper_minus});
    t.rows.push_back({"pair", m, "plus", d.energy_plus, d.lambda_plus,
                      d.c_lower_plus, d.c_upper_plus});
  }
  const EigenPair gs = ground_singlet(b);
  const EigenPair es = edge_singlet(b);
  t.rows.push_back({"singlet", Index{0}, "ground", gs.energy, 0.0, 0.0, 1.0});
  t.rows.push_back(
      {"singlet", b.N - 1, "edge", es.energy, 0.0, 1.0, 0.0});
  return t;
}

inline Table run_evolve(const RunConfig& cfg) {
  const LadderSpectrum spec = build_spectrum(cfg.model, cfg.N);
  const OperatorBundle b = build_operators(spec, cfg.params);
  const FrequencyOperators f = build_frequencies(b);
  const Vector psi0 = build_initial_state(cfg.initial, b);
  const Matrix s3 = sigma3_matrix(b.N);
  Table t;
  t.header = {"t", "norm", "survival", "sigma3_expect"};
  for (double time : cfg.times) {
    const Matrix U = evolution_matrix(b, f, time);
    const Vector psi = U * psi0;
    const Complex overlap = psi0.adjoint() * psi;
    const Complex inv = psi.adjoint() * s3 * psi;
    t.rows.push_back(
        {time, psi.norm(), std::norm(overlap), inv.real()});
  }
  return t;
}

namespace detail {

inline bool ladder_is_uniform(const OperatorBundle& b) {
  try {
    require_uniform_ladder(b);
    return true;
  } catch (const error&) {
    return false;
  }
}

inline std::vector<Backend> selected_backends(const RunConfig& cfg,
                                              const OperatorBundle& b) {
  if (!cfg.all_backends) return {cfg.backend};
  std::vector<Backend> list = {Backend::series, Backend::quadrature};
  if (ladder_is_uniform(b)) list.push_back(Backend::ho_closed_form);
  return list;
}

inline ParticularOptions options_for(const RunConfig& cfg, Backend k) {
  ParticularOptions opt;
  opt.backend = k;
  opt.series_order = cfg.series_order;
  opt.quadrature_tol = cfg.quadrature_tol;
  return opt;
}

}  // namespace detail

inline Table run_inversion(const RunConfig& cfg) {
  const LadderSpectrum spec = build_spectrum(cfg.model, cfg.N);
  const OperatorBundle b = build_operators(spec, cfg.params);
  const FrequencyOperators f = build_frequencies(b);
  const NuOperators n = build_nu(b);
  const Vector psi = build_initial_state(cfg.initial, b);
  const Matrix sigma0 = sigma3_matrix(b.N);
  const std::vector<Backend> backends = detail::selected_backends(cfg, b);

  Table t;
  t.header = {"t"};
  bool with_series = false;
  for (Backend k : backends) {
    t.header.push_back(std::string("W_") + to_string(k));
    if (k == Backend::series) with_series = true;
  }
  if (with_series) t.header.push_back("bound_series");

  for (double time : cfg.times) {
    std::vector<json> row = {time};
    double series_bound = 0.0;
    for (Backend k : backends) {
      const Sigma3Result r =
          sigma3_of_t(b, f, n, time, sigma0, detail::options_for(cfg, k));
      if (k == Backend::series) series_bound = r.bound;
      row.push_back(inversion_expectation(r.value, psi).value);
    }
    if (with_series) row.push_back(series_bound);
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct VerifyOutcome {
  Table table;
  bool all_pass = true;
};

/// Built-in cross-check battery. Structural checks run on the configured
/// system; checks whose closed-form target only holds on resonance run on
/// a delta = 0 clone of the configuration. Each row reports the measured
/// defect against its tolerance, and the command as a whole passes only
/// if every row does.
inline VerifyOutcome run_verify(const RunConfig& cfg) {
  VerifyOutcome out;
  Table& t = out.table;
  t.header = {"check", "defect", "tol", "pass"};

  auto add_row = [&](const std::string& name, double defect, double tol) {
    const bool pass = defect <= tol;
    out.all_pass = out.all_pass && pass;
    t.rows.push_back({name, defect, tol, pass});
  };

  const LadderSpectrum spec = build_spectrum(cfg.model, cfg.N);
  const OperatorBundle b = build_operators(spec, cfg.params);
  const FrequencyOperators f = build_frequencies(b);
  const NuOperators n = build_nu(b);

  RunConfig rcfg = cfg;
  rcfg.params = JCParams(cfg.params.alpha, 0.0, cfg.params.hbar);
  const OperatorBundle rb = build_operators(spec, rcfg.params);
  const FrequencyOperators rf = build_frequencies(rb);
  const NuOperators rn = build_nu(rb);

  const auto interior = coupled_interior_indices(b.N);
  const Matrix sigma0 = sigma3_matrix(b.N);

  // Closed-form eigensystem against the matrix it claims to diagonalize.
  {
    const auto eigs = dressed_spectrum(b);
    const double hnorm = operator_norm(b.H_total);
    double resid = 0.0;
    Matrix states(2 * b.N, 2 * b.N);
    for (std::size_t k = 0; k < eigs.size(); ++k) {
      resid = std::max(resid,
                       (b.H_total * eigs[k].state -
                        eigs[k].energy * eigs[k].state).norm());
      states.col(static_cast<Index>(k)) = eigs[k].state;
    }
    add_row("spectrum_residual", resid, 1e-10 * hnorm);

    std::vector<double> closed;
    for (const auto& e : eigs) closed.push_back(e.energy);
    std::sort(closed.begin(), closed.end());
    Eigen::SelfAdjointEigenSolver<Matrix> es(b.H_total);
    double ediff = 0.0;
    for (Index k = 0; k < 2 * b.N; ++k)
      ediff = std::max(ediff,
                       std::abs(closed[static_cast<std::size_t>(k)] -
                                es.eigenvalues()(k)) /
                           std::max(1.0, std::abs(es.eigenvalues()(k))));
    add_row("spectrum_vs_dense", ediff, 1e-12);

    const Matrix gram = states.adjoint() * states -
                        Matrix::Identity(2 * b.N, 2 * b.N);
    add_row("state_orthonormality", gram.cwiseAbs().maxCoeff(), 1e-12);
  }

  // Propagator structure.
  {
    double defect = 0.0;
    for (double time : cfg.times)
      defect = std::max(defect,
                        unitarity_defect(evolution_matrix(b, f, time), b.N));
    add_row("unitarity_interior", defect, 1e-12);

    double rdev = 0.0;
    for (double time : cfg.times)
      rdev = std::max(rdev,
                      compare_with_exact(rb, rf, time, 1e-10).max_abs);
    add_row("resonant_propagator_vs_dense", rdev, 1e-10);
  }

  // Inversion dynamics on resonance against dense Heisenberg evolution.
  {
    double dev = 0.0;
    ParticularOptions opt = detail::options_for(cfg, Backend::series);
    for (double time : cfg.times) {
      const Sigma3Result r = sigma3_of_t(rb, rf, rn, time, sigma0, opt);
      const Matrix oracle =
          heisenberg_sigma3(rb.H_int, time, rb.params.hbar);
      dev = std::max(dev,
                     compare_on(r.value, oracle, interior, 1e-10, time)
                         .max_abs);
    }
    add_row("resonant_inversion_vs_dense", dev, 1e-10);
  }

  // Driven-part backends: zero initial value, mutual agreement, bounds.
  {
    std::vector<Backend> backends = {Backend::series, Backend::quadrature};
    if (detail::ladder_is_uniform(b)) backends.push_back(
        Backend::ho_closed_form);

    double at_zero = 0.0;
    for (Backend k : backends)
      at_zero = std::max(
          at_zero, particular_solution(b, f, n, 0.0,
                                       detail::options_for(cfg, k))
                       .value.cwiseAbs()
                       .maxCoeff());
    add_row("particular_at_zero", at_zero, 0.0);

    double agree = 0.0;
    double bound = 0.0;
    for (double time : cfg.times) {
      std::vector<Matrix> vals;
      for (Backend k : backends) {
        ParticularResult r =
            particular_solution(b, f, n, time, detail::options_for(cfg, k));
        if (k == Backend::series) bound = std::max(bound, r.bound);
        vals.push_back(std::move(r.value));
      }
      for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
          agree = std::max(agree,
                           (vals[i] - vals[j]).cwiseAbs().maxCoeff());
    }
    add_row("backend_agreement", agree, 1e-8);
    add_row("series_bound", bound, 1e-12);
  }

  // Expectation stays inside the physical band on resonance.
  {
    const Vector psi = build_initial_state(cfg.initial, rb);
    ParticularOptions opt = detail::options_for(cfg, Backend::series);
    double band = 0.0;
    for (double time : cfg.times) {
      const Sigma3Result r = sigma3_of_t(rb, rf, rn, time, sigma0, opt);
      const double w = inversion_expectation(r.value, psi).value;
      band = std::max(band, std::abs(w) - 1.0);
    }
    add_row("expectation_band", std::max(band, 0.0), 1e-10);
  }

  return out;
}

}  // namespace sijc
