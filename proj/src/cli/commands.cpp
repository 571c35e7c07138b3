#include "qdemon/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "app.hpp"
#include "format.hpp"
#include "qdemon/cli/matrix_file.hpp"
#include "qdemon/cli/state_spec.hpp"
#include "qdemon/correlations.hpp"
#include "qdemon/demon.hpp"
#include "qdemon/errors.hpp"
#include "qdemon/optimizer.hpp"

namespace qdemon::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kBasisFamily = "product-rank-one-projective";
constexpr const char* kDegenerateRule = "computational";

struct LoadedState {
  std::string name;
  DensityMatrix rho;
};

LoadedState load(const RunConfig& config) {
  if (!config.state_file.empty()) return {"file:" + config.state_file, load_state(config.state_file)};
  const auto spec = parse_state_spec(config.state, config.seed);
  return {spec.canonical(), build_state(spec)};
}

std::vector<std::string> resolve_order(const RunConfig& config, const DensityMatrix& rho) {
  if (config.order.empty()) return rho.layout().labels();
  check_order(rho.layout(), config.order);
  return config.order;
}

std::vector<std::string> split_measures(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double rounded(double v, int digits) { return std::stod(detail::significant(v, digits)); }

std::string flag(bool b) { return b ? "true" : "false"; }

ordered_json meta_json(const RunConfig& config, const std::string& state) {
  ordered_json meta;
  meta["tool"] = "qdemon";
  meta["version"] = QDEMON_VERSION;
  meta["command"] = std::string(command_name(config.command));
  meta["state"] = state;
  meta["basis_family"] = kBasisFamily;
  meta["theta_steps"] = config.theta_steps;
  meta["phi_steps"] = config.phi_steps;
  meta["refine"] = config.refine;
  meta["mid_degenerate_basis"] = kDegenerateRule;
  meta["units"] = "bits; work in kT";
  return meta;
}

std::string meta_csv(const RunConfig& config, const std::string& state) {
  return std::string("# qdemon ") + QDEMON_VERSION + " command=" + std::string(command_name(config.command)) +
         " state=" + state + " basis_family=" + kBasisFamily + " theta_steps=" + std::to_string(config.theta_steps) +
         " phi_steps=" + std::to_string(config.phi_steps) + " refine=" + (config.refine ? "on" : "off") +
         " mid_degenerate_basis=" + kDegenerateRule + "\n";
}

std::string render_measure(const RunConfig& config) {
  const auto rows = cmd_measure(config);
  const std::string state = rows.empty() ? config.state : rows.front().state;
  const int p = config.precision;
  if (config.format == Format::json) {
    ordered_json doc;
    doc["meta"] = meta_json(config, state);
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"state", r.state},
                             {"measure", r.measure},
                             {"value", rounded(r.value, p)},
                             {"argmin", r.argmin},
                             {"evaluations", r.evaluations},
                             {"refined", r.refined},
                             {"heuristic", r.heuristic},
                             {"fallback", r.fallback}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = meta_csv(config, state) + "state,measure,value,argmin,evaluations,refined,heuristic,fallback\n";
  for (const auto& r : rows) {
    out += r.state + "," + r.measure + "," + detail::significant(r.value, p) + "," + r.argmin + "," +
           std::to_string(r.evaluations) + "," + flag(r.refined) + "," + flag(r.heuristic) + "," + flag(r.fallback) +
           "\n";
  }
  return out;
}

std::string render_protocol(const RunConfig& config) {
  const auto [name, rho] = load(config);
  const auto report = run_protocol(rho, resolve_order(config, rho), config.grid());
  const int p = config.precision;
  std::string order;
  for (std::size_t k = 0; k < report.order.size(); ++k) order += (k ? ";" : "") + report.order[k];

  if (config.format == Format::json) {
    ordered_json doc;
    doc["meta"] = meta_json(config, name);
    ordered_json steps = ordered_json::array();
    for (const auto& s : report.steps) {
      steps.push_back({{"step", s.index},
                       {"apparatus", s.apparatus},
                       {"delta_w", rounded(s.delta_w, p)},
                       {"argmin", s.argmin.describe(rho.layout(), p)},
                       {"evaluations", s.evaluations},
                       {"refined", s.refined}});
    }
    doc["report"] = {{"state", name},
                     {"order", report.order},
                     {"steps", steps},
                     {"dw_total", rounded(report.total_advantage, p)},
                     {"gqd_bound", rounded(report.gqd_bound, p)},
                     {"gqd_argmin", report.gqd_argmin.describe(rho.layout(), p)},
                     {"mid_bound", rounded(report.mid_bound, p)},
                     {"mid_fallback", report.mid_fallback},
                     {"saturated", report.saturated},
                     {"heuristic", report.heuristic}};
    return doc.dump(2) + "\n";
  }
  std::string steps;
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    steps += (k ? ";" : "") + detail::significant(report.steps[k].delta_w, p);
  }
  return meta_csv(config, name) +
         "state,order,dw_total,gqd_bound,mid_bound,saturated,heuristic,mid_fallback,dw_steps\n" + name + "," + order +
         "," + detail::significant(report.total_advantage, p) + "," + detail::significant(report.gqd_bound, p) + "," +
         detail::significant(report.mid_bound, p) + "," + flag(report.saturated) + "," + flag(report.heuristic) + "," +
         flag(report.mid_fallback) + "," + steps + "\n";
}

std::string render_sweep(const RunConfig& config) {
  const auto rows = cmd_sweep(config);
  const auto state = parse_state_spec(config.state, config.seed).canonical();
  const int p = config.precision;
  if (config.format == Format::json) {
    ordered_json doc;
    doc["meta"] = meta_json(config, state);
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"lambda", rounded(r.lambda, p)},
                             {"mid", rounded(r.mid, p)},
                             {"gqd", rounded(r.gqd, p)},
                             {"dw_total", rounded(r.dw_total, p)},
                             {"saturated", r.saturated}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = meta_csv(config, state) + "lambda,mid,gqd,dw_total\n";
  for (const auto& r : rows) {
    out += detail::significant(r.lambda, p) + "," + detail::significant(r.mid, p) + "," +
           detail::significant(r.gqd, p) + "," + detail::significant(r.dw_total, p) + "\n";
  }
  return out;
}

std::string render_validate(const RunConfig& config) {
  const auto [name, rho] = load(config);
  const auto spec = spectrum(rho);
  const int p = config.precision;
  const double trace = rho.matrix().trace().real();
  const double min_eig = spec.values.back();
  const double entropy = von_neumann_entropy(rho);
  if (config.format == Format::json) {
    ordered_json doc;
    doc["meta"] = meta_json(config, name);
    doc["result"] = {{"state", name},
                     {"valid", true},
                     {"qubits", rho.qubits()},
                     {"trace", rounded(trace, p)},
                     {"min_eigenvalue", rounded(min_eig, p)},
                     {"entropy", rounded(entropy, p)}};
    return doc.dump(2) + "\n";
  }
  return meta_csv(config, name) + "state,valid,qubits,trace,min_eigenvalue,entropy\n" + name + ",true," +
         std::to_string(rho.qubits()) + "," + detail::significant(trace, p) + "," + detail::significant(min_eig, p) +
         "," + detail::significant(entropy, p) + "\n";
}

}  // namespace

std::vector<MeasureRow> cmd_measure(const RunConfig& config) {
  const auto [name, rho] = load(config);
  const auto grid = config.grid();
  const auto order = resolve_order(config, rho);
  const int p = config.precision;
  std::vector<MeasureRow> rows;
  for (const auto& measure : split_measures(config.measure)) {
    MeasureRow row;
    row.state = name;
    row.measure = measure;
    if (measure == "mid") {
      const auto mid = mid_multipartite(rho);
      row.value = mid.value;
      row.argmin = mid.basis.spec.describe(rho.layout(), p);
      row.evaluations = 1;
      row.fallback = mid.fallback();
    } else {
      MinimizationResult res;
      if (measure == "gqd") {
        const std::vector<ProductBasisSpec> seeds{mid_basis(rho).spec};
        res = minimize_gqd(rho, grid, seeds);
      } else if (measure == "thermal_qd") {
        res = minimize_thermal_qd(rho, order.front(), grid);
      } else if (measure == "original_qd") {
        res = minimize_original_qd(rho, order.front(), grid);
      } else {
        throw ParseError("unknown measure '" + measure + "'");
      }
      row.value = res.value;
      row.argmin = res.argmin.describe(rho.layout(), p);
      row.evaluations = res.evaluations;
      row.refined = res.refined;
      row.heuristic = res.heuristic;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> sweep_points(double from, double to, double step) {
  if (!(step > 0.0) || !(from <= to)) throw ParseError("sweep needs from <= to and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double v = std::round((from + static_cast<double>(k) * step) * 1e12) / 1e12;
    points.push_back(std::min(v, to));
  }
  return points;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& config) {
  if (config.state.empty()) throw ParseError("sweep needs --state");
  const auto spec = parse_state_spec(config.state, config.seed);
  if (!spec.sweepable()) throw ParseError("state family '" + spec.canonical() + "' has no sweep parameter");
  const auto points = sweep_points(config.from, config.to, config.step);
  const auto grid = config.grid();

  std::vector<SweepRow> rows(points.size());
  auto evaluate = [&](std::size_t k) {
    const auto rho = build_state(spec.with_parameter(points[k]));
    const auto order = resolve_order(config, rho);
    const auto report = run_protocol(rho, order, grid);
    rows[k] = {points[k], report.mid_bound, report.gqd_bound, report.total_advantage, report.saturated};
  };

  if (!config.parallel || points.size() < 2) {
    for (std::size_t k = 0; k < points.size(); ++k) evaluate(k);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t workers = std::min<std::size_t>(std::max(1U, std::thread::hardware_concurrency()), points.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < points.size(); k = next++) {
          try {
            evaluate(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string render(const RunConfig& config) {
  switch (config.command) {
    case Command::measure:
      return render_measure(config);
    case Command::protocol:
      return render_protocol(config);
    case Command::sweep:
      return render_sweep(config);
    case Command::validate:
      return render_validate(config);
  }
  return {};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  {
    AppBinding binding;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      binding.app.parse(reversed);
      config = binding.finish();
    } catch (const CLI::Success& e) {
      return binding.app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      binding.app.exit(e, out, err);
      return kExitUsage;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  try {
    const std::string text = render(config);
    if (config.out.empty()) {
      out << text;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw ParseError("cannot write '" + config.out + "'");
      file << text;
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation failed (" << e.invariant() << "): " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace qdemon::cli
