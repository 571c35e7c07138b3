#include "qdemon/cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>

#include "app.hpp"
#include "format.hpp"
#include "qdemon/cli/state_spec.hpp"

namespace qdemon::cli {

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::measure:
      return "measure";
    case Command::protocol:
      return "protocol";
    case Command::sweep:
      return "sweep";
    case Command::validate:
      return "validate";
  }
  return "";
}

CandidateGrid RunConfig::grid() const {
  CandidateGrid g;
  g.theta_steps = theta_steps;
  g.phi_steps = phi_steps;
  g.refine = refine;
  return g;
}

std::string RunConfig::canonical() const {
  std::string s(command_name(command));
  if (!state.empty()) s += " --state " + state;
  if (!state_file.empty()) s += " --state-file " + state_file;
  if (command == Command::measure) s += " --measure " + measure;
  if (!order.empty()) {
    s += " --order ";
    for (std::size_t k = 0; k < order.size(); ++k) s += (k ? "," : "") + order[k];
  }
  s += " --theta-steps " + std::to_string(theta_steps) + " --phi-steps " + std::to_string(phi_steps);
  if (!refine) s += " --no-refine";
  if (command == Command::sweep) {
    s += " --from " + detail::shortest(from) + " --to " + detail::shortest(to) + " --step " + detail::shortest(step);
  }
  s += std::string(" --format ") + (format == Format::json ? "json" : "csv");
  if (!out.empty()) s += " --out " + out;
  s += " --precision " + std::to_string(precision) + " --seed " + std::to_string(seed);
  if (parallel) s += " --parallel";
  return s;
}

AppBinding::AppBinding() : app("Thermal quantum discord and Maxwell-demon work extraction on qubit states", "qdemon") {
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(QDEMON_VERSION));
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};

  auto common = [&](CLI::App* sub, bool file_allowed) {
    sub->add_option("--state", config.state, "State spec, e.g. ghz:3, w, werner-ghz:0.5, schmidt:3:0.25");
    if (file_allowed) sub->add_option("--state-file", config.state_file, "Density-matrix text file");
    sub->add_option("--order", config.order, "Measurement order, comma-separated labels")->delimiter(',');
    sub->add_option("--theta-steps", config.theta_steps, "Polar grid points over [0, pi]")->check(CLI::Range(1, 10000));
    sub->add_option("--phi-steps", config.phi_steps, "Azimuthal grid points over [0, 2 pi)")->check(CLI::Range(1, 10000));
    sub->add_flag("--no-refine{false}", config.refine, "Skip simplex refinement of the grid minimum");
    sub->add_option("--format", config.format, "Output format")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--out", config.out, "Output path (default stdout)");
    sub->add_option("--precision", config.precision, "Significant digits in CSV output")->check(CLI::Range(1, 12));
    sub->add_option("--seed", config.seed, "Seed for random state families");
    sub->add_flag("--parallel", config.parallel, "Evaluate independent points on several threads");
  };

  measure = app.add_subcommand("measure", "Compute correlation measures of a state");
  common(measure, true);
  measure->add_option("--measure", config.measure, "thermal_qd, original_qd, gqd, mid (comma-separated)");

  protocol = app.add_subcommand("protocol", "Run the sequential demon work-extraction protocol");
  common(protocol, true);

  sweep = app.add_subcommand("sweep", "Sweep the family parameter and tabulate mid, gqd, dw_total");
  common(sweep, false);
  sweep->add_option("--from", config.from, "First parameter value");
  sweep->add_option("--to", config.to, "Last parameter value");
  sweep->add_option("--step", config.step, "Parameter increment");

  validate = app.add_subcommand("validate", "Check a density-matrix file");
  common(validate, true);
}

RunConfig AppBinding::finish() {
  if (measure->parsed()) {
    config.command = Command::measure;
  } else if (protocol->parsed()) {
    config.command = Command::protocol;
  } else if (sweep->parsed()) {
    config.command = Command::sweep;
  } else {
    config.command = Command::validate;
  }
  if (config.state.empty() == config.state_file.empty()) {
    throw ParseError("exactly one of --state and --state-file is required");
  }
  if (config.command == Command::sweep && !(config.step > 0.0)) throw ParseError("--step must be positive");
  if (config.command == Command::sweep && !(config.from <= config.to)) throw ParseError("--from must not exceed --to");
  if (config.command == Command::measure) {
    std::string_view rest = config.measure;
    while (true) {
      const auto comma = rest.find(',');
      const auto name = rest.substr(0, comma);
      if (name != "thermal_qd" && name != "original_qd" && name != "gqd" && name != "mid") {
        throw ParseError("unknown measure '" + std::string(name) + "'");
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return config;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  AppBinding binding;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    binding.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }
  return binding.finish();
}

}  // namespace qdemon::cli
