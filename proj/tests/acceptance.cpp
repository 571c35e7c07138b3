// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qdemon/cli/commands.hpp"
#include "qdemon/cli/config.hpp"
#include "qdemon/correlations.hpp"
#include "qdemon/demon.hpp"
#include "qdemon/measurement.hpp"
#include "qdemon/optimizer.hpp"
#include "qdemon/states.hpp"

using namespace qdemon;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed sub-checks so the summary line says what went wrong.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 3) failed_ += (failed_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string failures() const {
    return failed_ + (failures_ > 3 ? "; +" + std::to_string(failures_ - 3) + " more" : "");
  }

 private:
  int failures_ = 0;
  std::string failed_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome finish(const Checker& c, std::string summary) {
  if (!c.ok()) summary += " | failed: " + c.failures();
  return {c.ok(), summary};
}

// "A:theta,phi;B:theta,phi" -> thetas
std::vector<double> thetas(const std::string& described) {
  std::vector<double> out;
  std::istringstream in(described);
  for (std::string item; std::getline(in, item, ';');) {
    const auto colon = item.find(':');
    out.push_back(std::stod(item.substr(colon + 1, item.find(',') - colon - 1)));
  }
  return out;
}

Outcome werner_ghz_closed_form() {
  const auto t0 = Clock::now();
  Checker c;
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double lambda = k / 10.0;
    cli::RunConfig config;
    config.state = "werner-ghz:" + fmt("%.1f", lambda);
    config.measure = "gqd";
    const auto row = cli::cmd_measure(config).at(0);
    const double closed = oracle::werner_ghz_gqd(lambda);
    const double err = std::abs(row.value - closed);
    worst = std::max(worst, err);
    c.expect(err < 1e-3, config.state + " off by " + fmt("%.3g", err));
    c.expect(err < 1e-6, config.state + " refined value off by " + fmt("%.3g", err));
    const auto th = thetas(row.argmin);
    c.expect(th.size() == 3 && std::all_of(th.begin(), th.end(), [](double t) { return std::abs(std::sin(t)) < 1e-6; }),
             config.state + " argmin " + row.argmin + " is not sigma_z");
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 120.0, "runtime " + fmt("%.1f", elapsed) + " s");
  return finish(c, "werner-ghz gqd vs closed form, 11 points: max error " + fmt("%.2e", worst) + ", sigma_z argmin, " +
                       fmt("%.1f", elapsed) + " s");
}

Outcome schmidt_saturation() {
  Checker c;
  double worst_gqd = 0.0, worst_dw = 0.0;
  for (std::size_t n : {2, 3, 4}) {
    for (double w : {0.1, 0.25, 0.5}) {
      const DensityMatrix rho(states::schmidt_weight(n, w));
      std::vector<std::string> order = rho.layout().labels();
      const auto r = run_protocol(rho, order);
      const double h = oracle::h2(w);
      const std::string tag = "schmidt:" + std::to_string(n) + ":" + fmt("%g", w);
      worst_gqd = std::max(worst_gqd, std::abs(r.gqd_bound - h));
      worst_dw = std::max(worst_dw, std::abs(r.total_advantage - r.gqd_bound));
      c.expect(std::abs(r.gqd_bound - h) < 1e-4, tag + " gqd " + fmt("%.8f", r.gqd_bound));
      c.expect(r.saturated, tag + " not saturated");
      c.expect(std::abs(r.total_advantage - r.gqd_bound) < 1e-3, tag + " dw " + fmt("%.8f", r.total_advantage));
    }
  }
  return finish(c, "schmidt n=2,3,4 x |alpha|^2=0.1,0.25,0.5: max |gqd-h| " + fmt("%.2e", worst_gqd) +
                       ", max |dw-gqd| " + fmt("%.2e", worst_dw) + ", all saturated");
}

Outcome w_ghz_sweep() {
  Checker c;
  cli::RunConfig config;
  config.command = cli::Command::sweep;
  config.state = "w-ghz";
  const auto rows = cli::cmd_sweep(config);
  c.expect(rows.size() == 21, std::to_string(rows.size()) + " rows");
  if (rows.size() != 21) return finish(c, "w-ghz sweep");
  c.expect(std::abs(rows.front().gqd - 1.0) < 1e-3, "gqd(0) = " + fmt("%.6f", rows.front().gqd));
  c.expect(std::abs(rows.back().gqd - std::log2(3.0)) < 1e-3, "gqd(1) = " + fmt("%.6f", rows.back().gqd));
  double min_gap = 1e300;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const std::string at = "lambda=" + fmt("%.2f", r.lambda);
    if (k > 0) c.expect(r.gqd >= rows[k - 1].gqd - 1e-3, at + " gqd decreases");
    if (k > 0 && k + 1 < rows.size()) {
      c.expect(!r.saturated, at + " saturated");
      min_gap = std::min(min_gap, r.gqd - r.dw_total);
    }
    c.expect(r.mid >= r.gqd - 1e-9, at + " mid < gqd");
    c.expect(r.gqd >= r.dw_total - 1e-9, at + " gqd < dw_total");
  }
  return finish(c, "w-ghz 21-point sweep: gqd(0)=" + fmt("%.6f", rows.front().gqd) + ", gqd(1)=" +
                       fmt("%.6f", rows.back().gqd) + ", monotone, interior min gap gqd-dw " + fmt("%.4f", min_gap) +
                       ", mid >= gqd >= dw_total");
}

Outcome circuit() {
  Checker c;
  double worst = 0.0, min_fid = 1.0;
  const std::vector<std::pair<cplx, cplx>> inputs{
      {M_SQRT1_2, M_SQRT1_2}, {std::polar(std::sqrt(0.3), 0.4), std::sqrt(0.7)}, {0.5, std::polar(std::sqrt(0.75), -1.1)}};
  for (const auto& [alpha, beta] : inputs) {
    const auto t = simulate_schmidt_circuit(alpha, beta, 3);
    const double h = oracle::h2(std::norm(alpha));
    min_fid = std::min(min_fid, t.fidelity);
    c.expect(t.fidelity > 1.0 - 1e-10, "fidelity " + fmt("%.15f", t.fidelity));
    const double eq = std::abs(t.quantum_work - 3.0), ec = std::abs(t.classical_work - (3.0 - h));
    worst = std::max({worst, eq, ec});
    c.expect(eq < 1e-10, "W^Q = " + fmt("%.15f", t.quantum_work));
    c.expect(ec < 1e-10, "W^C = " + fmt("%.15f", t.classical_work));
  }
  return finish(c, "schmidt circuit n=3, 3 inputs: min fidelity " + fmt("%.15f", min_fid) + ", max work error " +
                       fmt("%.2e", worst));
}

Outcome property_suites() {
  const auto t0 = Clock::now();
  Checker c;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto basis = [&] { return QubitBasis(std::acos(1.0 - 2.0 * u(rng)), 2.0 * M_PI * u(rng)); };
  CandidateGrid shared;
  shared.refine = false;
  double worst_identity = 0.0, worst_perm = 0.0, worst_classical = 0.0, min_margin = 1e300;

  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::size_t n = 2 + seed % 2;
    const std::size_t rank = 1 + seed % (std::size_t{1} << n);
    const auto rho = states::random_mixed(n, rank, 1000 + seed);
    const auto& layout = rho.layout();
    const std::string tag = "seed " + std::to_string(seed);
    const double s = von_neumann_entropy(rho);

    for (int k = 0; k < 5; ++k) {
      ProductBasisSpec spec;
      for (const auto& l : layout.labels()) spec.bases[l] = basis();
      auto order = layout.labels();
      std::shuffle(order.begin(), order.end(), rng);

      // (a)
      const double g = gqd_fixed(rho, spec).value;
      const auto steps = chained_decomposition(rho, spec, order);
      const double err = std::abs(std::accumulate(steps.begin(), steps.end(), 0.0) - g);
      worst_identity = std::max(worst_identity, err);
      c.expect(err < 1e-9, "(a) " + tag + " identity off by " + fmt("%.2e", err));

      // (c)
      for (const auto& l : layout.labels())
        c.expect(thermal_qd_fixed(rho, l, spec.bases.at(l)).value >= original_qd_fixed(rho, l, spec.bases.at(l)) - 1e-10,
                 "(c) " + tag);

      // (d)
      const auto phi = apply_channel(rho, spec);
      c.expect(von_neumann_entropy(phi) >= s - 1e-10, "(d) " + tag + " entropy decreased");
      c.expect((apply_channel(phi, spec).matrix() - phi.matrix()).cwiseAbs().maxCoeff() < 1e-12, "(d) " + tag);

      // (e)
      auto perm = layout.labels();
      std::shuffle(perm.begin(), perm.end(), rng);
      const double pe = std::abs(gqd_fixed(permute(rho, perm), spec).value - g);
      worst_perm = std::max(worst_perm, pe);
      c.expect(pe < 1e-10, "(e) " + tag + " permutation off by " + fmt("%.2e", pe));
    }

    // (b)
    auto order = layout.labels();
    std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seed % n), order.end());
    const double gqd = minimize_gqd(rho, shared).value;
    double chained = 0.0;
    for (const auto& r : minimize_chained(rho, order, shared)) chained += r.value;
    min_margin = std::min(min_margin, gqd - chained);
    c.expect(gqd >= chained - 1e-9, "(b) " + tag + " gqd " + fmt("%.10f", gqd) + " < chained " + fmt("%.10f", chained));

    // (f)
    std::vector<double> p(rho.dimension());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= total;
    const auto classical = states::classical(p);
    const double z = std::abs(gqd_fixed(classical, uniform_spec(layout.labels())).value);
    worst_classical = std::max(worst_classical, z);
    c.expect(z < 1e-10, "(f) " + tag + " classical gqd " + fmt("%.2e", z));
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 300.0, "runtime " + fmt("%.1f", elapsed) + " s");
  return finish(c, "100 random 2/3-qubit states: (a) max " + fmt("%.1e", worst_identity) + " (b) min margin " +
                       fmt("%.1e", min_margin) + " (c) ok (d) ok (e) max " + fmt("%.1e", worst_perm) + " (f) max " +
                       fmt("%.1e", worst_classical) + ", " + fmt("%.1f", elapsed) + " s");
}

Outcome bipartite_identity() {
  Checker c;
  CandidateGrid shared;
  shared.refine = false;
  const auto candidates = shared.candidates();
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rho = states::random_mixed(2, 1 + seed % 4, 5000 + seed);
    const double wq = quantum_work(rho);
    double best = 1e300;
    for (const auto& b : candidates) best = std::min(best, wq - classical_work(rho, "A", b));
    const double d = minimize_thermal_qd(rho, "A", shared).value;
    worst = std::max(worst, std::abs(best - d));
    c.expect(std::abs(best - d) < 1e-12, "seed " + std::to_string(seed) + " differs by " + fmt("%.2e", best - d));
  }
  return finish(c, "20 random 2-qubit states: max |min(W^Q-W^C) - D_th| " + fmt("%.2e", worst));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"werner-ghz closed form", werner_ghz_closed_form},
      {"schmidt saturation", schmidt_saturation},
      {"w-ghz endpoints and shape", w_ghz_sweep},
      {"purification circuit", circuit},
      {"property suites", property_suites},
      {"bipartite demon identity", bipartite_identity},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %zu %s [%s] %s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
