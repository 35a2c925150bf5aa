#include "geoflow/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>

#include "geoflow/config.hpp"
#include "geoflow/gradcheck.hpp"
#include "geoflow/io.hpp"
#include "geoflow/metrics.hpp"
#include "geoflow/non_blocking.hpp"
#include "geoflow/non_intersection.hpp"
#include "geoflow/objective.hpp"
#include "geoflow/occlusion.hpp"
#include "geoflow/optimize.hpp"
#include "geoflow/oracle.hpp"

namespace geoflow {

namespace {

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? RunConfig{} : load_config(path);
}

void print_terms(std::ostream& out, const LossTerms& t) {
  out << "census=" << t.census << "\n"
      << "smoothness=" << t.smoothness << "\n"
      << "non_intersection=" << t.non_intersection << "\n"
      << "non_blocking=" << t.non_blocking << "\n"
      << "total=" << t.total << "\n";
}

int cmd_losses(const std::string& img1, const std::string& img2, const std::string& flow_path,
               const std::string& back_path, const std::string& cfg_path, std::ostream& out) {
  const RunConfig cfg = config_or_default(cfg_path);
  const Image frame_t = read_image(img1);
  const Image frame_t1 = read_image(img2);
  require_same_size(frame_t, frame_t1, "losses: images");
  const FlowField forward = read_flo(flow_path);
  require_same_size(frame_t, forward, "losses: forward flow");
  FlowField backward;
  if (back_path.empty()) {
    backward = forward;
    backward *= -1.0;
  } else {
    backward = read_flo(back_path);
    require_same_size(frame_t, backward, "losses: backward flow");
  }
  const auto occ_t = occlusion_mask(forward, backward, cfg.loss.occlusion);
  const auto occ_t1 = occlusion_mask(backward, forward, cfg.loss.occlusion);
  const auto b = evaluate_objective(frame_t, frame_t1, forward, backward, occ_t, occ_t1, cfg.loss);
  out << std::setprecision(10);
  print_terms(out, b.terms);
  out << "crossing_count=" << crossing_count(forward, occ_t) + crossing_count(backward, occ_t1)
      << "\n"
      << "blocked_count=" << blocked_count(forward, occ_t) + blocked_count(backward, occ_t1)
      << "\n"
      << "occluded_forward=" << occ_t.height() * occ_t.width() - occ_t.visible_count() << "\n"
      << "occluded_backward=" << occ_t1.height() * occ_t1.width() - occ_t1.visible_count()
      << "\n";
  return kExitOk;
}

void write_trace(const std::string& path, const std::vector<TraceEntry>& trace) {
  std::ofstream csv(path);
  if (!csv) throw IoError("cannot write " + path);
  csv << "step,census,smooth,inter,block,total\n" << std::setprecision(17);
  for (const auto& e : trace) {
    csv << e.step << ',' << e.terms.census << ',' << e.terms.smoothness << ','
        << e.terms.non_intersection << ',' << e.terms.non_blocking << ',' << e.terms.total
        << '\n';
  }
}

int cmd_optimize(const std::string& img1, const std::string& img2, const std::string& out_fwd,
                 const std::string& out_bwd, const std::string& cfg_path,
                 const std::string& trace_path, std::ostream& out) {
  const RunConfig cfg = config_or_default(cfg_path);
  const Image frame_t = read_image(img1);
  const Image frame_t1 = read_image(img2);
  require_same_size(frame_t, frame_t1, "optimize: images");
  const FlowPairResult res = optimize_flow_pair(frame_t, frame_t1, cfg.loss, cfg.optimize);
  write_flo(out_fwd, res.forward);
  write_flo(out_bwd, res.backward);
  if (!trace_path.empty()) write_trace(trace_path, res.trace);
  out << std::setprecision(10) << "steps=" << res.trace.size() << "\n";
  if (!res.trace.empty()) print_terms(out, res.trace.back().terms);
  return kExitOk;
}

int cmd_eval(const std::string& flow_path, const std::string& gt_path,
             const std::string& valid_path, const std::string& noc_path,
             const std::string& noc_backward_path, std::ostream& out) {
  const FlowField flow = read_flo(flow_path);
  const FlowField gt = read_flo(gt_path);
  require_same_size(flow, gt, "eval");
  ValidityMask valid = ValidityMask::all(gt.height(), gt.width());
  if (!valid_path.empty()) {
    valid.data = read_mask(valid_path);
    require_same_size(valid, gt, "eval: validity mask");
  }
  std::optional<OcclusionMask> occ;
  if (!noc_path.empty()) {
    occ = OcclusionMask{};
    occ->data = read_mask(noc_path);
    require_same_size(*occ, gt, "eval: occlusion mask");
  } else if (!noc_backward_path.empty()) {
    const FlowField backward = read_flo(noc_backward_path);
    occ = occlusion_mask(flow, backward);
  }
  const FlowEvalResult r = epe(flow, gt, valid, occ);
  out << std::fixed << std::setprecision(6) << "epe_mean=" << r.epe_mean << "\n"
      << "epe_mean_noc=" << r.epe_mean_noc << "\n"
      << "error_rate=" << r.error_rate << "\n"
      << "valid_count=" << r.valid_count << "\n"
      << "noc_count=" << r.noc_count << "\n";
  return kExitOk;
}

int cmd_viz(const std::string& flow_path, const std::string& out_path, double max_mag,
            std::ostream& out) {
  const FlowField flow = read_flo(flow_path);
  write_png(out_path, flow_to_color(flow, max_mag));
  out << "wrote=" << out_path << "\n";
  return kExitOk;
}

int cmd_gradcheck(const std::string& loss, int probes, std::uint64_t seed, std::ostream& out) {
  std::vector<LossSelector> selected;
  if (loss == "all") {
    selected = {LossSelector::Smooth, LossSelector::Census, LossSelector::Inter,
                LossSelector::Block};
  } else {
    selected.push_back(*parse_loss_selector(loss));
  }
  bool ok = true;
  out << std::setprecision(6);
  for (const auto s : selected) {
    const auto scene = make_gradcheck_scene(s, seed);
    const auto r = finite_diff_check(s, scene, LossConfig{}, probes, gradcheck_step(s), seed);
    const bool pass = r.probes >= probes && r.max_rel_error < gradcheck_threshold(s);
    ok = ok && pass;
    out << to_string(s) << ": max_rel_error=" << r.max_rel_error
        << " threshold=" << gradcheck_threshold(s) << " probes=" << r.probes
        << " resampled=" << r.resampled << " worst=(" << (r.field ? "bwd" : "fwd") << ","
        << (r.component ? "v" : "u") << "," << r.row << "," << r.col << ") "
        << (pass ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kExitOk : kExitValidation;
}

int cmd_oracle(long samples, std::uint64_t seed, std::ostream& out) {
  const auto inter = oracle::intersection_suite(samples, seed);
  const auto member = oracle::membership_suite(std::max(1L, samples / 10), 10, seed + 1);
  const auto report = [&](const char* name, const oracle::SuiteReport& r) {
    out << name << ": checked=" << r.checked << " skipped=" << r.skipped
        << " positives=" << r.positives << " disagreements=" << r.disagreements;
    if (r.convex + r.concave > 0) out << " convex=" << r.convex << " concave=" << r.concave;
    out << " " << (r.passed() ? "PASS" : "FAIL") << "\n";
    if (!r.first_failure.empty()) out << "  first failure: " << r.first_failure << "\n";
  };
  report("intersection", inter);
  report("membership", member);
  return inter.passed() && member.passed() ? kExitOk : kExitValidation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense optical-flow losses with geometric non-occlusion constraints"};
  app.require_subcommand(1);

  std::string img1, img2, flow_path, back_path, cfg_path, out_fwd, out_bwd, trace_path;
  std::string gt_path, valid_path, noc_path, noc_backward_path, out_png, loss = "all";
  double max_mag = 0.0;
  int probes = 100;
  long samples = 100000;
  std::uint64_t seed = 1;

  auto* losses = app.add_subcommand("losses", "Print the loss breakdown for a flow field");
  losses->add_option("img1", img1, "Frame t")->required();
  losses->add_option("img2", img2, "Frame t+1")->required();
  losses->add_option("flow", flow_path, "Forward flow (.flo)")->required();
  losses->add_option("flow_back", back_path, "Backward flow (.flo); default: negated forward");
  losses->add_option("--config", cfg_path, "key = value configuration file");

  auto* optimize = app.add_subcommand("optimize", "Estimate forward and backward flow");
  optimize->add_option("img1", img1, "Frame t")->required();
  optimize->add_option("img2", img2, "Frame t+1")->required();
  optimize->add_option("--out-fwd", out_fwd, "Output forward flow (.flo)")->required();
  optimize->add_option("--out-bwd", out_bwd, "Output backward flow (.flo)")->required();
  optimize->add_option("--config", cfg_path, "key = value configuration file");
  optimize->add_option("--trace", trace_path, "Per-step loss trace (CSV)");

  auto* eval = app.add_subcommand("eval", "End-point error against ground truth");
  eval->add_option("flow", flow_path, "Estimated flow (.flo)")->required();
  eval->add_option("gt", gt_path, "Ground truth (.flo)")->required();
  eval->add_option("--valid", valid_path, "Validity mask image (non-zero = valid)");
  auto* noc_opt = eval->add_option("--noc", noc_path, "Occlusion mask image (non-zero = occluded)");
  eval->add_option("--noc-from-backward", noc_backward_path,
                   "Estimate the occlusion mask from this backward flow (.flo)")
      ->excludes(noc_opt);

  auto* viz = app.add_subcommand("viz", "Render a flow field with the colour wheel");
  viz->add_option("flow", flow_path, "Flow (.flo)")->required();
  viz->add_option("--out", out_png, "Output PNG")->required();
  viz->add_option("--max-mag", max_mag, "Saturation magnitude in pixels (default: 99th percentile)");

  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient verification");
  gradcheck->add_option("--loss", loss, "census|smooth|inter|block|all")
      ->check(CLI::IsMember({"census", "smooth", "inter", "block", "all"}));
  gradcheck->add_option("--probes", probes, "Probes per loss")->check(CLI::PositiveNumber);
  gradcheck->add_option("--seed", seed, "Scene and probe seed");

  auto* oracle_check = app.add_subcommand("oracle-check", "Cross-check geometric predicates");
  oracle_check->add_option("--samples", samples, "Segment pairs (quads = samples / 10)")
      ->check(CLI::PositiveNumber);
  oracle_check->add_option("--seed", seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    if (*losses) return cmd_losses(img1, img2, flow_path, back_path, cfg_path, out);
    if (*optimize) return cmd_optimize(img1, img2, out_fwd, out_bwd, cfg_path, trace_path, out);
    if (*eval) return cmd_eval(flow_path, gt_path, valid_path, noc_path, noc_backward_path, out);
    if (*viz) return cmd_viz(flow_path, out_png, max_mag, out);
    if (*gradcheck) return cmd_gradcheck(loss, probes, seed, out);
    if (*oracle_check) return cmd_oracle(samples, seed, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const MetricError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const OptimizationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace geoflow
