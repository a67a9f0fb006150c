// liprg: seeded region growing with LIP heterogeneity criteria.
//
//   liprg grow    --input IMG --seed X,Y --criterion range|lip-add|lip-mul --threshold T
//                 [--connectivity 4|8] [--max-iters N] [--mask M.pgm] [--overlay O.ppm]
//                 [--stats S.json]
//   liprg synth   two-plateau|bias|gain|bias-gradient ...
//   liprg metrics --input IMG --mask M.pgm
//
// Exit codes: 0 ok, 2 bad arguments or configuration, 3 I/O or format error,
// 4 seed outside the image.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "liprg/liprg.hpp"

namespace {

using liprg::Error;
using liprg::ErrorKind;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitSeed = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Format:
    case ErrorKind::UnsupportedDepth:
    case ErrorKind::InvalidGrayTone:
      return kExitIo;
    case ErrorKind::Seed:
      return kExitSeed;
    default:
      return kExitUsage;
  }
}

liprg::Coord parse_seed(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorKind::Config, "seed must be X,Y (column,row), got '" + text + "'");
  }
  try {
    std::size_t used_x = 0, used_y = 0;
    const std::string xs = text.substr(0, comma);
    const std::string ys = text.substr(comma + 1);
    const int x = std::stoi(xs, &used_x);
    const int y = std::stoi(ys, &used_y);
    if (used_x != xs.size() || used_y != ys.size()) throw std::invalid_argument("trailing");
    return {x, y};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Config, "seed must be X,Y (column,row), got '" + text + "'");
  }
}

struct GrowArgs {
  std::string input;
  std::string seed;
  std::string criterion;
  double threshold = 0.0;
  int connectivity = 8;
  std::optional<std::size_t> max_iters;
  std::string mask, overlay, stats;
};

int cmd_grow(const GrowArgs& a) {
  const liprg::CriterionConfig crit{liprg::parse_criterion(a.criterion), a.threshold};
  crit.validate();
  const liprg::Coord seed = parse_seed(a.seed);
  if (a.mask.empty() && a.overlay.empty() && a.stats.empty()) {
    throw Error(ErrorKind::Config, "at least one of --mask, --overlay, --stats is required");
  }
  const auto conn = a.connectivity == 4 ? liprg::Connectivity::N4 : liprg::Connectivity::N8;

  const liprg::GrayImage img = liprg::io::read_image(a.input);
  const liprg::GrowthResult result = liprg::grow(img, seed, crit, conn, a.max_iters);

  if (!a.mask.empty()) liprg::io::write_mask(result.region, a.mask);
  if (!a.overlay.empty()) liprg::io::write_overlay(img, result.region, seed, a.overlay);
  if (!a.stats.empty()) {
    liprg::io::write_stats(liprg::io::make_stats(result, seed, crit), a.stats);
  }
  std::cout << "region_size=" << result.region.size() << " iterations=" << result.iterations
            << " final_heterogeneity=" << liprg::io::json_real(result.final_heterogeneity).dump()
            << " termination=" << liprg::to_string(result.termination) << '\n';
  return kExitOk;
}

struct SynthArgs {
  std::string format = "lipf";
  std::string out;
  // two-plateau
  int width = 64, height = 32, ramp = 0;
  double val_a = 20.0, val_b = 60.0, bound = 256.0;
  // transforms
  std::string input;
  double c = 0.0, lambda = 1.0, c_left = 0.0, c_right = 0.0;
};

void write_synth(const liprg::GrayImage& img, const SynthArgs& a) {
  if (a.format == "pgm") {
    liprg::io::write_pgm(img, a.out);
  } else {
    liprg::io::write_lipf(img, a.out);
  }
}

void require_tone(const liprg::GrayImage& img, double v, const char* name) {
  if (!img.model().contains(v)) {
    throw Error(ErrorKind::Config, std::string(name) + " must lie in [0, M)");
  }
}

int cmd_metrics(const std::string& input, const std::string& mask_path) {
  const liprg::GrayImage img = liprg::io::read_image(input);
  const liprg::GrayImage mask = liprg::io::read_image(mask_path);
  const liprg::Region r = liprg::io::region_from_mask(mask, img);
  if (r.empty()) throw Error(ErrorKind::EmptyRegion, "mask selects no pixels");
  nlohmann::ordered_json j;
  j["range"] = liprg::io::json_real(liprg::heterogeneity_range(r, img));
  j["lip_add"] = liprg::io::json_real(liprg::heterogeneity_additive(r, img));
  j["lip_mul"] = liprg::io::json_real(liprg::heterogeneity_multiplicative(r, img));
  std::cout << j.dump() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded region growing with logarithmic (LIP) heterogeneity criteria", "liprg"};
  app.require_subcommand(1);

  GrowArgs grow;
  auto* g = app.add_subcommand("grow", "Grow a region from a seed pixel");
  g->add_option("--input", grow.input, "Input image (PGM, PPM or LIPF)")->required();
  g->add_option("--seed", grow.seed, "Seed pixel as X,Y: 0-based column,row")->required();
  g->add_option("--criterion", grow.criterion, "range | lip-add | lip-mul")
      ->required()
      ->check(CLI::IsMember({"range", "lip-add", "lip-mul"}));
  g->add_option("--threshold", grow.threshold, "Heterogeneity threshold t (t >= 1 for lip-mul)")
      ->required();
  g->add_option("--connectivity", grow.connectivity, "Neighbourhood: 4 or 8")
      ->check(CLI::IsMember({4, 8}));
  g->add_option("--max-iters", grow.max_iters, "Round limit (default width*height)");
  g->add_option("--mask", grow.mask, "Write the region as a PGM mask");
  g->add_option("--overlay", grow.overlay, "Write a PPM overlay with the seed cross");
  g->add_option("--stats", grow.stats, "Write run statistics as JSON");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate or transform synthetic images");
  s->require_subcommand(1);
  auto add_output = [&synth](CLI::App* cmd) {
    cmd->add_option("--out", synth.out, "Output path")->required();
    cmd->add_option("--format", synth.format, "lipf (exact) or pgm (rounded)")
        ->check(CLI::IsMember({"lipf", "pgm"}));
  };
  auto* plateau = s->add_subcommand("two-plateau", "Two plateaus joined by a linear ramp");
  plateau->add_option("--width", synth.width)->required();
  plateau->add_option("--height", synth.height)->required();
  plateau->add_option("--val-a", synth.val_a, "Left plateau value")->required();
  plateau->add_option("--val-b", synth.val_b, "Right plateau value")->required();
  plateau->add_option("--ramp", synth.ramp, "Ramp width in columns");
  plateau->add_option("--m", synth.bound, "Scale bound M");
  add_output(plateau);
  auto* bias = s->add_subcommand("bias", "Pixelwise LIP addition of a constant");
  bias->add_option("--input", synth.input)->required();
  bias->add_option("--c", synth.c, "Constant gray tone")->required();
  add_output(bias);
  auto* gain = s->add_subcommand("gain", "Pixelwise LIP scalar multiplication");
  gain->add_option("--input", synth.input)->required();
  gain->add_option("--lambda", synth.lambda, "Positive scalar")->required();
  add_output(gain);
  auto* gradient = s->add_subcommand("bias-gradient", "Column-wise linear LIP bias");
  gradient->add_option("--input", synth.input)->required();
  gradient->add_option("--c-left", synth.c_left)->required();
  gradient->add_option("--c-right", synth.c_right)->required();
  add_output(gradient);

  std::string metrics_input, metrics_mask;
  auto* m = app.add_subcommand("metrics", "Heterogeneity of a masked region as JSON");
  m->add_option("--input", metrics_input)->required();
  m->add_option("--mask", metrics_mask, "PGM mask; nonzero pixels are members")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "liprg: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_grow(grow);
    if (m->parsed()) return cmd_metrics(metrics_input, metrics_mask);
    if (plateau->parsed()) {
      const liprg::synth::PlateauSpec spec{synth.width, synth.height, synth.val_a, synth.val_b,
                                           synth.ramp};
      write_synth(liprg::synth::make_two_plateau(spec, liprg::GrayScaleModel(synth.bound)), synth);
      return kExitOk;
    }
    const liprg::GrayImage img = liprg::io::read_image(synth.input);
    if (bias->parsed()) {
      require_tone(img, synth.c, "--c");
      write_synth(liprg::synth::apply_lip_bias(img, synth.c), synth);
    } else if (gain->parsed()) {
      write_synth(liprg::synth::apply_lip_gain(img, synth.lambda), synth);
    } else {
      require_tone(img, synth.c_left, "--c-left");
      require_tone(img, synth.c_right, "--c-right");
      write_synth(liprg::synth::apply_lip_bias_gradient(img, synth.c_left, synth.c_right), synth);
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "liprg: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "liprg: " << e.what() << '\n';
    return kExitIo;
  }
}
