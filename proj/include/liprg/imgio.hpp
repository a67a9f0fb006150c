#pragma once

// Image ingestion (PGM/PPM, LIPF float grids) and result emission
// (binary PGM masks, PPM overlays, JSON run statistics).
//
// LIPF is a plain-text format carrying real-valued gray tones exactly:
//
//   LIPF <width> <height> <M>
//   <width*height whitespace-separated reals, row-major>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "liprg/error.hpp"
#include "liprg/grower.hpp"
#include "liprg/image.hpp"
#include "liprg/region.hpp"

namespace liprg::io {

namespace detail {

// Skips whitespace and '#' comments; returns false at end of stream.
inline bool skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == std::char_traits<char>::eof()) return false;
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return true;
    }
  }
}

inline std::string next_token(std::istream& in, const char* what) {
  if (!skip_separators(in)) throw Error(ErrorKind::Io, std::string("truncated data reading ") + what);
  std::string tok;
  while (in.peek() != std::char_traits<char>::eof() && !std::isspace(in.peek()) &&
         in.peek() != '#') {
    tok.push_back(static_cast<char>(in.get()));
  }
  return tok;
}

inline long parse_int(const std::string& tok, const char* what) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0') {
    throw Error(ErrorKind::Format, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  return v;
}

inline double parse_real(const std::string& tok, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || *end != '\0') {
    throw Error(ErrorKind::Format, std::string("expected real ") + what + ", got '" + tok + "'");
  }
  return v;
}

inline int parse_dimension(std::istream& in, const char* what) {
  const long v = parse_int(next_token(in, what), what);
  if (v < 1 || v > std::numeric_limits<int>::max() / 2) {
    throw Error(ErrorKind::Format, std::string("invalid ") + what + " " + std::to_string(v));
  }
  return static_cast<int>(v);
}

inline double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

inline GrayImage read_pnm(std::istream& in, char kind) {
  const bool ascii = kind == '2' || kind == '3';
  const bool color = kind == '3' || kind == '6';
  const int w = parse_dimension(in, "width");
  const int h = parse_dimension(in, "height");
  const long maxval = parse_int(next_token(in, "maxval"), "maxval");
  if (maxval < 1 || maxval > 65535) {
    throw Error(ErrorKind::Format, "invalid maxval " + std::to_string(maxval));
  }
  if (maxval > 255) {
    throw Error(ErrorKind::UnsupportedDepth,
                "maxval " + std::to_string(maxval) + " exceeds 255");
  }

  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  const std::size_t channels = color ? 3 : 1;
  std::vector<double> samples(n * channels);
  if (ascii) {
    for (double& s : samples) {
      const long v = parse_int(next_token(in, "sample"), "sample");
      if (v < 0 || v > maxval) {
        throw Error(ErrorKind::Format, "sample " + std::to_string(v) + " outside [0, maxval]");
      }
      s = static_cast<double>(v);
    }
  } else {
    // Exactly one whitespace byte separates the header from the raster.
    if (!std::isspace(in.get())) throw Error(ErrorKind::Format, "missing raster separator");
    std::vector<unsigned char> raw(samples.size());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      throw Error(ErrorKind::Io, "truncated raster: expected " + std::to_string(raw.size()) +
                                     " bytes, got " + std::to_string(in.gcount()));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) samples[i] = raw[i];
  }

  if (!color) return GrayImage(w, h, kEightBit, std::move(samples));
  std::vector<double> px(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = luma(samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]);
  }
  return GrayImage(w, h, kEightBit, std::move(px));
}

inline GrayImage read_lipf(std::istream& in) {
  const int w = parse_dimension(in, "width");
  const int h = parse_dimension(in, "height");
  const GrayScaleModel m(parse_real(next_token(in, "scale bound"), "scale bound"));
  std::vector<double> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (double& v : px) {
    v = parse_real(next_token(in, "pixel"), "pixel");
    m.check(v);
  }
  return GrayImage(w, h, m, std::move(px));
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  return out;
}

inline void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

inline unsigned char to_byte(double v) {
  const double r = std::round(v);
  return static_cast<unsigned char>(r < 0.0 ? 0.0 : (r > 255.0 ? 255.0 : r));
}

}  // namespace detail

/// Reads PGM (P2/P5), PPM (P3/P6, converted by BT.601 luma) or LIPF.
/// 8-bit formats map sample v to gray tone v under M = 256.
inline GrayImage read_image(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 2);
  if (in.gcount() != 2) throw Error(ErrorKind::Io, "empty or truncated file");
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '3' || magic[1] == '5' ||
                          magic[1] == '6')) {
    return detail::read_pnm(in, magic[1]);
  }
  if (magic[0] == 'L' && magic[1] == 'I') {
    in.read(magic + 2, 2);
    if (in.gcount() == 2 && magic[2] == 'P' && magic[3] == 'F') return detail::read_lipf(in);
  }
  throw Error(ErrorKind::Format, "unknown magic number");
}

inline GrayImage read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return read_image(in);
}

/// Binary PGM with each tone rounded and clamped to 0..255.
inline void write_pgm(const GrayImage& img, std::ostream& out) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> raw(img.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = detail::to_byte(img.pixels()[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

inline void write_pgm(const GrayImage& img, const std::string& path) {
  auto out = detail::open_out(path);
  write_pgm(img, out);
  detail::finish(out, path);
}

/// LIPF with 17 significant digits, so values round-trip exactly.
inline void write_lipf(const GrayImage& img, std::ostream& out) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", img.model().bound());
  out << "LIPF " << img.width() << ' ' << img.height() << ' ' << buf << '\n';
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      std::snprintf(buf, sizeof buf, "%.17g", img.at(x, y));
      if (x) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

inline void write_lipf(const GrayImage& img, const std::string& path) {
  auto out = detail::open_out(path);
  write_lipf(img, out);
  detail::finish(out, path);
}

/// PGM P5 mask: members 255, everything else 0.
inline void write_mask(const Region& region, std::ostream& out) {
  out << "P5\n" << region.width() << ' ' << region.height() << "\n255\n";
  std::vector<unsigned char> raw(static_cast<std::size_t>(region.width()) *
                                     static_cast<std::size_t>(region.height()),
                                 0);
  for (const Coord p : region.members()) {
    raw[static_cast<std::size_t>(p.y) * static_cast<std::size_t>(region.width()) +
        static_cast<std::size_t>(p.x)] = 255;
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

inline void write_mask(const Region& region, const std::string& path) {
  auto out = detail::open_out(path);
  write_mask(region, out);
  detail::finish(out, path);
}

/// Members of the region described by a mask image: every nonzero pixel.
inline Region region_from_mask(const GrayImage& mask, const GrayImage& img) {
  if (mask.width() != img.width() || mask.height() != img.height()) {
    throw Error(ErrorKind::Config, "mask is " + std::to_string(mask.width()) + "x" +
                                       std::to_string(mask.height()) + ", image is " +
                                       std::to_string(img.width()) + "x" +
                                       std::to_string(img.height()));
  }
  Region r(img);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.pixels()[i] != 0.0) r.insert(img.coord(i), img);
  }
  return r;
}

/// PPM P6 overlay: gray background, members blended halfway toward red,
/// and a plus-shaped 5-pixel pure red cross on the seed.
inline void write_overlay(const GrayImage& img, const Region& region, Coord seed,
                          std::ostream& out) {
  const std::size_t n = img.size();
  std::vector<unsigned char> rgb(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = img.pixels()[i];
    const bool member = region.contains(img.coord(i));
    rgb[3 * i] = detail::to_byte(member ? (v + 255.0) / 2.0 : v);
    rgb[3 * i + 1] = detail::to_byte(member ? v / 2.0 : v);
    rgb[3 * i + 2] = detail::to_byte(member ? v / 2.0 : v);
  }
  static constexpr Coord cross[] = {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  for (const Coord d : cross) {
    const Coord q{seed.x + d.x, seed.y + d.y};
    if (!img.contains(q)) continue;
    const std::size_t i = img.index(q);
    rgb[3 * i] = 255;
    rgb[3 * i + 1] = 0;
    rgb[3 * i + 2] = 0;
  }
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
}

inline void write_overlay(const GrayImage& img, const Region& region, Coord seed,
                          const std::string& path) {
  auto out = detail::open_out(path);
  write_overlay(img, region, seed, out);
  detail::finish(out, path);
}

struct SegmentationStats {
  Coord seed;
  CriterionKind criterion = CriterionKind::LipAdditive;
  double threshold = 0.0;
  std::size_t iterations = 0;
  std::size_t region_size = 0;
  double final_heterogeneity = 0.0;
  Termination termination = Termination::Fixpoint;
};

inline SegmentationStats make_stats(const GrowthResult& r, Coord seed,
                                    const CriterionConfig& crit) {
  return {seed, crit.kind, crit.threshold, r.iterations, r.region.size(),
          r.final_heterogeneity, r.termination};
}

/// JSON number, or the string "inf" / "-inf" for infinities.
inline nlohmann::ordered_json json_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline nlohmann::ordered_json to_json(const SegmentationStats& s) {
  nlohmann::ordered_json j;
  j["seed"] = {s.seed.x, s.seed.y};
  j["criterion"] = to_string(s.criterion);
  j["threshold"] = json_real(s.threshold);
  j["iterations"] = s.iterations;
  j["region_size"] = s.region_size;
  j["final_heterogeneity"] = json_real(s.final_heterogeneity);
  j["termination"] = to_string(s.termination);
  return j;
}

inline void write_stats(const SegmentationStats& stats, const std::string& path) {
  auto out = detail::open_out(path);
  out << to_json(stats).dump(2) << '\n';
  detail::finish(out, path);
}

}  // namespace liprg::io
