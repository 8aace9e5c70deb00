#pragma once

#include <fstream>
#include <string>

#include "adadeband/frame.hpp"

namespace adadeband {

namespace detail {

// Next header token, skipping whitespace and '#' comment lines.
inline std::string pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw FormatError("pgm: truncated header");
  return tok;
}

}  // namespace detail

/// Reads a binary (P5) 8-bit PGM.
inline LumaFrame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("pgm: cannot open " + path);
  if (detail::pgm_token(in) != "P5")
    throw FormatError("pgm: not a binary PGM (P5): " + path);
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(detail::pgm_token(in));
    h = std::stoi(detail::pgm_token(in));
    maxval = std::stoi(detail::pgm_token(in));
  } catch (const std::exception&) {
    throw FormatError("pgm: malformed header: " + path);
  }
  if (w < 1 || h < 1) throw FormatError("pgm: bad dimensions: " + path);
  if (maxval < 1 || maxval > 255)
    throw FormatError("pgm: only 8-bit (maxval <= 255) supported: " + path);
  LumaFrame out(w, h, 8);
  std::vector<uint8_t> buf(out.samples.size());
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size()))
    throw FormatError("pgm: truncated pixel data: " + path);
  for (size_t k = 0; k < buf.size(); ++k) out.samples[k] = buf[k];
  return out;
}

inline void write_pgm(const std::string& path, const LumaFrame& frame) {
  if (frame.bit_depth != 8)
    throw FormatError("pgm: only 8-bit frames are written");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("pgm: cannot open for writing " + path);
  out << "P5\n" << frame.width << ' ' << frame.height << "\n255\n";
  std::vector<uint8_t> buf(frame.samples.size());
  for (size_t k = 0; k < buf.size(); ++k)
    buf[k] = static_cast<uint8_t>(frame.samples[k]);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("pgm: write failed: " + path);
}

}  // namespace adadeband
