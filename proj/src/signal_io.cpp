#include "rwkit/signal_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace rwkit::io {
namespace {

constexpr std::array<char, 4> kMagic{'R', 'W', 'K', 'S'};

template <class T>
void put_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFFU);
  }
  os.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  return static_cast<T>(v);
}

double parse_double(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) {
    throw ShapeError("signal csv: bad number '" + token + "' on line " + std::to_string(line));
  }
  return v;
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const SignalVector& x, std::string_view comment) {
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string line; std::getline(lines, line);) {
      os << "# " << line << '\n';
    }
  }
  const Shape& s = x.shape();
  os << "# shape channels=" << s.channels << " rows=" << s.rows << " cols=" << s.cols << " grid=" << (s.grid ? 1 : 0)
     << '\n';
  os << "index,real,imag\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << i << ',' << format_double(x[i].real()) << ',' << format_double(x[i].imag()) << '\n';
  }
}

SignalVector read_csv(std::istream& is) {
  std::optional<Shape> shape;
  ComplexVector values;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      if (line.rfind("# shape ", 0) == 0) {
        Shape s;
        int grid = 0;
        if (std::sscanf(line.c_str(), "# shape channels=%zu rows=%zu cols=%zu grid=%d", &s.channels, &s.rows, &s.cols,
                        &grid) != 4) {
          throw ShapeError("signal csv: malformed shape line " + std::to_string(lineno));
        }
        s.grid = grid != 0;
        shape = s;
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (line == "index,real,imag") {
        continue;
      }
    }
    std::istringstream fields(line);
    std::string idx, re, im;
    if (!std::getline(fields, idx, ',') || !std::getline(fields, re, ',')) {
      throw ShapeError("signal csv: expected index,real[,imag] on line " + std::to_string(lineno));
    }
    std::getline(fields, im, ',');
    if (static_cast<std::size_t>(parse_double(idx, lineno)) != values.size()) {
      throw ShapeError("signal csv: indices must be consecutive from 0 (line " + std::to_string(lineno) + ")");
    }
    values.emplace_back(parse_double(re, lineno), im.empty() ? 0.0 : parse_double(im, lineno));
  }
  const Shape s = shape.value_or(Shape::line(values.size()));
  return {s, std::move(values)};
}

void write_binary(std::ostream& os, const SignalVector& x) {
  const Shape& s = x.shape();
  if (s.channels > 0xFFFFU || s.rows > 0xFFFFFFFFU || s.cols > 0xFFFFFFFFU) {
    throw ShapeError("signal binary: shape exceeds header field widths");
  }
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint8_t>(os, 1);
  put_le<std::uint8_t>(os, s.grid ? 1 : 0);
  put_le<std::uint16_t>(os, static_cast<std::uint16_t>(s.channels));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.rows));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.cols));
  for (const auto& v : x.values()) {
    put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v.real()));
    put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v.imag()));
  }
}

SignalVector read_binary(std::istream& is) {
  std::array<unsigned char, 16> header{};
  if (!is.read(reinterpret_cast<char*>(header.data()), header.size())) {
    throw ShapeError("signal binary: truncated header");
  }
  if (std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) {
    throw ShapeError("signal binary: bad magic");
  }
  if (header[4] != 1) {
    throw ShapeError("signal binary: unsupported version " + std::to_string(header[4]));
  }
  Shape s;
  s.grid = header[5] != 0;
  s.channels = get_le<std::uint16_t>(header.data() + 6);
  s.rows = get_le<std::uint32_t>(header.data() + 8);
  s.cols = get_le<std::uint32_t>(header.data() + 12);
  ComplexVector values(s.size());
  std::array<unsigned char, 16> pair{};
  for (auto& v : values) {
    if (!is.read(reinterpret_cast<char*>(pair.data()), pair.size())) {
      throw ShapeError("signal binary: truncated payload");
    }
    v = {std::bit_cast<double>(get_le<std::uint64_t>(pair.data())),
         std::bit_cast<double>(get_le<std::uint64_t>(pair.data() + 8))};
  }
  return {s, std::move(values)};
}

void write_signal(const std::filesystem::path& path, const SignalVector& x, std::string_view comment) {
  const bool binary = path.extension() == ".rwb";
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  if (binary) {
    write_binary(os, x);
  } else {
    write_csv(os, x, comment);
  }
}

SignalVector read_signal(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  const bool binary = is.gcount() == 4 && magic == kMagic;
  is.clear();
  is.seekg(0);
  return binary ? read_binary(is) : read_csv(is);
}

} // namespace rwkit::io
