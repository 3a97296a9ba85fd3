#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rwkit/signal.hpp"

namespace rwkit::io {

// Text format, one sample per line after the header:
//   # <free comment lines>
//   # shape channels=<c> rows=<r> cols=<n> grid=<0|1>
//   index,real,imag
//   0,<real>,<imag>
// Values are printed with %.17g so that reading back is exact.
//
// Binary format, little-endian:
//   bytes 0-3   magic "RWKS"
//   byte  4     version (1)
//   byte  5     grid flag (0 or 1)
//   bytes 6-7   channels (u16)
//   bytes 8-11  rows (u32)
//   bytes 12-15 cols (u32)
//   then channels*rows*cols pairs of f64 (real, imag), channel-major, row-major.

void write_csv(std::ostream& os, const SignalVector& x, std::string_view comment = {});
SignalVector read_csv(std::istream& is);

void write_binary(std::ostream& os, const SignalVector& x);
SignalVector read_binary(std::istream& is);

/// Binary if the path ends in ".rwb", text otherwise.
void write_signal(const std::filesystem::path& path, const SignalVector& x, std::string_view comment = {});
/// Detects the format from the magic bytes.
SignalVector read_signal(const std::filesystem::path& path);

std::string format_double(double v);

} // namespace rwkit::io
