#pragma once

#include <filesystem>
#include <iosfwd>

#include "elri/field.hpp"

namespace elri::io {

/// Text format: header line "# n=<N> length=6.2831853071795862" followed by
/// one value per line at 17 significant digits.
void write_csv(const Field& f, std::ostream& out);
Field read_csv(std::istream& in);

/// Binary format: magic "KDVF", u32 N, u32 reserved (0), then N
/// little-endian IEEE-754 doubles. Round trip is bit-exact.
void write_binary(const Field& f, std::ostream& out);
Field read_binary(std::istream& in);

void save(const Field& f, const std::filesystem::path& path);
/// Dispatches on extension: ".bin"/".kdvf" binary, otherwise CSV.
Field load(const std::filesystem::path& path);

}  // namespace elri::io
