#pragma once

#include <string>

namespace viscowave {

/// Fixed float formatting for all file output: %.17g, C locale, so identical
/// runs produce byte-identical files.
std::string format_g17(double v);

/// FNV-1a 64-bit digest of a string, hex-encoded.
std::string fnv1a_hex(const std::string& data);

} // namespace viscowave
