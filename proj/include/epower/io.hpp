#pragma once

#include "epower/core.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace epower {

/// Malformed text input (gate files, gate names, numeric tokens).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double value);
double parse_double(std::string_view token);

/// "re+imj" / "re-imj".
std::string format_complex(Complex value);
Complex parse_complex(std::string_view token);

/// Gate file:
///
///   dims: d1 d2 ... dn
///   <D lines of D whitespace-separated re+imj tokens, row-major>
///
/// Blank lines and lines starting with '#' are ignored. Throws ParseError on
/// malformed text and ValidationError when the matrix is not unitary.
GateMatrix parse_gate_text(std::string_view text);
GateMatrix read_gate_file(const std::string& path);
std::string format_gate_text(const GateMatrix& gate);

/// Builtin names: identity, swap, fredkin, toffoli, deutsch:<theta>,
/// gn:<n>:<alpha>, h_d8, h_u8, diag:<phi1,...,phi8>. `dims` sets the space
/// of identity and swap and otherwise reinterprets the factorization.
GateMatrix builtin_gate(std::string_view name, const std::optional<SubsystemDims>& dims = std::nullopt);
/// True when the part of `name` before the first ':' is a builtin gate name.
bool is_builtin_gate_name(std::string_view name);

std::string read_text_file(const std::string& path);
/// Writes the whole buffer or throws std::runtime_error.
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace epower
