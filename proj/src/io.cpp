#include "epower/io.hpp"

#include "epower/gates.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace epower {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

std::string format_complex(Complex value) {
  std::string out = format_double(value.real());
  out += std::signbit(value.imag()) ? '-' : '+';
  out += format_double(std::abs(value.imag()));
  out += 'j';
  return out;
}

Complex parse_complex(std::string_view token) {
  token = trim(token);
  if (token.size() < 2 || token.back() != 'j') {
    throw ParseError("expected a complex token re+imj, got '" + std::string(token) + "'");
  }
  const std::string_view body = token.substr(0, token.size() - 1);
  // the sign that separates real and imaginary parts is not leading and not an exponent sign
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    throw ParseError("complex token lacks an imaginary part: '" + std::string(token) + "'");
  }
  const double re = parse_double(body.substr(0, split));
  const std::string_view im_text = body.substr(split + 1);
  if (im_text.empty() || im_text.front() == '+' || im_text.front() == '-') {
    throw ParseError("malformed imaginary part in '" + std::string(token) + "'");
  }
  const double im = parse_double(im_text);
  return {re, body[split] == '-' ? -im : im};
}

GateMatrix parse_gate_text(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::string_view line : split_on(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("gate file is empty");

  constexpr std::string_view kHeader = "dims:";
  if (lines.front().substr(0, kHeader.size()) != kHeader) {
    throw ParseError("gate file must start with 'dims:'");
  }
  std::vector<int> dims_values;
  for (auto tok : split_ws(lines.front().substr(kHeader.size()))) {
    const int d = parse_int(tok);
    if (d < 1) throw ParseError("local dimensions must be positive");
    dims_values.push_back(d);
  }
  if (dims_values.empty()) throw ParseError("dims line lists no dimensions");
  if (static_cast<int>(dims_values.size()) > kMaxParties) throw ParseError("too many parties");
  SubsystemDims dims(std::move(dims_values));

  const Index dim = dims.total();
  if (static_cast<Index>(lines.size()) - 1 != dim) {
    throw ParseError("expected " + std::to_string(dim) + " matrix rows, found " +
                     std::to_string(lines.size() - 1));
  }
  Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const auto tokens = split_ws(lines[static_cast<std::size_t>(i + 1)]);
    if (static_cast<Index>(tokens.size()) != dim) {
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(tokens.size()) +
                       " entries, expected " + std::to_string(dim));
    }
    for (Index j = 0; j < dim; ++j) m(i, j) = parse_complex(tokens[static_cast<std::size_t>(j)]);
  }
  return GateMatrix(std::move(m), std::move(dims));
}

GateMatrix read_gate_file(const std::string& path) { return parse_gate_text(read_text_file(path)); }

std::string format_gate_text(const GateMatrix& gate) {
  std::string out = "dims:";
  for (int d : gate.dims().values()) out += " " + std::to_string(d);
  out += '\n';
  const Matrix& m = gate.matrix();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_complex(m(i, j));
    }
    out += '\n';
  }
  return out;
}

GateMatrix builtin_gate(std::string_view name, const std::optional<SubsystemDims>& dims) {
  const auto parts = split_on(name, ':');
  const std::string_view head = parts.front();
  auto expect_args = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw ParseError("gate '" + std::string(head) + "' takes " + std::to_string(n) + " argument(s)");
    }
  };
  auto reshape = [&](GateMatrix g) { return dims ? g.with_dims(*dims) : g; };

  if (head == "identity") {
    expect_args(0);
    return identity_gate(dims.value_or(SubsystemDims{2, 2, 2}));
  }
  if (head == "swap") {
    expect_args(0);
    const SubsystemDims d = dims.value_or(SubsystemDims{2, 2});
    if (d.parties() != 2 || d[0] != d[1]) throw ArgumentError("swap needs dims 'd d'");
    return swap_gate(d[0]);
  }
  if (head == "fredkin" || head == "toffoli" || head == "h_d8" || head == "h_u8") {
    expect_args(0);
    if (head == "fredkin") return reshape(fredkin());
    if (head == "toffoli") return reshape(toffoli());
    return reshape(head == "h_d8" ? h_d8() : h_u8());
  }
  if (head == "deutsch") {
    expect_args(1);
    return reshape(deutsch(parse_double(parts[1])));
  }
  if (head == "gn") {
    expect_args(2);
    return reshape(g_n(parse_int(parts[1]), parse_double(parts[2])));
  }
  if (head == "diag") {
    expect_args(1);
    const auto values = split_on(parts[1], ',');
    if (values.size() != 8) throw ParseError("diag takes eight comma-separated phases");
    DiagonalPhases phis{};
    for (std::size_t k = 0; k < 8; ++k) phis[k] = parse_double(values[k]);
    return reshape(diagonal_gate(phis));
  }
  throw ParseError("unknown gate '" + std::string(name) + "'");
}

bool is_builtin_gate_name(std::string_view name) {
  static constexpr std::array<std::string_view, 9> kNames{"identity", "swap",    "fredkin", "toffoli", "h_d8",
                                                          "h_u8",     "deutsch", "gn",      "diag"};
  const std::string_view head = name.substr(0, name.find(':'));
  return std::find(kNames.begin(), kNames.end(), head) != kNames.end();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace epower
