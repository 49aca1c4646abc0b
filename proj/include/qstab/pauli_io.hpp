#pragma once

// Text and JSON encodings of Pauli elements.
//
// Text: "z^c * X1^a1 Z1^b1 * ... * Xn^an Zn^bn". The printer writes every
// qudit; the parser reads any product of z^k, Xi^k, Zi^k and I factors
// (separated by '*' or spaces) left to right, so "Z1 X1" is accepted and
// reordered with the right phase.

#include <cctype>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qstab/pauli.hpp"

namespace qstab {

inline std::string to_text(const Pauli& p) {
  std::ostringstream os;
  os << "z^" << p.phase();
  for (std::size_t i = 0; i < p.n(); ++i)
    os << " * X" << i + 1 << '^' << p.a()[i] << " Z" << i + 1 << '^' << p.b()[i];
  return os.str();
}

inline Pauli parse_pauli(const std::string& text, Int d, std::size_t n) {
  Pauli acc = Pauli::identity(d, n);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, why + " at offset " + std::to_string(i) + " in \"" + text + "\"");
  };
  auto read_int = [&]() -> Int {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start])))) fail("expected integer");
    return std::stoll(text.substr(start, i - start));
  };
  auto read_exponent = [&]() -> Int {
    if (i < text.size() && text[i] == '^') {
      ++i;
      return read_int();
    }
    return 1;
  };
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
      ++i;
      continue;
    }
    if (ch == 'I') {
      ++i;
      continue;
    }
    if (ch == 'z') {
      ++i;
      acc = multiply(acc, Pauli::scalar(d, n, read_exponent()));
      continue;
    }
    if (ch == 'X' || ch == 'Z') {
      ++i;
      Int q = read_int();
      if (q < 1 || static_cast<std::size_t>(q) > n) fail("qudit index out of range");
      Int e = read_exponent();
      auto k = static_cast<std::size_t>(q - 1);
      acc = multiply(acc, ch == 'X' ? Pauli::X(d, n, k, e) : Pauli::Z(d, n, k, e));
      continue;
    }
    fail(std::string("unexpected character '") + ch + "'");
  }
  return acc;
}

inline nlohmann::json to_json(const Pauli& p) {
  return {{"d", p.d()}, {"n", p.n()}, {"phase", p.phase()}, {"a", p.a()}, {"b", p.b()}};
}

inline Pauli pauli_from_json(const nlohmann::json& j) {
  try {
    Int d = j.at("d").get<Int>();
    auto a = j.at("a").get<Vec>();
    auto b = j.at("b").get<Vec>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != a.size())
      throw Error(ErrorKind::ParseError, "field n disagrees with exponent length");
    return Pauli(d, j.value("phase", Int{0}), a, b);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad Pauli JSON: ") + e.what());
  }
}

}  // namespace qstab
