#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "testlab/metrics/token.hpp"

namespace testlab::metrics {

/// File-level token counters. Comments never contribute.
///
/// Counting rules:
///  - NOTK/NOTKU: all code tokens; uniqueness by exact text.
///  - NOID/NOIDU, NOKW/NOKWU: identifier and keyword tokens.
///  - NOASS: `=` and the compound assignment operators.
///  - NOOP/NOOPU: operator tokens other than assignments. Separators
///    (including `.`) are not operators.
///  - NOSC: `;` tokens. NODOT: `.` tokens.
///  - NOREPR: `return` keywords plus `print`/`println`/`printf` identifiers
///    that are immediately followed by `(`.
///  - NOCJST: `if`, `for`, `while`, `case` keywords and the `?` operator.
///    `do` is excluded because its trailing `while` is already counted.
///  - NOCUJST: `break`, `continue`, `return`, `goto`.
///  - NOEXST: `throw`, `throws`, `try`, `catch`, `finally`.
///  - NONEW: `new`. NOSUPER: `super`.
struct LexicalMetrics {
  std::uint64_t notk = 0;
  std::uint64_t notku = 0;
  std::uint64_t noid = 0;
  std::uint64_t noidu = 0;
  std::uint64_t nokw = 0;
  std::uint64_t nokwu = 0;
  std::uint64_t noass = 0;
  std::uint64_t noop = 0;
  std::uint64_t noopu = 0;
  std::uint64_t nosc = 0;
  std::uint64_t nodot = 0;
  std::uint64_t norepr = 0;
  std::uint64_t nocjst = 0;
  std::uint64_t nocujst = 0;
  std::uint64_t noexst = 0;
  std::uint64_t nonew = 0;
  std::uint64_t nosuper = 0;

  static constexpr std::array<std::string_view, 17> kNames = {
      "NOTK", "NOTKU", "NOID",   "NOIDU",  "NOKW",   "NOKWU", "NOASS", "NOOP",   "NOOPU",
      "NOSC", "NODOT", "NOREPR", "NOCJST", "NOCUJST", "NOEXST", "NONEW", "NOSUPER"};

  /// Values in `kNames` order.
  std::array<std::uint64_t, 17> values() const;
  bool operator==(const LexicalMetrics&) const = default;
};

bool is_assignment_operator(std::string_view op);

LexicalMetrics compute_lexical_metrics(const TokenStream& stream);

}  // namespace testlab::metrics
