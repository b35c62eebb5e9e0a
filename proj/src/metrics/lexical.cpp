#include "testlab/metrics/lexical.hpp"

#include <set>
#include <string>

namespace testlab::metrics {

std::array<std::uint64_t, 17> LexicalMetrics::values() const {
  return {notk, notku, noid,   noidu,  nokw,    nokwu,  noass, noop,   noopu,
          nosc, nodot, norepr, nocjst, nocujst, noexst, nonew, nosuper};
}

bool is_assignment_operator(std::string_view op) {
  return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "%=" ||
         op == "&=" || op == "|=" || op == "^=" || op == "<<=" || op == ">>=" || op == ">>>=";
}

LexicalMetrics compute_lexical_metrics(const TokenStream& stream) {
  LexicalMetrics m;
  std::set<std::string> all, ids, kws, ops;
  const auto code = stream.code_tokens();
  for (std::size_t i = 0; i < code.size(); ++i) {
    const Token& t = code[i];
    ++m.notk;
    all.insert(t.text);
    switch (t.kind) {
      case TokenKind::Identifier:
        ++m.noid;
        ids.insert(t.text);
        if ((t.text == "print" || t.text == "println" || t.text == "printf") &&
            i + 1 < code.size() && code[i + 1].text == "(") {
          ++m.norepr;
        }
        break;
      case TokenKind::Keyword:
        ++m.nokw;
        kws.insert(t.text);
        if (t.text == "return") {
          ++m.norepr;
          ++m.nocujst;
        } else if (t.text == "if" || t.text == "for" || t.text == "while" || t.text == "case") {
          ++m.nocjst;
        } else if (t.text == "break" || t.text == "continue" || t.text == "goto") {
          ++m.nocujst;
        } else if (t.text == "throw" || t.text == "throws" || t.text == "try" ||
                   t.text == "catch" || t.text == "finally") {
          ++m.noexst;
        } else if (t.text == "new") {
          ++m.nonew;
        } else if (t.text == "super") {
          ++m.nosuper;
        }
        break;
      case TokenKind::Operator:
        if (is_assignment_operator(t.text)) {
          ++m.noass;
        } else {
          ++m.noop;
          ops.insert(t.text);
          if (t.text == "?") ++m.nocjst;
        }
        break;
      case TokenKind::Separator:
        if (t.text == ";") ++m.nosc;
        if (t.text == ".") ++m.nodot;
        break;
      case TokenKind::Literal:
      case TokenKind::Comment:
        break;
    }
  }
  m.notku = all.size();
  m.noidu = ids.size();
  m.nokwu = kws.size();
  m.noopu = ops.size();
  return m;
}

}  // namespace testlab::metrics
