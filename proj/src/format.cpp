#include "xcom/format.hpp"

#include <sstream>

namespace xcom {

namespace {

std::string literal_text(const Literal& lit) {
  if (auto* b = std::get_if<bool>(&lit)) return *b ? "true" : "false";
  return to_string(std::get<Integer>(lit));
}

// Binary operands: the left side must bind strictly tighter than the
// operator, the right side at least as tight (chains associate right).
std::string operand(const Exp& e, int min_level) {
  std::string text = format_exp(e);
  if (auto* b = std::get_if<BinExp>(&e.node); b && op_level(b->op) < min_level)
    return "(" + text + ")";
  return text;
}

}  // namespace

std::string format_exp(const Exp& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          return literal_text(n.value);
        } else if constexpr (std::is_same_v<T, Var>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, BinExp>) {
          int lvl = op_level(n.op);
          return operand(*n.left, lvl + 1) + " " + std::string(op_symbol(n.op)) + " " +
                 operand(*n.right, lvl);
        } else if constexpr (std::is_same_v<T, New>) {
          return "new " + n.type_name;
        } else {
          // Field reference binds tightest; anything but an atom needs parens.
          const Exp& t = *n.target;
          std::string target = format_exp(t);
          if (std::holds_alternative<BinExp>(t.node)) target = "(" + target + ")";
          return target + "." + n.field;
        }
      },
      e.node);
}

std::string format_flat(const Statement& s) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          std::string out = "begin";
          for (const auto& c : n.statements) out += " " + format_flat(*c);
          return out + " end";
        } else if constexpr (std::is_same_v<T, TypeDeclaration>) {
          std::string out = "type " + n.name + " is";
          for (const auto& f : n.field_names) out += " " + f;
          return out + " end";
        } else if constexpr (std::is_same_v<T, ValueDeclaration>) {
          return "value " + n.name + " is " + format_exp(*n.init) + " end";
        } else if constexpr (std::is_same_v<T, While>) {
          return "while " + format_exp(*n.test) + " do " + format_flat(*n.body) + " end";
        } else if constexpr (std::is_same_v<T, If>) {
          std::string out = "if " + format_exp(*n.test) + " then " + format_flat(*n.then_part);
          if (n.else_part) out += " else " + format_flat(*n.else_part);
          return out + " end";
        } else if constexpr (std::is_same_v<T, Update>) {
          return n.name + " := " + format_exp(*n.value) + ";";
        } else {
          const Exp& t = *n.target;
          std::string target = format_exp(t);
          if (std::holds_alternative<BinExp>(t.node)) target = "(" + target + ")";
          return target + "." + n.field + " := " + format_exp(*n.value) + ";";
        }
      },
      s.node);
}

namespace {

doc::DocPtr nested(const Statement& s) {
  return doc::indent(2, doc::order(doc::newline(), statement_doc(s)));
}

}  // namespace

doc::DocPtr statement_doc(const Statement& s) {
  using namespace doc;
  return std::visit(
      [&](const auto& n) -> DocPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, xcom::Block>) {
          if (n.statements.empty()) return order({just("begin"), newline(), just("end")});
          DocPtr body = nullptr;
          for (const auto& c : n.statements) {
            DocPtr line = order(newline(), statement_doc(*c));
            body = body ? order(body, line) : line;
          }
          DocPtr broken = order({just("begin"), indent(2, body), newline(), just("end")});
          return group(just(format_flat(s)), broken);
        } else if constexpr (std::is_same_v<T, While>) {
          DocPtr broken = order({just("while " + format_exp(*n.test) + " do"), nested(*n.body),
                                 newline(), just("end")});
          return group(just(format_flat(s)), broken);
        } else if constexpr (std::is_same_v<T, If>) {
          DocPtr broken = order(just("if " + format_exp(*n.test) + " then"), nested(*n.then_part));
          if (n.else_part) broken = order({broken, newline(), just("else"), nested(*n.else_part)});
          broken = order({broken, newline(), just("end")});
          return group(just(format_flat(s)), broken);
        } else {
          return just(format_flat(s));
        }
      },
      s.node);
}

std::string format_xcom(const Statement& s, int page_width, int ribbon_width) {
  return doc::pprint(statement_doc(s), page_width, ribbon_width);
}

}  // namespace xcom
