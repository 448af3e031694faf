#include "xcom/prettydoc.hpp"

#include <sstream>
#include <stdexcept>

namespace xcom::doc {

namespace {
template <class T>
DocPtr mk(T node) {
  return std::make_shared<const Doc>(Doc{std::move(node)});
}
}  // namespace

DocPtr just(std::string text) { return mk(Just{std::move(text)}); }
DocPtr order(DocPtr left, DocPtr right) { return mk(Order{std::move(left), std::move(right)}); }
DocPtr order(std::initializer_list<DocPtr> docs) {
  if (docs.size() == 0) return just("");
  auto it = docs.begin();
  DocPtr d = *it++;
  for (; it != docs.end(); ++it) d = order(d, *it);
  return d;
}
DocPtr newline() { return mk(NewLine{}); }
DocPtr indent(int cols, DocPtr doc) { return mk(Indent{cols, std::move(doc)}); }
DocPtr block(DocPtr doc) { return mk(Block{std::move(doc)}); }
DocPtr alt(DocPtr left, DocPtr right) { return mk(Alt{std::move(left), std::move(right)}); }
DocPtr mark(DocPtr doc) { return mk(Mark{std::move(doc)}); }
DocPtr cut(DocPtr doc) { return mk(Cut{std::move(doc)}); }

DocPtr group(DocPtr flat, DocPtr broken) {
  return mark(alt(order(std::move(flat), cut(just(""))), std::move(broken)));
}

DocPtr line_of(const std::vector<std::string>& strings) {
  if (strings.empty()) throw std::invalid_argument("line_of: empty string list");
  DocPtr d = just(strings.front());
  for (std::size_t i = 1; i < strings.size(); ++i) d = order(d, just(" " + strings[i]));
  return d;
}

DocPtr stack_of(const std::vector<std::string>& strings) {
  if (strings.empty()) throw std::invalid_argument("stack_of: empty string list");
  DocPtr d = just(strings.front());
  for (std::size_t i = 1; i < strings.size(); ++i)
    d = order(d, order(newline(), just(strings[i])));
  return d;
}

std::string render(const Doc& d) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Just>) return n.text;
        else if constexpr (std::is_same_v<T, Order>) return render(*n.left) + ";" + render(*n.right);
        else if constexpr (std::is_same_v<T, NewLine>) return "Newline[]";
        else if constexpr (std::is_same_v<T, Indent>)
          return "Indent[" + std::to_string(n.cols) + "," + render(*n.doc) + "]";
        else if constexpr (std::is_same_v<T, Block>) return "Block[" + render(*n.doc) + "]";
        else if constexpr (std::is_same_v<T, Alt>)
          return "Alt[" + render(*n.left) + "," + render(*n.right) + "]";
        else if constexpr (std::is_same_v<T, Mark>) return "Mark[" + render(*n.doc) + "]";
        else return "Cut[" + render(*n.doc) + "]";
      },
      d.node);
}

bool can_print(const std::string& text, int w, int r, std::size_t pl, std::size_t pr) {
  auto size = static_cast<long long>(text.size());
  return static_cast<long long>(pl) + size < w && static_cast<long long>(pr) + size < r;
}

// ---------------------------------------------------------------------------

Machine::Machine(int page_width, int ribbon_width)
    : page_width_(page_width), ribbon_width_(ribbon_width) {}

void Machine::load(std::vector<DocPtr> code) {
  List<DocPtr> list;
  for (auto it = code.rbegin(); it != code.rend(); ++it) list = cons(*it, list);
  stack_ = nullptr;
  push_frame(0, list, nullptr);
  text_position_ = 0;
  line_position_ = 0;
  ribbon_position_ = 0;
  fail_ = nullptr;
  buffer_.clear();
}

bool Machine::terminal() const {
  for (auto f = stack_; f; f = f->tail)
    if (f->head.code) return false;
  return true;
}

bool Machine::can_print(const std::string& text) const {
  return doc::can_print(text, page_width_, ribbon_width_, line_position_, ribbon_position_);
}

void Machine::emit(const std::string& s, std::string& buffer, std::size_t position) {
  buffer.resize(position, ' ');
  buffer += s;
}

void Machine::write(const std::string& text) {
  emit(text, buffer_, text_position_);
  text_position_ += text.size();
  line_position_ += text.size();
  ribbon_position_ += text.size();
}

void Machine::newline() {
  int indent = stack_->head.indent;
  emit("\n" + std::string(static_cast<std::size_t>(indent), ' '), buffer_, text_position_);
  text_position_ += static_cast<std::size_t>(indent) + 1;
  line_position_ = static_cast<std::size_t>(indent);
  ribbon_position_ = 0;
}

void Machine::push_frame(int indent, List<DocPtr> code, FailStack cut) {
  stack_ = cons(Frame{indent, std::move(code), std::move(cut)}, stack_);
}

void Machine::push_fail(List<DocPtr> code) {
  const Frame& head = stack_->head;
  fail_ = cons(FailFrame{head.indent, text_position_, line_position_, ribbon_position_,
                         std::move(code), head.cut, stack_->tail},
               fail_);
}

void Machine::fail() {
  if (!fail_) throw std::logic_error("pretty printer failed with no choice point");
  const FailFrame& f = fail_->head;
  stack_ = cons(Frame{f.indent, f.code, f.cut}, f.stack);
  text_position_ = f.text_position;
  line_position_ = f.line_position;
  ribbon_position_ = f.ribbon_position;
  fail_ = fail_->tail;
}

void Machine::step() {
  if (!stack_) return;
  if (!stack_->head.code) {
    stack_ = stack_->tail;
    return;
  }
  Frame frame = stack_->head;
  DocPtr instr = frame.code->head;
  List<DocPtr> rest = frame.code->tail;
  auto set_code = [&](List<DocPtr> code) {
    stack_ = cons(Frame{frame.indent, std::move(code), frame.cut}, stack_->tail);
  };
  set_code(rest);

  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Just>) {
          if (can_print(n.text) || !fail_) write(n.text);
          else fail();
        } else if constexpr (std::is_same_v<T, Order>) {
          set_code(cons(n.left, cons(n.right, rest)));
        } else if constexpr (std::is_same_v<T, Indent>) {
          push_frame(frame.indent + n.cols, cons(n.doc, List<DocPtr>{}), frame.cut);
        } else if constexpr (std::is_same_v<T, Block>) {
          push_frame(static_cast<int>(line_position_), cons(n.doc, List<DocPtr>{}), frame.cut);
        } else if constexpr (std::is_same_v<T, Cut>) {
          fail_ = frame.cut;
          set_code(cons(n.doc, rest));
        } else if constexpr (std::is_same_v<T, Mark>) {
          push_frame(frame.indent, cons(n.doc, List<DocPtr>{}), fail_);
        } else if constexpr (std::is_same_v<T, NewLine>) {
          newline();
        } else {
          set_code(cons(n.left, rest));
          push_fail(cons(n.right, rest));
        }
      },
      instr->node);
}

void Machine::run() {
  while (!terminal()) step();
}

namespace {

std::string render_code(const List<DocPtr>& code) {
  std::string out = "Seq{";
  bool first = true;
  for (auto p = code; p; p = p->tail) {
    if (!first) out += ',';
    first = false;
    out += render(*p->head);
  }
  return out + "}";
}

std::string render_fails(const FailStack& fails);

std::string render_frame(const Frame& f) {
  return "Frame[" + std::to_string(f.indent) + ",code = " + render_code(f.code) +
         ",cut = " + render_fails(f.cut) + "]";
}

std::string render_fails(const FailStack& fails) {
  std::string out = "Seq{";
  bool first = true;
  for (auto p = fails; p; p = p->tail) {
    if (!first) out += ',';
    first = false;
    const FailFrame& f = p->head;
    out += "Fail[" + std::to_string(f.indent) + "," + std::to_string(f.text_position) + "," +
           std::to_string(f.line_position) + "," + std::to_string(f.ribbon_position) +
           ",code = " + render_code(f.code) + ",cut = " + render_fails(f.cut) + "]";
  }
  return out + "}";
}

}  // namespace

std::string Machine::render() const {
  std::ostringstream out;
  out << "Machine[" << page_width_ << ',' << ribbon_width_ << ',' << text_position_ << ','
      << line_position_ << ',' << ribbon_position_ << ",[" << output() << "],Seq{";
  bool first = true;
  for (auto p = stack_; p; p = p->tail) {
    if (!first) out << ',';
    first = false;
    out << render_frame(p->head);
  }
  out << "}," << render_fails(fail_) << ']';
  return out.str();
}

std::string pprint(const DocPtr& d, int page_width, int ribbon_width) {
  Machine m(page_width, ribbon_width);
  m.load({d});
  m.run();
  return m.output();
}

}  // namespace xcom::doc
