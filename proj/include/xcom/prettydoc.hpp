#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace xcom::doc {

// Documents

struct Doc;
using DocPtr = std::shared_ptr<const Doc>;

struct Just {
  std::string text;  // never contains '\n'
};
struct Order {
  DocPtr left;
  DocPtr right;
};
struct NewLine {};
struct Indent {
  int cols;
  DocPtr doc;
};
// Sets the indent for `doc` to the current column.
struct Block {
  DocPtr doc;
};
// Try `left`; if any of its text overflows, discard its output and use `right`.
struct Alt {
  DocPtr left;
  DocPtr right;
};
// Records the current choice points as the cut of a new frame.
struct Mark {
  DocPtr doc;
};
// Discards choice points back to the enclosing frame's cut, then runs `doc`.
struct Cut {
  DocPtr doc;
};

struct Doc {
  std::variant<Just, Order, NewLine, Indent, Block, Alt, Mark, Cut> node;
};

DocPtr just(std::string text);
DocPtr order(DocPtr left, DocPtr right);
DocPtr order(std::initializer_list<DocPtr> docs);
DocPtr newline();
DocPtr indent(int cols, DocPtr doc);
DocPtr block(DocPtr doc);
DocPtr alt(DocPtr left, DocPtr right);
DocPtr mark(DocPtr doc);
DocPtr cut(DocPtr doc);

// Mark(Alt(Order(flat, Cut(Just(""))), broken)): prefer `flat`, commit to it
// once it has been printed in full.
DocPtr group(DocPtr flat, DocPtr broken);

// Left-folded chains: words separated by spaces, or stacked on new lines.
// Both throw std::invalid_argument on an empty list.
DocPtr line_of(const std::vector<std::string>& strings);
DocPtr stack_of(const std::vector<std::string>& strings);

// Trace notation: Order(d1,d2) as `d1;d2`, Just as its text.
std::string render(const Doc& d);

// Persistent singly linked list, so that frames and fail frames can be
// snapshotted in O(1).
template <class T>
struct Cons;
template <class T>
using List = std::shared_ptr<const Cons<T>>;
template <class T>
struct Cons {
  T head;
  List<T> tail;
};
template <class T>
List<T> cons(T head, List<T> tail) {
  return std::make_shared<const Cons<T>>(Cons<T>{std::move(head), std::move(tail)});
}
template <class T>
std::size_t length(const List<T>& l) {
  std::size_t n = 0;
  for (auto p = l; p; p = p->tail) ++n;
  return n;
}

struct FailFrame;
using FailStack = List<FailFrame>;

struct Frame {
  int indent = 0;
  List<DocPtr> code;
  FailStack cut;
};

struct FailFrame {
  int indent = 0;
  std::size_t text_position = 0;
  std::size_t line_position = 0;
  std::size_t ribbon_position = 0;
  List<DocPtr> code;
  FailStack cut;
  List<Frame> stack;  // frames below the head frame when the choice was made
};

class Machine {
 public:
  Machine(int page_width, int ribbon_width);

  // Resets the machine with `code` in a single frame at indent 0.
  void load(std::vector<DocPtr> code);

  bool terminal() const;
  void step();
  void run();

  bool can_print(const std::string& text) const;
  void write(const std::string& text);
  void newline();
  void push_frame(int indent, List<DocPtr> code, FailStack cut);
  void push_fail(List<DocPtr> code);
  void fail();

  int page_width() const { return page_width_; }
  int ribbon_width() const { return ribbon_width_; }
  std::size_t text_position() const { return text_position_; }
  std::size_t line_position() const { return line_position_; }
  std::size_t ribbon_position() const { return ribbon_position_; }
  const List<Frame>& stack() const { return stack_; }
  const FailStack& fails() const { return fail_; }

  // Printed output so far (the buffer up to textPosition).
  std::string output() const { return buffer_.substr(0, text_position_); }

  // `Machine[w,r,tp,lp,rp,[buffer],Seq{frames},Seq{fails}]`
  std::string render() const;

  // Overwrites the buffer from `position`, dropping anything after it.
  static void emit(const std::string& s, std::string& buffer, std::size_t position);

 private:
  int page_width_;
  int ribbon_width_;
  std::size_t text_position_ = 0;
  std::size_t line_position_ = 0;
  std::size_t ribbon_position_ = 0;
  std::string buffer_;
  List<Frame> stack_;
  FailStack fail_;
};

// True iff pl + |text| < w and pr + |text| < r.
bool can_print(const std::string& text, int w, int r, std::size_t pl, std::size_t pr);

std::string pprint(const DocPtr& d, int page_width, int ribbon_width);

}  // namespace xcom::doc
