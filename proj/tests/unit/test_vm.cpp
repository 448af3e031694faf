#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "xcom/vm.hpp"

using namespace xcom;
using namespace xcom::vm;
namespace a = xcom::ast;

namespace {
Integer top_int(const VmState& s) { return std::get<Integer>(s.stack.back().v); }
}  // namespace

TEST_SUITE("vm") {
  TEST_CASE("expression compilation") {
    Compiler c;
    CHECK(c.compile_exp(*a::bool_const(true), {}, {}) == Code{push_true()});
    CHECK(c.compile_exp(*a::var("x"), {}, {{"x", 0}}) == Code{local_ref(0)});
    CHECK(c.compile_exp(*a::var("x"), {}, {{"x", 0}, {"y", 1}, {"x", 2}}) == Code{local_ref(2)});
    try {
      c.compile_exp(*a::var("y"), {}, {{"x", 0}});
      FAIL("unbound accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Unbound);
      CHECK(e.message() == "Unbound variable y");
    }
  }

  TEST_CASE("value declarations") {
    Compiler c;
    auto code = c.compile_stmt(*a::value_decl("x", a::int_const(1)), {}, {}, trivial_cont);
    CHECK(code == Code{push_integer(1), set_local("x", 0), pop()});
    CHECK(listing(code) == "PushInteger(1)\nSetLocal(x,0)\nPop\n");
  }

  TEST_CASE("nested loops get distinct labels") {
    auto p = parse_program(
        "begin value i is 2 end while i > 0 do begin value j is 2 end"
        " while j > 0 do j := j - 1; end i := i - 1; end end end");
    auto compiled = compile_program(*p);
    std::multiset<std::string> labels;
    for (const auto& ins : compiled.code)
      if (ins.op == Op::Label) labels.insert(ins.name);
    CHECK(labels.size() == 4);
    CHECK(std::set<std::string>(labels.begin(), labels.end()).size() == 4);
    CHECK_NOTHROW(assemble(compiled.code));
  }

  TEST_CASE("assembly") {
    CHECK(assemble({label("a"), skip("a")}) == Code{[] {
            Instr i = skip("a");
            i.index = 0;
            return i;
          }()});
    try {
      assemble({skip("a")});
      FAIL("undefined label accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Label);
    }
    CHECK_THROWS_AS(assemble({label("a"), label("a")}), Error);
  }

  TEST_CASE("false loop skips past the back jump") {
    auto p = a::while_loop(a::bool_const(false), a::block({}));
    auto compiled = compile_program(*a::block({p}));
    auto code = assemble(compiled.code);
    auto st = exec_vm(code, compiled.local_count);
    CHECK(st.steps <= 3);
    CHECK(st.stack.empty());
  }

  TEST_CASE("execution") {
    auto st = exec_vm({push_integer(1), push_integer(2), binary(BinOp::Add)}, 0);
    REQUIRE(st.stack.size() == 1);
    CHECK(top_int(st) == 3);
    Instr jump = skip_false("end");
    jump.index = 3;
    auto t = exec_vm({push_true(), jump, push_integer(5)}, 0);
    REQUIRE(t.stack.size() == 1);
    CHECK(top_int(t) == 5);
    auto f = exec_vm({push_false(), jump, push_integer(5)}, 0);
    CHECK(f.stack.empty());
  }

  TEST_CASE("step cap") {
    Instr back = skip("a");
    back.index = 0;
    try {
      exec_vm({back}, 0, 100);
      FAIL("runaway loop not stopped");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Diverged);
    }
  }

  TEST_CASE("runtime errors") {
    CHECK_THROWS_AS(exec_vm({push_integer(1), push_integer(0), binary(BinOp::Mod)}, 0), Error);
    CHECK_THROWS_AS(exec_vm({push_integer(1), push_true(), binary(BinOp::Add)}, 0), Error);
  }

  TEST_CASE("stack verification") {
    auto p = parse_program(fixtures::read("even_list.xcom"));
    auto code = assemble(compile_program(*p).code);
    auto check = verify_stack(code);
    CHECK(check.ok);
    CHECK(check.max_depth >= 2);
    CHECK_FALSE(verify_stack({pop()}).ok);
    CHECK_FALSE(verify_stack({push_true()}).ok);
  }

  TEST_CASE("even list agrees with the interpreter") {
    auto p = parse_program(fixtures::read("even_list.xcom"));
    auto expected = Observables{{"length", "0"}, {"list", oracles::even_list_observable()}};
    CHECK(observe_vm(*p) == expected);
    CHECK(observe_vm(*p) == observe_interp(*p));
  }

  TEST_CASE("unknown types are compile errors") {
    auto p = parse_program(fixtures::read("unknown_type.xcom"));
    try {
      compile_program(*p);
      FAIL("compiled an unknown type");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownType);
    }
  }
}
