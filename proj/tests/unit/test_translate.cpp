#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "xcom/translate.hpp"

using namespace xcom;
namespace a = xcom::ast;

namespace {
std::string d1(const char* src) { return core::render(*desugar1_program(*parse_program(src))); }
std::string d2(const char* src) { return core::render(*desugar2_program(*parse_program(src))); }
core::CorePtr n() { return core::null_lit(); }

ErrorKind kind_of_failure(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Machine;
}
}  // namespace

TEST_SUITE("translate") {
  TEST_CASE("desugar1 expressions") {
    CHECK(core::render(*desugar1_exp(*a::bool_const(true))) == "true");
    CHECK(core::render(*desugar1_exp(*a::new_record("Pair"))) == "(new Pair)");
    CHECK(core::render(*desugar1_exp(*a::field_ref(a::var("p"), "head"))) == "(field-get p head)");
    CHECK(core::render(*desugar1_exp(*parse_exp("1 + 2 mod 3"))) == "(+ 1 (mod 2 3))");
  }

  TEST_CASE("desugar1 statements") {
    CHECK(core::render(*desugar1_stmt(*a::type_decl("Nil", {}), n())) == "(let Nil (make-type) null)");
    auto k = core::var("k");
    auto empty = desugar1_stmt(*a::block({}), k);
    CHECK(core::render(*empty) == "(seq null k)");
    auto iff = desugar1_stmt(*parse_statement("if true then x := 1; else x := 2; end"), k);
    CHECK(core::count_occurrences(iff, k) == 2);
    auto loop = desugar1_stmt(*parse_statement("while b do x := 1; end"), k);
    CHECK(core::render(*loop) == "(seq (while b (seq (assign x 1) null)) k)");
    auto fu = desugar1_stmt(*parse_statement("p.a := 1;"), k);
    CHECK(core::render(*fu) == "(seq (field-set p a 1) k)");
  }

  TEST_CASE("desugar1 keeps block locals local") {
    CHECK(d1("begin begin value x is 1 end end value y is 2 end end") ==
          "(seq (seq (let x 1 null) (let y 2 null)) null)");
  }

  TEST_CASE("desugar2 New expands at translation time") {
    TypeEnv types;
    types = types.bind("Nil", make_type("Nil", {})).bind("Pair", make_type("Pair", {"head", "tail"}));
    CHECK(core::render(*desugar2_exp(*a::new_record("Nil"), types)) == "(alist-empty)");
    CHECK(core::render(*desugar2_exp(*a::new_record("Pair"), types)) ==
          "(alist-bind (alist-bind (alist-empty) head null) tail null)");
    auto v = core::core_eval(*core::alist_get(desugar2_exp(*a::new_record("Pair"), types), "head"));
    CHECK(v.is_null());
    try {
      desugar2_exp(*a::new_record("Missing"), TypeEnv());
      FAIL("unknown type accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownType);
      CHECK(e.message() == "Unknown type Missing");
    }
  }

  TEST_CASE("desugar2 type declarations leave no residue") {
    TypeEnv seen;
    auto out = desugar2_stmt(*a::type_decl("Nil", {}), TypeEnv(), [&](const TypeEnv& t) {
      seen = t;
      return n();
    });
    CHECK(core::render(*out) == "null");
    CHECK(seen.binds("Nil"));
    CHECK(core::scan(*desugar2_program(*parse_program(fixtures::read("even_list.xcom")))).typed_nodes == 0);
  }

  TEST_CASE("desugar2 block-local types do not escape") {
    auto p = parse_program("begin begin type T is a end end value r is new T end end");
    CHECK(kind_of_failure([&] { desugar2_program(*p); }) == ErrorKind::UnknownType);
    CHECK_NOTHROW(desugar1_program(*p));
  }

  TEST_CASE("desugar2 loops match desugar1 without records") {
    const char* src = "begin value x is 3 end while x > 0 do x := x - 1; end end";
    CHECK(d1(src) == d2(src));
  }

  TEST_CASE("observed translations agree with the interpreter on the even list") {
    auto p = parse_program(fixtures::read("even_list.xcom"));
    auto expected = Observables{{"length", "0"}, {"list", oracles::even_list_observable()}};
    CHECK(observe_core(desugar1_observed(*p), *p) == expected);
    CHECK(observe_core(desugar2_observed(*p), *p) == expected);
  }

  TEST_CASE("unknown types: static rejection, dynamic failure") {
    auto p = parse_program(fixtures::read("unknown_type.xcom"));
    try {
      desugar2_program(*p);
      FAIL("static translation accepted an unknown type");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownType);
      CHECK(e.location().line == 3);
      CHECK(e.location().column == 14);
    }
    auto rt = desugar1_program(*p);
    CHECK(kind_of_failure([&] { core::core_eval(*rt); }) == ErrorKind::Unbound);
  }

  TEST_CASE("type environment shadowing") {
    TypeEnv t = TypeEnv().bind("T", make_type("T", {"a"})).bind("T", make_type("T", {"b"}));
    CHECK(t.lookup("T")->names == std::vector<std::string>{"b"});
  }
}
