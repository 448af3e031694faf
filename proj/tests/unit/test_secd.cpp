#include "doctest.h"
#include "xcom/error.hpp"
#include "xcom/secd.hpp"

using namespace xcom;
using namespace xcom::secd;

namespace {
std::vector<std::string> rendered(const std::string& src) {
  auto e = parse_lambda(src);
  auto globals = builtins_for(*e);
  std::vector<std::string> out;
  for (const auto& st : trace(e, globals)) out.push_back(render_state(st, globals));
  return out;
}

Integer int_of(const MValuePtr& v) { return std::get<IntVal>(v->v).value; }
}  // namespace

TEST_SUITE("secd") {
  TEST_CASE("parsing and rendering") {
    auto e = parse_lambda("(\\v.v v)(\\x.x)");
    CHECK(render(*e) == "(\\v.v v) (\\x.x)");
    CHECK(same(*e, *lapply(llambda("v", lapply(lvar("v"), lvar("v"))), llambda("x", lvar("x")))));
    auto f = parse_lambda("f a b");
    CHECK(same(*f, *lapply(lapply(lvar("f"), lvar("a")), lvar("b"))));
    CHECK(render(*parse_lambda("add [fst=1,snd=2]")) == "add [fst=1,snd=2]");
    CHECK(free_vars(*parse_lambda("\\x.add [fst=x,snd=y]")) == std::vector<std::string>{"add", "y"});
  }

  TEST_CASE("syntax errors") {
    for (const char* bad : {"", "\\.x", "(x", "[a=1,a=2]", "x )", "\\x"}) {
      CAPTURE(bad);
      try {
        parse_lambda(bad);
        FAIL("accepted");
      } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::Syntax);
        CHECK(err.location().known());
      }
    }
  }

  TEST_CASE("self application trace") {
    // The paper's twelve states, continuation lines joined.
    const std::vector<std::pair<std::size_t, std::string>> paper{
        {0, "([],[],[(\\v.v v) (\\x.x)],null)"},
        {0, "([],[],[(\\x.x),(\\v.v v),@],null)"},
        {0, "([<x,[],x>],[],[(\\v.v v),@],null)"},
        {0, "([<v,[],v v>,<x,[],x>],[],[@],null)"},
        {1, "([],[v-><x,[],x>],[v v],([],[],[],null))"},
        {1, "([],[v-><x,[],x>],[v,v,@],([],[],[],null))"},
        {1, "([<x,[],x>],[v-><x,[],x>],[v,@],([],[],[],null))"},
        {1, "([<x,[],x>,<x,[],x>],[v-><x,[],x>],[@],([],[],[],null))"},
        {2, "([],[x-><x,[],x>],[x],([],[v-><x,[],x>],[],([],[],[],null)))"},
        {2, "([<x,[],x>],[x-><x,[],x>],[],([],[v-><x,[],x>],[],([],[],[],null)))"},
        {1, "([<x,[],x>],[v-><x,[],x>],[],([],[],[],null))"},
        {0, "([<x,[],x>],[],[],null)"},
    };
    auto e = parse_lambda("(\\v.v v)(\\x.x)");
    auto states = trace(e, builtins_for(*e));
    REQUIRE(states.size() == paper.size());
    for (std::size_t i = 0; i < paper.size(); ++i) {
      CAPTURE(i);
      CHECK(render_state(states[i], MEnv()) == paper[i].second);
      CHECK(depth(states[i]) == paper[i].first);
    }
  }

  TEST_CASE("builtin addition trace") {
    // The paper's trace, without its sixth line (a step that only removes
    // parentheses, which this machine does not take).
    const std::vector<std::string> paper{
        "([],E,[(\\x.\\y.add [fst=x,snd=y]) 10 20],null)",
        "([],E,[20,(\\x.\\y.add [fst=x,snd=y]) 10,@],null)",
        "([20],E,[(\\x.\\y.add [fst=x,snd=y]) 10,@],null)",
        "([20],E,[10,(\\x.\\y.add [fst=x,snd=y]),@,@],null)",
        "([10,20],E,[(\\x.\\y.add [fst=x,snd=y]),@,@],null)",
        "([<x,E,\\y.add [fst=x,snd=y]>,10,20],E,[@,@],null)",
        "([],E[x->10],[\\y.add [fst=x,snd=y]],([20],E,[@],null))",
        "([<y,E[x->10],add [fst=x,snd=y]>],E[x->10],[],([20],E,[@],null))",
        "([<y,E[x->10],add [fst=x,snd=y]>,20],E,[@],null)",
        "([],E[y->20,x->10],[add [fst=x,snd=y]],([],E,[],null))",
        "([],E[y->20,x->10],[[fst=x,snd=y],add,@],([],E,[],null))",
        "([],E[y->20,x->10],[x,y,{fst,snd},add,@],([],E,[],null))",
        "([10],E[y->20,x->10],[y,{fst,snd},add,@],([],E,[],null))",
        "([20,10],E[y->20,x->10],[{fst,snd},add,@],([],E,[],null))",
        "([[fst=10,snd=20]],E[y->20,x->10],[add,@],([],E,[],null))",
        "([!add,[fst=10,snd=20]],E[y->20,x->10],[@],([],E,[],null))",
        "([30],E[y->20,x->10],[],([],E,[],null))",
        "([30],E,[],null)",
    };
    CHECK(rendered("(\\x.\\y.add [fst=x,snd=y]) 10 20") == paper);
  }

  TEST_CASE("builtins") {
    auto run_src = [](const char* src) {
      auto e = parse_lambda(src);
      return int_of(run(e, builtins_for(*e)));
    };
    CHECK(run_src("sub [fst=10,snd=3]") == 7);
    CHECK(run_src("mult [fst=6,snd=7]") == 42);
    CHECK(run_src("eql [fst=6,snd=6]") == 1);
    CHECK(run_src("eql [fst=6,snd=7]") == 0);
    CHECK(builtin_names() == std::vector<std::string>{"add", "sub", "mult", "eql"});
    CHECK_THROWS_AS(run_src("add 1"), Error);
  }

  TEST_CASE("unbound variables") {
    try {
      run(parse_lambda("y"), MEnv());
      FAIL("unbound accepted");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Unbound);
    }
  }

  TEST_CASE("divergence is capped") {
    auto omega = parse_lambda("(\\x.x x)(\\x.x x)");
    try {
      run(omega, MEnv(), 1000);
      FAIL("omega terminated");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Diverged);
    }
  }

  TEST_CASE("environments share their tails") {
    MEnv base = MEnv().bind("a", int_value(1));
    MEnv ext = base.bind("b", int_value(2));
    std::vector<std::pair<std::string, MValuePtr>> above;
    CHECK(ext.bindings_above(base, above));
    REQUIRE(above.size() == 1);
    CHECK(above[0].first == "b");
    CHECK_FALSE(base.bindings_above(MEnv().bind("z", int_value(0)), above));
    CHECK(int_of(ext.lookup("a")) == 1);
  }
}
