#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "xcom/interp.hpp"
#include "xcom/syntax.hpp"

namespace xcom::check {

// Random well-formed, type-closed programs: at most 3 nesting levels, at most
// 4 record types, loops driven by counters that count down from at most 6.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}
  StmtPtr program();

 private:
  std::mt19937_64 rng_;
};

// Outcome of one backend on one program: observables, or the kind and text of
// the error it raised.
struct Outcome {
  std::optional<Observables> observables;
  std::optional<ErrorKind> error;
  std::string message;

  bool ok() const { return observables.has_value(); }
};

std::string describe(const Outcome& o);

enum class Backend { Interp, Desugar1, Desugar2, Vm };
inline constexpr Backend kBackends[] = {Backend::Interp, Backend::Desugar1, Backend::Desugar2,
                                        Backend::Vm};
std::string_view backend_name(Backend b);

Outcome run_backend(Backend b, const Statement& program);

enum class Verdict {
  Agree,
  // The static backends reject an unknown type at translation time while the
  // dynamic ones agree with each other.
  ExpectedAsymmetry,
  Diverge,
};

struct Comparison {
  Verdict verdict = Verdict::Agree;
  Outcome outcomes[4];
};

Comparison compare_backends(const Statement& program);

struct Divergence {
  std::size_t index = 0;
  std::string source;
  std::string details;
};

struct Report {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t agreed = 0;
  std::size_t agreed_on_error = 0;  // every backend raised the same kind of error
  std::size_t asymmetries = 0;
  std::size_t stack_verified = 0;   // compiled programs passing the depth check
  std::size_t erasure_clean = 0;    // desugar2 outputs free of typed-record nodes
  std::vector<Divergence> divergences;

  bool clean() const {
    return divergences.empty() && stack_verified == count && erasure_clean == count;
  }
};

// The programs run_check(seed, count) tests, in order.
std::vector<StmtPtr> corpus(std::uint64_t seed, std::size_t count);

Report run_check(std::uint64_t seed, std::size_t count);

// One summary line, followed by the first divergence when there is one.
std::string format_report(const Report& r);

}  // namespace xcom::check
