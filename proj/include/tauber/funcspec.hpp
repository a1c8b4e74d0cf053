#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauber/expr.hpp"
#include "tauber/function.hpp"

namespace tauber {

enum class Codomain { real, complex };

// Real expression, or a (re, im) pair for complex-valued pieces.
struct Body {
  Expression re;
  std::optional<Expression> im;

  bool depends_on_x() const { return re.depends_on_x() || (im && im->depends_on_x()); }
  Value evaluate(double x, double n = 0.0) const;
  Value evaluate_log(double log_x, double n = 0.0) const;
  std::string to_string() const;
};

// Half-open piece [lo, hi).
struct Piece {
  double lo = 1.0;
  double hi = 0.0;
  Body body;
};

// Lazily expanded family of pieces: for n = first, first+1, ... the body
// `inside` holds on [start(n), end(n)) and `outside` on the gaps
// [end(n), start(n+1)). Members are expanded until `limit` members exist
// or a member's relative width drops below kMinRelativeWidth, which sets
// the function's availability horizon.
struct Family {
  static constexpr long long kDefaultLimit = 131072;
  static constexpr double kMinRelativeWidth = 1e-12;

  std::string var = "n";
  long long first = 0;
  long long limit = kDefaultLimit;
  Expression start;
  Expression end;
  Body inside;
  Body outside;
};

class FunctionSpec final : public Function {
 public:
  // Pieces must be sorted, contiguous, start at 1, and end at +inf unless
  // a family follows. Throws ParseError (overlap/gap/domain).
  FunctionSpec(std::string name, std::vector<Piece> pieces, std::optional<Family> family = std::nullopt);

  const std::string& name() const override { return name_; }
  bool is_complex() const override { return codomain_ == Codomain::complex; }
  Value eval(double x) const override;
  Value eval_log(double log_x) const override;
  std::vector<double> breakpoints(double lo, double hi) const override;
  std::optional<Value> constant_near(double x) const override;
  double log_availability() const override { return log_availability_; }

  Codomain codomain() const noexcept { return codomain_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const std::optional<Family>& family() const noexcept { return family_; }

  // Number of expanded family members (0 without a family).
  std::size_t family_size() const noexcept { return starts_.size(); }

 private:
  struct Located {
    const Body* body;
    double n;
  };
  Located locate(double x) const;
  void expand_family();

  std::string name_;
  std::vector<Piece> pieces_;
  std::optional<Family> family_;
  Codomain codomain_ = Codomain::real;
  std::vector<double> starts_;  // expanded family members
  std::vector<double> ends_;
  double availability_ = std::numeric_limits<double>::infinity();
  double log_availability_ = std::numeric_limits<double>::infinity();
};

using SpecPtr = std::shared_ptr<const FunctionSpec>;

// DSL:
//   spec     := body ["on" interval] | (piece | family)+
//   piece    := "piece" interval ":" body ";"
//   family   := "family" IDENT "from" INT ["limit" INT] ":"
//               "[" expr "," expr ")" ":" body "else" body ";"
//   interval := "[" bound "," bound ")"      bound := "inf" | const expr
//   body     := expr | "complex" "(" expr "," expr ")"
// Functions: sin cos exp log loglog abs pow indicator; constants pi, e.
SpecPtr parse_spec(std::string_view source, std::string name = "fn");

// Standalone expression over x.
Expression parse_expression(std::string_view source);

// DSL text that parses back to an identical spec.
std::string print_spec(const FunctionSpec& spec);

std::string spec_to_json(const FunctionSpec& spec);
SpecPtr spec_from_json(std::string_view json_text);

// Expected classifications of a corpus member, asserted by the harness
// tests rather than by fiat.
struct Classification {
  std::optional<bool> slowly_decreasing;  // unset for complex codomain
  bool slowly_oscillating = false;
  bool l1_summable = false;
  bool statistically_convergent = false;
  bool ordinarily_convergent = false;
  std::optional<double> limit;       // ordinary limit of s
  std::optional<double> stat_limit;  // statistical limit of s
  std::optional<double> tau_limit;   // limit of the logarithmic mean
};

struct CorpusEntry {
  std::string name;
  std::string source;
  SpecPtr spec;
  Classification expected;
  std::string description;
};

// C1, S1, S2, L1, L2, O1, V1.
const std::vector<CorpusEntry>& builtin_corpus();

// Corpus member by name; nullptr when absent.
const CorpusEntry* find_corpus_entry(std::string_view name);

}  // namespace tauber
