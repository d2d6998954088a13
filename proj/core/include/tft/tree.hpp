/// @file tree.hpp
/// Pandora temporal fault tree model: basic events, gates, the validated
/// tree, and the text/JSON document encodings.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tft/error.hpp"
#include "tft/fuzzy.hpp"

namespace tft {

enum class GateKind { kAnd, kOr, kPand, kPor };

std::string_view ToString(GateKind kind);

/// True for gates whose inputs are ordered in time (PAND, POR).
inline bool IsTemporal(GateKind kind) {
  return kind == GateKind::kPand || kind == GateKind::kPor;
}

/// Leaf failure event with an exponential time to failure.
///
/// The rate is either given as an explicit fuzzy triple or as a crisp
/// rate that is fuzzified with the event's own spread or, failing that,
/// the analysis spread.
struct BasicEvent {
  std::string id;
  std::string description;
  std::optional<double> crisp_rate;  ///< per hour
  std::optional<Tfn> fuzzy_rate;     ///< per hour, explicit triple
  std::optional<double> spread;      ///< percent, overrides the default

  /// Fuzzy rate under the given default spread.
  /// @throws DomainError  Invalid spread or rate.
  Tfn Rate(double default_spread, bool allow_custom_spread) const;

  /// Most likely (peak) rate.
  double PeakRate() const;

  bool operator==(const BasicEvent&) const = default;
};

/// Gate with an ordered list of child node ids. Child order is semantic
/// for PAND and POR.
struct Gate {
  std::string id;
  GateKind kind = GateKind::kAnd;
  std::vector<std::string> children;
  /// Created for a parenthesized sub-expression rather than declared.
  bool anonymous = false;

  bool operator==(const Gate&) const = default;
};

/// Document-level defaults for analyses.
struct Directive {
  double spread = 15;
  bool custom_spread = false;
  bool clamp = false;
  std::vector<double> times;
  std::optional<double> importance_time;

  bool operator==(const Directive&) const = default;
};

/// Raw, unvalidated content of a tree document.
struct TreeDocument {
  std::string name;
  std::string source;
  Directive directive;
  std::vector<BasicEvent> events;
  std::vector<Gate> gates;
  std::string top;
};

/// Structural checks. Returns every finding; an empty list means the
/// document is valid and warning-free.
///
/// Error codes: duplicate-id, unresolved-reference, cycle, arity,
/// shared-gate, unreachable, missing-top, invalid-rate, invalid-directive.
/// Warning codes: single-input, shared-event.
std::vector<Diagnostic> Validate(const TreeDocument& doc);

/// True if any diagnostic has error severity.
bool HasErrors(const std::vector<Diagnostic>& diagnostics);

/// Validated fault tree. Immutable once built.
class FaultTree {
 public:
  /// @throws ValidationError  The document has error diagnostics.
  static FaultTree Build(TreeDocument doc);

  const std::string& name() const { return doc_.name; }
  const std::string& source() const { return doc_.source; }
  const std::string& top() const { return doc_.top; }
  const Directive& directive() const { return doc_.directive; }
  const TreeDocument& document() const { return doc_; }

  /// Events in declaration order.
  const std::vector<BasicEvent>& events() const { return doc_.events; }
  /// Gates in declaration order (anonymous gates follow their parent).
  const std::vector<Gate>& gates() const { return doc_.gates; }

  const BasicEvent* FindEvent(std::string_view id) const;
  const Gate* FindGate(std::string_view id) const;

  /// Warnings kept from validation.
  const std::vector<Diagnostic>& diagnostics() const { return warnings_; }

 private:
  explicit FaultTree(TreeDocument doc);

  TreeDocument doc_;
  std::map<std::string, size_t, std::less<>> event_index_;
  std::map<std::string, size_t, std::less<>> gate_index_;
  std::vector<Diagnostic> warnings_;
};

// ---------------------------------------------------------------------------
// Expressions

/// Parsed gate expression. A node without `kind` is a reference to `id`.
struct Expression {
  std::string id;
  std::optional<GateKind> kind;
  std::vector<Expression> children;
  int column = 0;

  bool operator==(const Expression&) const = default;
};

/// Parses an expression over event/gate ids. Operators, tightest first:
/// PAND and POR, then AND, then OR; all left-associative. Chains of the
/// same operator are flattened into one n-ary node; parentheses always
/// start a new node. Glyph aliases: ◁ (PAND), ≀ (POR), ∩ ∧ & (AND),
/// ∪ ∨ | (OR).
///
/// @param known  When non-null, every referenced id must be in it.
/// @throws ParseError  Syntax error or unknown identifier.
Expression ParseExpression(std::string_view text,
                           const std::set<std::string, std::less<>>* known = nullptr,
                           int line = 0);

/// Renders an expression back to text with the ASCII keywords.
std::string ToString(const Expression& expr);

// ---------------------------------------------------------------------------
// Documents

/// Parses a tree document. Text documents use the line format described in
/// docs/format.md; a document whose first non-blank character is '{' is
/// read as the JSON encoding.
///
/// @throws ParseError       Syntax error.
/// @throws ValidationError  Structural error.
FaultTree ParseTree(std::string_view text, std::string source = {});

/// Parses without validating.
/// @throws ParseError  Syntax error.
TreeDocument ParseDocument(std::string_view text, std::string source = {});
TreeDocument ParseTextDocument(std::string_view text, std::string source = {});
TreeDocument ParseJsonDocument(std::string_view text, std::string source = {});

/// Reads and parses a file.
/// @throws Error  The file cannot be read (IoError), plus ParseTree errors.
FaultTree LoadTree(const std::string& path);

/// Line-format serialization. Anonymous gates are inlined as
/// parenthesized sub-expressions so that reparsing restores them.
std::string Serialize(const FaultTree& tree);
std::string SerializeJson(const FaultTree& tree);

/// I/O failure while reading an input file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tft
