#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "tft/tree.hpp"

namespace tft {
namespace {

Expression Ref(std::string id) { return Expression{.id = std::move(id)}; }

std::vector<std::string> Leaves(const Expression& e) {
  if (!e.kind) return {e.id};
  std::vector<std::string> out;
  for (const Expression& c : e.children) {
    auto sub = Leaves(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

// Structural comparison that ignores columns.
bool SameShape(const Expression& a, const Expression& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  if (!a.kind) return a.id == b.id;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!SameShape(a.children[i], b.children[i])) return false;
  return true;
}

TEST(ParseExpression, SingleReference) {
  const Expression e = ParseExpression("  I-SCP ");
  EXPECT_FALSE(e.kind);
  EXPECT_EQ(e.id, "I-SCP");
}

TEST(ParseExpression, Precedence) {
  // PAND binds tighter than AND, which binds tighter than OR.
  const Expression e = ParseExpression("a OR b AND c PAND d");
  ASSERT_EQ(e.kind, GateKind::kOr);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].id, "a");
  const Expression& conj = e.children[1];
  ASSERT_EQ(conj.kind, GateKind::kAnd);
  EXPECT_EQ(conj.children[0].id, "b");
  EXPECT_EQ(conj.children[1].kind, GateKind::kPand);
  EXPECT_EQ(ToString(e), "a OR (b AND (c PAND d))");
}

TEST(ParseExpression, ParenthesesWin) {
  const Expression e = ParseExpression("(a OR b) PAND c");
  ASSERT_EQ(e.kind, GateKind::kPand);
  EXPECT_EQ(e.children[0].kind, GateKind::kOr);
  EXPECT_EQ(e.children[1].id, "c");
}

TEST(ParseExpression, ChainsFlatten) {
  const Expression e = ParseExpression("a AND b AND c");
  ASSERT_EQ(e.kind, GateKind::kAnd);
  EXPECT_EQ(e.children.size(), 3u);
  // Parentheses keep a nested node.
  const Expression p = ParseExpression("(a AND b) AND c");
  ASSERT_EQ(p.children.size(), 2u);
  EXPECT_EQ(p.children[0].kind, GateKind::kAnd);
}

TEST(ParseExpression, MixedTemporalOperatorsAreLeftAssociative) {
  const Expression e = ParseExpression("a PAND b POR c");
  ASSERT_EQ(e.kind, GateKind::kPor);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].kind, GateKind::kPand);
  EXPECT_EQ(e.children[1].id, "c");
}

TEST(ParseExpression, GlyphAliases) {
  const Expression ascii = ParseExpression("a PAND b AND c OR d POR e");
  for (const char* text :
       {"a ◁ b ∩ c ∪ d ≀ e", "a ◁ b ∧ c ∨ d ≀ e", "a ◁ b & c | d ≀ e"}) {
    EXPECT_TRUE(SameShape(ParseExpression(text), ascii)) << text;
  }
}

TEST(ParseExpression, KeywordsIgnoreCase) {
  EXPECT_TRUE(SameShape(ParseExpression("a and b Pand c"),
                        ParseExpression("a AND b PAND c")));
}

TEST(ParseExpression, ErrorsCarryPosition) {
  try {
    ParseExpression("a AND (b OR", nullptr, 7);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7);
    EXPECT_GT(e.column(), 1);
  }
  EXPECT_THROW(ParseExpression(""), ParseError);
  EXPECT_THROW(ParseExpression("a AND"), ParseError);
  EXPECT_THROW(ParseExpression("a b"), ParseError);
  EXPECT_THROW(ParseExpression("(a OR b))"), ParseError);
  EXPECT_THROW(ParseExpression("AND a"), ParseError);
}

TEST(ParseExpression, UnknownIdentifier) {
  const std::set<std::string, std::less<>> known = {"a", "b"};
  EXPECT_NO_THROW(ParseExpression("a PAND b", &known));
  try {
    ParseExpression("a PAND zz", &known, 3);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 8);
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
}

TEST(ParseExpression, ColumnsPointAtOperands) {
  const Expression e = ParseExpression("ab OR cd");
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].column, 1);
  EXPECT_EQ(e.children[1].column, 7);
}

// Random expression trees over a small alphabet, rendered with full
// parenthesization.
std::string RandomExpression(testing::Generator& g, int depth,
                             std::vector<std::string>& leaves) {
  if (depth == 0 || g.Int(0, 3) == 0) {
    std::string id = "e" + std::to_string(g.Int(0, 9));
    leaves.push_back(id);
    return id;
  }
  static const char* kOps[] = {"AND", "OR", "PAND", "POR"};
  const char* op = kOps[g.Int(0, 3)];
  const int n = g.Int(2, 4);
  std::string out = "(";
  for (int i = 0; i < n; ++i) {
    if (i) out += std::string(" ") + op + " ";
    out += RandomExpression(g, depth - 1, leaves);
  }
  return out + ")";
}

TEST(ParseExpression, OperandOrderIsPreserved) {
  testing::Generator g(51);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> leaves;
    const std::string text = RandomExpression(g, 4, leaves);
    const Expression e = ParseExpression(text);
    EXPECT_EQ(Leaves(e), leaves) << text;
  }
}

TEST(ParseExpression, RenderingRoundTrips) {
  testing::Generator g(52);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> leaves;
    const Expression e = ParseExpression(RandomExpression(g, 4, leaves));
    const std::string text = ToString(e);
    EXPECT_TRUE(SameShape(ParseExpression(text), e)) << text;
  }
}

TEST(ParseExpression, RenderingParenthesizesNestedNodes) {
  EXPECT_EQ(ToString(ParseExpression("(a OR b) AND c")), "(a OR b) AND c");
  EXPECT_EQ(ToString(ParseExpression("a AND b OR c")), "(a AND b) OR c");
  EXPECT_EQ(ToString(ParseExpression("a ◁ b ◁ c")), "a PAND b PAND c");
  EXPECT_EQ(ToString(Ref("x")), "x");
}

}  // namespace
}  // namespace tft
