#include "polyfix/models.hpp"

#include <gtest/gtest.h>

#include "polyfix/syntax.hpp"
#include "support/model_values.hpp"
#include "support/term_gen.hpp"

using namespace polyfix;
using polyfix::testing::TermGen;
using polyfix::testing::random_value;

namespace {

Term T(const std::string& text, const Model& m) {
  ParseResult r = parse(text, m.table);
  EXPECT_TRUE(r.ok()) << text << (r.ok() ? "" : ": " + r.diagnostic().to_string());
  return r.term();
}

const char* kAssociativeModels[] = {"merge", "seq", "frame", "add", "mul", "matmul"};

}  // namespace

TEST(Eval, ArithmeticExamples) {
  const Model& add = builtin_model("add");
  EXPECT_EQ(eval(T("7+7+7", add), add), Value(Int(21)));
  const Model& mul = builtin_model("mul");
  EXPECT_EQ(eval(T("5*5*5*5", mul), mul), Value(Int(625)));
  // The middle-dot alias reaches the same kernel.
  EXPECT_EQ(eval(T("5 \xc2\xb7 5", mul), mul), Value(Int(25)));
}

TEST(Eval, SequencesConcatenate) {
  const Model& seq = builtin_model("seq");
  Environment env{{"u", Value(SeqValue{{"u"}})},
                  {"v", Value(SeqValue{{"v"}})},
                  {"w", Value(SeqValue{{"w"}})}};
  EXPECT_EQ(eval(T("u;v;w", seq), seq, env), Value(SeqValue{{"u", "v", "w"}}));
}

TEST(Eval, ErrorsCarryKinds) {
  const Model& add = builtin_model("add");
  try {
    eval(T("x+1", add), add);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalErrorKind::UnboundVariable);
  }
  try {
    const Model& seq = builtin_model("seq");
    eval(T("1+2", add), seq);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalErrorKind::KernelMismatch);
  }
  try {
    Model m2 = matmul_model(2);
    Environment env{{"a", Value(identity_matrix(2))}, {"b", Value(identity_matrix(3))}};
    eval(T("a*b", m2), m2, env);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalErrorKind::DimensionMismatch);
  }
}

TEST(Eval, RejectsTheNonAssociativeModel) {
  const Model& sub = builtin_model("sub");
  try {
    eval(T("1-2-3", sub), sub);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalErrorKind::NotAssociative);
  }
}

TEST(EvalFold, BothDirectionsDifferOnSubtraction) {
  const Model& sub = builtin_model("sub");
  Term t = T("1-2-3", sub);
  EXPECT_EQ(eval_fold(t, sub, Side::Left), Value(Int(-4)));   // (1-2)-3
  EXPECT_EQ(eval_fold(t, sub, Side::Right), Value(Int(2)));   // 1-(2-3)
}

TEST(EvalFold, DirectionIrrelevantForAddition) {
  const Model& add = builtin_model("add");
  TermGen gen(add.table, 97);
  for (int i = 0; i < 200; ++i) {
    std::vector<Term> args;
    for (std::size_t k = gen.pick(2, 6); k-- > 0;) {
      args.push_back(Term::constant(std::to_string(gen.pick(0, 99))));
    }
    Term t = Term::poly_app("+", std::move(args));
    EXPECT_EQ(eval_fold(t, add, Side::Left), eval_fold(t, add, Side::Right));
  }
}

TEST(Models, BinaryDenotationsAreAssociative) {
  for (const char* name : kAssociativeModels) {
    const Model& m = builtin_model(name);
    TermGen gen(m.table, 101);
    for (int i = 0; i < 1000; ++i) {
      Value a = random_value(m, gen), b = random_value(m, gen), c = random_value(m, gen);
      EXPECT_EQ(m.combine(m.combine(a, b), c), m.combine(a, m.combine(b, c)))
          << name << " failed on sample " << i;
    }
  }
}

TEST(Models, CommutativityHoldsExactlyWhereExpected) {
  // merge and frame commute; seq and matmul must not.
  for (const char* name : {"merge", "frame"}) {
    const Model& m = builtin_model(name);
    TermGen gen(m.table, 103);
    for (int i = 0; i < 300; ++i) {
      Value a = random_value(m, gen), b = random_value(m, gen);
      EXPECT_EQ(m.combine(a, b), m.combine(b, a)) << name;
    }
  }
  for (const char* name : {"seq", "matmul"}) {
    const Model& m = builtin_model(name);
    TermGen gen(m.table, 107);
    bool witness = false;
    for (int i = 0; i < 1000 && !witness; ++i) {
      Value a = random_value(m, gen), b = random_value(m, gen);
      witness = !(m.combine(a, b) == m.combine(b, a));
    }
    EXPECT_TRUE(witness) << name << " looked commutative on 1000 samples";
  }
}

TEST(Models, FrameCompositionIsIdempotent) {
  const Model& frame = builtin_model("frame");
  TermGen gen(frame.table, 109);
  for (int i = 0; i < 300; ++i) {
    Value f = random_value(frame, gen);
    EXPECT_EQ(frame.combine(f, f), f);
  }
}

TEST(Models, UnitsAreNeutral) {
  for (const char* name : kAssociativeModels) {
    const Model& m = builtin_model(name);
    ASSERT_TRUE(m.unit.has_value()) << name;
    TermGen gen(m.table, 113);
    for (int i = 0; i < 100; ++i) {
      Value v = random_value(m, gen);
      EXPECT_EQ(m.combine(*m.unit, v), v) << name;
      EXPECT_EQ(m.combine(v, *m.unit), v) << name;
    }
  }
}

TEST(Eval, BracketingNeverChangesTheValue) {
  for (const char* name : kAssociativeModels) {
    const Model& m = builtin_model(name);
    TermGen gen(m.table, 127);
    for (int round = 0; round < 60; ++round) {
      std::size_t arity = gen.pick(2, 5);
      std::vector<Term> args;
      Environment env;
      for (std::size_t k = 0; k < arity; ++k) {
        std::string var = "v" + std::to_string(k);
        args.push_back(Term::var(var));
        env[var] = random_value(m, gen);
      }
      Term flat = Term::poly_app(m.kernel, std::move(args));
      Value expect = eval(flat, m, env);
      EXPECT_EQ(eval_fold(flat, m, Side::Left, env), expect);
      EXPECT_EQ(eval_fold(flat, m, Side::Right, env), expect);
      for (const Term& b : enumerate_bracketings(flat)) {
        EXPECT_EQ(eval(b, m, env), expect) << name << ": " << print(b);
      }
    }
  }
}

TEST(Eval, UnitArityForms) {
  const Model& add = builtin_model("add");
  EXPECT_EQ(eval(Term::poly_app_short("+", {Term::constant("9")}), add), Value(Int(9)));
  EXPECT_EQ(eval(Term::poly_app_short("+", {}), add), Value(Int(0)));
  const Model& sub = builtin_model("sub");
  EXPECT_THROW(eval_fold(Term::poly_app_short("-", {}), sub, Side::Left), EvalError);
}

TEST(Leibniz, NumeralsAreFlatUnitSums) {
  EXPECT_EQ(leibniz_numeral(1), Term::constant("1"));
  EXPECT_EQ(leibniz_numeral(3),
            Term::poly_app("+", {Term::constant("1"), Term::constant("1"),
                                 Term::constant("1")}));
  EXPECT_EQ(psi_length(leibniz_numeral(7), "+"), 7u);
  EXPECT_THROW(leibniz_numeral(0), std::invalid_argument);
}

TEST(Leibniz, AdditionIsConcatenation) {
  const Model& add = builtin_model("add");
  Term sum = leibniz_add(leibniz_numeral(2), leibniz_numeral(3));
  EXPECT_EQ(eval(sum, add), Value(Int(5)));
  EXPECT_EQ(psi_length(sum, "+"), 5u);
  // No nesting: both argument lists melt into one flat numeral.
  for (const Term& a : sum.args()) EXPECT_TRUE(a.is_const("1"));

  EXPECT_EQ(psi_length(leibniz_add(leibniz_numeral(1), leibniz_numeral(1)), "+"), 2u);

  TermGen gen(add.table, 131);
  for (int i = 0; i < 200; ++i) {
    std::size_t a = gen.pick(1, 50), b = gen.pick(1, 50);
    Term s = leibniz_add(leibniz_numeral(a), leibniz_numeral(b));
    EXPECT_EQ(psi_length(s, "+"), a + b);
    EXPECT_EQ(eval(s, add), Value(Int(static_cast<unsigned long>(a + b))));
  }
}

TEST(Leibniz, RejectsNonNumerals) {
  EXPECT_THROW(leibniz_add(Term::constant("2"), leibniz_numeral(1)), EvalError);
  EXPECT_THROW(leibniz_add(Term::poly_app("+", {Term::constant("1"), Term::constant("2")}),
                           leibniz_numeral(1)),
               EvalError);
  EXPECT_THROW(leibniz_add(Term::poly_app("*", {Term::constant("1"), Term::constant("1")}),
                           leibniz_numeral(1)),
               EvalError);
}

TEST(Models, RegistryAndScalarMatrices) {
  EXPECT_THROW(builtin_model("nope"), std::invalid_argument);
  EXPECT_EQ(builtin_model_names().size(), 7u);
  // Numerals denote scalar matrices in matmul, so ground facts evaluate.
  const Model& mm = builtin_model("matmul");
  Value v = eval(T("2*3", mm), mm);
  const MatrixValue& m = std::get<MatrixValue>(v);
  EXPECT_EQ(m.at(0, 0), Int(6));
  EXPECT_EQ(m.at(0, 1), Int(0));
  EXPECT_EQ(to_string(v), "[[6, 0], [0, 6]]");
}

TEST(Values, Printing) {
  EXPECT_EQ(to_string(Value(Int(-7))), "-7");
  EXPECT_EQ(to_string(Value(SeqValue{{"a", "b"}})), "[a, b]");
  EXPECT_EQ(to_string(Value(BagValue{{{"a", 2}, {"b", 1}}})), "{a, a, b}");
  GraphValue g{{"p", "q"}, {{"p", "x", "q"}}};
  EXPECT_EQ(to_string(Value(std::move(g))), "{p, q | p-x->q}");
  EXPECT_EQ(to_string(Value(GraphValue{})), "{}");
}
