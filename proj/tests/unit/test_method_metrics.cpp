#include <gtest/gtest.h>

#include "testlab/common/error.hpp"
#include "testlab/metrics/method_metrics.hpp"
#include "testlab/metrics/parser.hpp"

using namespace testlab;
using namespace testlab::metrics;

namespace {

std::vector<MethodRecord> records_of(const std::string& class_body) {
  auto file = parse_source("T.java", "class T {\n" + class_body + "\n}\n");
  return compute_method_records(*file.unit.types.at(0), file.code);
}

MethodRecord only(const std::string& method) {
  auto r = records_of(method);
  EXPECT_EQ(r.size(), 1u);
  return r.at(0);
}

}  // namespace

TEST(MethodMetrics, StraightLine) {
  auto r = only("void f() {\n int a = 1;\n a++;\n}");
  EXPECT_EQ(r.cyclomatic, 1u);
  EXPECT_EQ(r.nesting, 1u);
  EXPECT_EQ(r.paths, 1u);
  EXPECT_EQ(r.knots, 0u);
  EXPECT_EQ(r.nost, 2u);
  EXPECT_EQ(r.loc, 4u);
  EXPECT_EQ(r.essential, 1u);
}

TEST(MethodMetrics, IfElse) {
  auto r = only("int f(int a) {\n if (a > 0) { a = 1; } else { a = 2; }\n return a;\n}");
  EXPECT_EQ(r.cyclomatic, 2u);
  EXPECT_EQ(r.paths, 2u);
  EXPECT_EQ(r.nesting, 2u);
  EXPECT_EQ(r.params, 1u);
  EXPECT_EQ(r.essential, 1u);
}

TEST(MethodMetrics, ShortCircuitVariants) {
  auto r = only("boolean f(boolean a, boolean b) {\n if (a && b) { return true; }\n"
                " boolean c = a || b;\n return c;\n}");
  EXPECT_EQ(r.cyclomatic, 3u);
  EXPECT_EQ(r.cyclomatic_strict, 4u);
  EXPECT_EQ(r.cyclomatic_modified, 3u);
}

TEST(MethodMetrics, SwitchCountsOnceWhenModified) {
  auto r = only(
      "int f(int k) {\n switch (k) {\n case 1: return 1;\n case 2:\n case 3: return 2;\n"
      " default: return 0;\n }\n}");
  EXPECT_EQ(r.cyclomatic, 4u);
  EXPECT_EQ(r.cyclomatic_modified, 2u);
  EXPECT_EQ(r.paths, 3u);
}

TEST(MethodMetrics, SwitchBreaksAreStructured) {
  auto r = only(
      "void f(int k) {\n switch (k) {\n case 1: g(); break;\n default: h(); break;\n }\n}");
  EXPECT_EQ(r.essential, 1u);
}

TEST(MethodMetrics, EarlyReturnInLoopIsUnstructured) {
  auto r = only(
      "int f(int[] xs) {\n for (int x : xs) {\n if (x < 0) {\n return x;\n }\n }\n return 0;\n}");
  EXPECT_EQ(r.cyclomatic, 3u);
  EXPECT_EQ(r.essential, 3u);
  EXPECT_EQ(r.nesting, 3u);
  EXPECT_EQ(r.knots, 0u);
}

TEST(MethodMetrics, ElseIfStaysAtSameDepth) {
  auto r = only("void f(int a) {\n if (a == 1) { g(); } else if (a == 2) { h(); } else { i(); }\n}");
  EXPECT_EQ(r.nesting, 2u);
  EXPECT_EQ(r.paths, 3u);
  EXPECT_EQ(r.cyclomatic, 3u);
}

TEST(MethodMetrics, LoopsAndTryPaths) {
  auto r = only(
      "void f() {\n while (a()) { b(); }\n try { c(); } catch (E e) { d(); } catch (F e) { }"
      " finally { g(); }\n}");
  EXPECT_EQ(r.paths, 2u * 3u);
  EXPECT_EQ(r.cyclomatic, 4u);
}

TEST(MethodMetrics, TernaryAddsDecisionAndPaths) {
  auto r = only("int f(int a) {\n return a > 0 ? a : -a;\n}");
  EXPECT_EQ(r.cyclomatic, 2u);
  EXPECT_EQ(r.paths, 2u);
}

TEST(MethodMetrics, KnotsFromInterleavedJumps) {
  auto r = only(
      "void f(int[] xs) {\n"
      " outer:\n"
      " for (int i = 0; i < 3; i++) {\n"       // line 4
      "  for (int x : xs) {\n"                   // line 5
      "   if (x == 0) break outer;\n"            // line 6 -> 9
      "   if (x == 1) continue;\n"               // line 7 -> 5
      "  }\n"                                    // line 8
      " }\n"                                     // line 9
      "}");
  EXPECT_EQ(r.knots, 1u);
}

TEST(MethodMetrics, PathCapSaturates) {
  std::string body = "void f(int a) {\n";
  for (int i = 0; i < 30; ++i) body += " if (a > " + std::to_string(i) + ") { a--; }\n";
  body += "}";
  EXPECT_EQ(only(body).paths, kPathCap);
}

TEST(MethodMetrics, LambdaCountsForComplexityButNotNesting) {
  auto r = only("void f() {\n run(() -> { if (x) { y(); } });\n}");
  EXPECT_EQ(r.cyclomatic, 2u);
  EXPECT_EQ(r.nesting, 1u);
  EXPECT_EQ(r.paths, 1u);
}

TEST(MethodMetrics, AnonymousClassBodiesAreExcluded) {
  auto r = only("Runnable f() {\n return new Runnable() { public void run() { if (x) y(); } };\n}");
  EXPECT_EQ(r.cyclomatic, 1u);
}

TEST(MethodMetrics, AccessorsAndMutators) {
  auto rs = records_of(
      "private int x;\n"
      "int getX() { return x; }\n"
      "int getY() { return this.x; }\n"
      "void setX(int v) { this.x = v; }\n"
      "void setY(int v) { x = v; }\n"
      "static int sx() { return x; }\n"
      "int notField() { return 3; }\n"
      "void twice(int v) { x = v; x = v; }\n");
  ASSERT_EQ(rs.size(), 7u);
  EXPECT_TRUE(rs[0].is_accessor_or_mutator);
  EXPECT_TRUE(rs[1].is_accessor_or_mutator);
  EXPECT_TRUE(rs[2].is_accessor_or_mutator);
  EXPECT_TRUE(rs[3].is_accessor_or_mutator);
  EXPECT_FALSE(rs[4].is_accessor_or_mutator);
  EXPECT_FALSE(rs[5].is_accessor_or_mutator);
  EXPECT_FALSE(rs[6].is_accessor_or_mutator);
  for (const auto& r : rs) {
    if (r.is_accessor_or_mutator) {
      EXPECT_LE(r.nost, 2u);
    }
  }
}

TEST(MethodMetrics, VisibilityAndFlags) {
  auto rs = records_of(
      "public T() {}\n protected void a() {}\n void b() {}\n private static void c() {}\n"
      "abstract void d();\n");
  ASSERT_EQ(rs.size(), 5u);
  EXPECT_TRUE(rs[0].is_constructor);
  EXPECT_EQ(rs[0].visibility, Visibility::Public);
  EXPECT_EQ(rs[1].visibility, Visibility::Protected);
  EXPECT_EQ(rs[2].visibility, Visibility::Package);
  EXPECT_EQ(rs[3].visibility, Visibility::Private);
  EXPECT_TRUE(rs[3].is_static);
  EXPECT_FALSE(rs[4].has_body);
  EXPECT_EQ(rs[4].cyclomatic, 1u);
  EXPECT_EQ(rs[4].nesting, 0u);
}

TEST(MethodMetrics, InterfaceMembersArePublic) {
  auto file = parse_source("I.java", "interface I { void run(); default int k() { return 1; } }");
  auto rs = compute_method_records(*file.unit.types[0], file.code);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].visibility, Visibility::Public);
  EXPECT_EQ(rs[1].visibility, Visibility::Public);
}

TEST(Parser, ModernSyntaxParses) {
  const char* src = R"(
package p.q;
import java.util.*;
import static java.lang.Math.max;
@SuppressWarnings("x")
public final class M<T extends Comparable<? super T>> extends Base implements I, J<T> {
  private final Map<String, List<int[]>> m = new HashMap<>();
  static { init(); }
  enum Color { RED, GREEN { int v() { return 2; } }; int v() { return 1; } }
  record Pt(int x, int y) { Pt { if (x < 0) throw new IllegalArgumentException(); } }
  sealed interface S permits A {}
  <R> R apply(java.util.function.Function<? super T, ? extends R> f, T t) { return f.apply(t); }
  int sw(Object o) {
    int k = switch (o.hashCode() % 3) { case 0 -> 1; case 1 -> { yield 2; } default -> 3; };
    if (o instanceof String s && !s.isEmpty()) k += s.length();
    Runnable r = () -> System.out.println(k);
    java.util.function.BiFunction<Integer, Integer, Integer> add = (a, b) -> a + b;
    Comparator<String> c = String::compareTo;
    int[][] grid = new int[3][];
    List<? extends Number> xs = List.of(1, 2);
    for (var e : m.entrySet()) { k ^= e.getKey().length() >>> 1; }
    try (var in = open(); var out = open()) { k <<= 1; } catch (IOException | RuntimeException e) { k = (int) (long) k; }
    label: do { k--; if (k > 10) break label; } while (k > 0);
    synchronized (this) { k = k > 0 ? (k < 5 ? 1 : 2) : 3; }
    assert k >= 0 : "neg";
    Object anon = new Object() { @Override public String toString() { return "a"; } };
    return ((Integer) k).intValue() + M.<Integer>id(1) + (k) - (int) +k;
  }
  static <U> U id(U u) { return u; }
}
)";
  auto f = parse_source("M.java", src);
  EXPECT_EQ(f.unit.package_name, "p.q");
  ASSERT_EQ(f.unit.imports.size(), 2u);
  EXPECT_TRUE(f.unit.imports[0].on_demand);
  EXPECT_TRUE(f.unit.imports[1].is_static);
  const auto& m = *f.unit.types[0];
  EXPECT_EQ(m.name, "M");
  EXPECT_EQ(m.extends.at(0).name, "Base");
  EXPECT_EQ(m.implements.size(), 2u);
  EXPECT_EQ(m.nested.size(), 3u);
  EXPECT_EQ(m.methods.size(), 3u);
}

TEST(Parser, ErrorsCarryPathAndLocation) {
  try {
    parse_source("bad/X.java", "class X { void f() { int = ; } }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad/X.java"), std::string::npos);
    EXPECT_EQ(e.line(), 1u);
  }
}
