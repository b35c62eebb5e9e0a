#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "testlab/common/error.hpp"
#include "testlab/metrics/extractor.hpp"
#include "testlab/metrics/sub_metrics.hpp"

using namespace testlab;
using namespace testlab::metrics;

namespace {

const std::filesystem::path kSmall = std::filesystem::path(TESTLAB_FIXTURE_DIR) / "small";

struct Loaded {
  ProjectIndex index;
  ProjectAnalysis analysis;
  explicit Loaded(const std::filesystem::path& root) : index(load_project(root)), analysis(index) {}

  const MetricMap& metrics(const std::string& id) const {
    auto i = index.find(id);
    if (!i) throw std::runtime_error("no class " + id);
    return analysis.cls(*i).metrics;
  }
};

MethodRecord rec(std::uint64_t cc, bool accessor = false) {
  MethodRecord r;
  r.cyclomatic = r.cyclomatic_modified = r.cyclomatic_strict = r.essential = cc;
  r.is_accessor_or_mutator = accessor;
  return r;
}

}  // namespace

TEST(SubMetrics, CyclomaticYieldsFortyNames) {
  auto out = derive_sub_metrics({rec(1), rec(2), rec(3)}, "CC");
  EXPECT_EQ(out.size(), 40u);
  std::set<std::string> names;
  for (auto& [n, v] : out) names.insert(n);
  EXPECT_EQ(names.size(), 40u);
  EXPECT_TRUE(names.count("CC_Sum_NAMM"));
  EXPECT_TRUE(names.count("CCEssential_SD_NAMM"));
}

TEST(SubMetrics, SingleVariantBasesYieldTen) {
  for (auto base : kMethodBases) {
    if (base == "CC") continue;
    EXPECT_EQ(derive_sub_metrics({rec(1)}, base).size(), 10u) << base;
  }
}

TEST(SubMetrics, SingletonStatistics) {
  auto out = derive_sub_metrics({rec(5)}, "CC");
  MetricMap m(out.begin(), out.end());
  EXPECT_EQ(m["CC_Min_All"], 5);
  EXPECT_EQ(m["CC_Max_All"], 5);
  EXPECT_EQ(m["CC_Mean_All"], 5);
  EXPECT_EQ(m["CC_Sum_All"], 5);
  EXPECT_EQ(m["CC_SD_All"], 0);
}

TEST(SubMetrics, PopulationSdOverNamm) {
  auto out = derive_sub_metrics({rec(2), rec(4), rec(9, true)}, "CC");
  MetricMap m(out.begin(), out.end());
  EXPECT_DOUBLE_EQ(m["CC_Mean_NAMM"], 3.0);
  EXPECT_DOUBLE_EQ(m["CC_SD_NAMM"], 1.0);
  EXPECT_DOUBLE_EQ(m["CC_Max_All"], 9.0);
}

TEST(SubMetrics, EmptyNammFilterGivesZeros) {
  auto out = derive_sub_metrics({rec(3, true)}, "CC");
  MetricMap m(out.begin(), out.end());
  for (auto op : kStatOps) EXPECT_EQ(m["CC_" + std::string(op) + "_NAMM"], 0.0);
  EXPECT_EQ(m["CC_Sum_All"], 3.0);
}

TEST(Manifest, RoundTripsAndHashes) {
  const auto& m = default_manifest();
  auto again = Manifest::parse(m.serialize());
  EXPECT_EQ(again, m);
  EXPECT_EQ(again.hash(), m.hash());
  EXPECT_EQ(m.hash().size(), 16u);
}

TEST(Manifest, RejectsDuplicatesAndBadBanner) {
  EXPECT_THROW(Manifest::parse("X\tclass\tdirect\n"), SchemaError);
  EXPECT_THROW(Manifest::parse("# testlab-manifest v1\nA\tclass\tdirect\nA\tclass\tdirect\n"),
               SchemaError);
  EXPECT_THROW(Manifest::parse("# testlab-manifest v1\nA\tbogus\tdirect\n"), SchemaError);
  EXPECT_THROW(Manifest::parse("# testlab-manifest v2\n"), SchemaError);
}

TEST(Manifest, DefaultBlocks) {
  const auto& m = default_manifest();
  std::size_t cls = 0, ctx = 0, lex = 0, derived = 0;
  for (const auto& s : m.metrics()) {
    cls += s.block == MetricBlock::Class;
    ctx += s.block == MetricBlock::Context;
    lex += s.block == MetricBlock::Lexical;
    derived += s.derived;
    if (s.block == MetricBlock::Context) {
      EXPECT_EQ(s.name.rfind("PK", 0), 0u);
    }
  }
  EXPECT_EQ(cls, 31u + 100u);
  EXPECT_EQ(ctx, 35u + 12u + 4u);
  EXPECT_EQ(lex, 17u);
  EXPECT_EQ(derived, 135u);
  EXPECT_EQ(m.size(), 199u);
}

TEST(ClassMetrics, VisibilityAndSize) {
  Loaded p(kSmall);
  const auto& hub = p.metrics("p.Hub");
  EXPECT_EQ(hub.at("CSNOPLM"), 2);
  EXPECT_EQ(hub.at("CSNOPRM"), 1);
  EXPECT_EQ(hub.at("CSNOM"), 3);
  EXPECT_EQ(hub.at("CSNOIA"), 1);
  EXPECT_EQ(hub.at("CSDAC"), 1);
}

TEST(ClassMetrics, CouplingToThreeProjectClasses) {
  Loaded p(kSmall);
  const auto& hub = p.metrics("p.Hub");
  EXPECT_EQ(hub.at("CSCBO"), 3);
  EXPECT_EQ(hub.at("CSFANOUT"), 3);
  EXPECT_EQ(hub.at("CSDIT"), 0);
  EXPECT_EQ(hub.at("CSNOP"), 0);
  EXPECT_EQ(hub.at("CSNOMCALL"), 3);
  // A.run, B.stat, C.go plus the A and C constructors.
  EXPECT_EQ(hub.at("CSRFC"), 3 + 5);
  EXPECT_EQ(p.metrics("q.B").at("CSFANIN"), 1);
  EXPECT_EQ(p.metrics("q.C").at("CSDEPENDSBY"), 1);
}

TEST(ClassMetrics, Inheritance) {
  Loaded p(kSmall);
  EXPECT_EQ(p.metrics("p.Helper").at("CSDIT"), 1);
  EXPECT_EQ(p.metrics("p.Helper").at("CSNOP"), 1);
  EXPECT_EQ(p.metrics("p.Helper").at("CSNMO"), 1);
  EXPECT_EQ(p.metrics("p.Helper").at("CSNIM"), 1);  // getCount
  EXPECT_EQ(p.metrics("p.A").at("CSNOC"), 2);
  EXPECT_EQ(p.metrics("q.C").at("CSNIM"), 2);
  EXPECT_EQ(p.metrics("p.A").at("CSNOAMM"), 1);
  EXPECT_EQ(p.metrics("p.A").at("CSNOMNAMM"), 1);
}

TEST(ClassMetrics, ForeignDataAccess) {
  Loaded p(kSmall);
  const auto& c = p.metrics("q.C");
  // other.getCount() via accessor and other.count directly name one attribute each.
  EXPECT_EQ(c.at("CSATFD"), 2);
  EXPECT_EQ(c.at("CSCFNAMM"), 0);
  EXPECT_EQ(c.at("CSLOCM"), 1);
}

TEST(PackageContext, CountsFilesAndClasses) {
  Loaded p(kSmall);
  const auto& pk = p.analysis.package_context("p");
  EXPECT_EQ(pk.at("PKNOCS"), 3);
  EXPECT_EQ(pk.at("PKNOFL"), 2);
  const auto& q = p.analysis.package_context("q");
  EXPECT_EQ(q.at("PKNOSM"), 2);
}

TEST(PackageContext, SingletonPackage) {
  MetricMap m;
  for (auto n : kClassDirectMetrics) m[std::string(n)] = 3;
  for (auto b : kMethodBases) {
    for (auto& n : sub_metric_names(b)) m[n] = 2;
  }
  PackageMember member{&m, 0, false, false};
  auto pk = compute_package_context(std::span<const PackageMember>(&member, 1));
  EXPECT_EQ(pk.at("PKLOC_Mean"), 3);
  EXPECT_EQ(pk.at("PKLOC_SD"), 0);
  EXPECT_EQ(pk.at("PKCC_Mean"), 2);
  EXPECT_EQ(pk.at("PKNOCS"), 1);
  EXPECT_THROW(compute_package_context({}), InvalidArgument);
}

TEST(Features, SamePackageSharesContextBlock) {
  Loaded p(kSmall);
  const auto& man = default_manifest();
  auto a = class_feature_vector(p.analysis, *p.index.find("p.A"), man);
  auto h = class_feature_vector(p.analysis, *p.index.find("p.Hub"), man);
  ASSERT_EQ(a.values.size(), man.size());
  for (std::size_t i = 0; i < man.size(); ++i) {
    if (man.metrics()[i].block == MetricBlock::Context) {
      EXPECT_EQ(a.values[i], h.values[i]);
    }
  }
}

TEST(Features, MissingNameIsSchemaMismatch) {
  Manifest m({{"NOPE", MetricBlock::Class, false}});
  EXPECT_THROW(assemble_feature_vector({}, {}, {}, m), SchemaMismatch);
}

TEST(Features, DemoCorpusIsFiniteOrderedAndDeterministic) {
  const auto& man = default_manifest();
  auto a = extract_project(TESTLAB_DEMO_CORPUS, man);
  auto b = extract_project(TESTLAB_DEMO_CORPUS, man);
  EXPECT_EQ(testlab::to_csv(a.to_csv()), testlab::to_csv(b.to_csv()));
  EXPECT_GE(a.rows.size(), 30u);
  for (const auto& row : a.rows) {
    ASSERT_EQ(row.size(), man.size());
    for (double v : row) EXPECT_TRUE(std::isfinite(v));
  }
  std::set<std::string> ids(a.class_ids.begin(), a.class_ids.end());
  EXPECT_TRUE(ids.count("com.demo.model.Book.Builder"));
  EXPECT_EQ(ids.size(), a.class_ids.size());
}

TEST(Features, MinMeanMaxOrderingOnDemo) {
  const auto& man = default_manifest();
  auto t = extract_project(TESTLAB_DEMO_CORPUS, man);
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < t.names.size(); ++i) {
      const auto& n = t.names[i];
      const auto pos = n.find("_Min_");
      if (pos == std::string::npos) continue;
      const auto base = n.substr(0, pos);
      const auto filter = n.substr(pos + 5);
      const double mn = row[*man.index_of(n)];
      const double mean = row[*man.index_of(base + "_Mean_" + filter)];
      const double mx = row[*man.index_of(base + "_Max_" + filter)];
      const double sd = row[*man.index_of(base + "_SD_" + filter)];
      EXPECT_LE(mn, mean) << n;
      EXPECT_LE(mean, mx) << n;
      EXPECT_GE(sd, 0) << n;
    }
  }
}

TEST(Features, CsvRoundTrip) {
  const auto& man = default_manifest();
  auto t = extract_project(kSmall, man);
  auto back = FeatureTable::from_csv(parse_csv(to_csv(t.to_csv())), man);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.class_ids, t.class_ids);
}
