#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <memory>

#include <nlohmann/json.hpp>

#include "mdiag/lab.hpp"

using namespace mdiag;
using nlohmann::json;

namespace {

const json& oracle() {
  static const json j = [] {
    std::ifstream in(std::string(MDIAG_TEST_DATA) + "/oracles/lab_oracle_expected.json");
    return json::parse(in);
  }();
  return j;
}

const FiniteGroupContext& group(int n, fp::Elem p) {
  static std::map<std::pair<int, fp::Elem>, std::unique_ptr<FiniteGroupContext>> cache;
  auto& slot = cache[{n, p}];
  if (!slot) slot = std::make_unique<FiniteGroupContext>(n, p);
  return *slot;
}

std::string key(int n, fp::Elem p) { return "SL" + std::to_string(n) + "_" + std::to_string(p); }

const std::vector<std::pair<int, fp::Elem>> kSmall{{2, 2}, {2, 3}, {2, 5}, {2, 7}, {3, 2}, {3, 3}};

std::vector<std::size_t> sorted_sizes(const FiniteGroupContext& g) {
  std::vector<std::size_t> out;
  for (const auto& c : g.classes()) out.push_back(c.members.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Lab, OrdersAndClassesMatchOracle) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{2, 2}, {2, 3}, {2, 5}, {2, 7}, {3, 2}, {3, 3}, {4, 2}}) {
    const auto& g = group(n, p);
    const auto& o = oracle().at(key(n, p));
    EXPECT_EQ(g.order(), o.at("order").get<std::size_t>()) << key(n, p);
    EXPECT_EQ(g.classes().size(), o.at("classes").get<std::size_t>()) << key(n, p);
    EXPECT_EQ(sorted_sizes(g), o.at("class_sizes").get<std::vector<std::size_t>>()) << key(n, p);
    EXPECT_EQ(*g.sl().group_order(), g.order());
    std::size_t total = 0;
    for (const auto& c : g.classes()) {
      EXPECT_EQ(g.order() % c.members.size(), 0u);
      total += c.members.size();
    }
    EXPECT_EQ(total, g.order());
  }
  EXPECT_EQ(group(2, 3).order(), 24u);
  EXPECT_EQ(*SLContext(2, 5).group_order(), 120u);
  EXPECT_EQ(*SLContext(3, 3).group_order(), 5616u);
}

TEST(Lab, Budget) {
  EXPECT_THROW(FiniteGroupContext(5, 2), BudgetExceeded);
  EXPECT_THROW(FiniteGroupContext(2, 4), InvalidArgument);
  EXPECT_THROW(FiniteGroupContext(1, 5), InvalidArgument);
  try {
    FiniteGroupContext(3, 7);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("5630688"), std::string::npos);
  }
}

TEST(Lab, SubgroupMarkers) {
  for (auto [n, p] : kSmall) {
    const auto& g = group(n, p);
    const auto& sl = g.sl();
    std::size_t q = 1;
    for (int k = 0; k < n * (n - 1) / 2; ++k) q *= p;
    std::size_t t = 1;
    for (int k = 0; k < n - 1; ++k) t *= p - 1;
    EXPECT_EQ(g.unipotent().size(), q);
    EXPECT_EQ(g.lower_unipotent().size(), q);
    EXPECT_EQ(g.torus().size(), t);
    EXPECT_EQ(g.borel().size(), q * t);
    // B = T U, and w0 normalizes T.
    EXPECT_EQ(set_product(g, g.torus(), g.unipotent()), g.borel());
    const Matrix w = sl.w0();
    EXPECT_EQ(w.det(), 1u);
    for (auto x : g.torus().members()) EXPECT_TRUE(g.in_torus(g.id_of(w.inverse() * g.element(x) * w)));
  }
}

TEST(Lab, BorelFactorizeExamples) {
  const SLContext sl(2, 5);
  auto bc = sl.borel_factorize(sl.matrix({{2, 1}, {0, 3}}));
  EXPECT_EQ(bc.torus, (std::vector<fp::Elem>{2, 3}));
  EXPECT_EQ(bc.simple_coords, (std::vector<fp::Elem>{3}));
  bc = sl.borel_factorize(sl.identity());
  EXPECT_EQ(bc.torus, (std::vector<fp::Elem>{1, 1}));
  EXPECT_EQ(bc.simple_coords, (std::vector<fp::Elem>{0}));
  const SLContext sl3(3, 3);
  bc = sl3.borel_factorize(sl3.matrix({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(bc.simple_coords, (std::vector<fp::Elem>{1, 0}));
  EXPECT_EQ(bc.higher_coords, (std::vector<fp::Elem>{0}));
  EXPECT_THROW(sl.borel_factorize(sl.matrix({{1, 0}, {1, 1}})), InvalidArgument);
  EXPECT_THROW(sl.borel_factorize(sl.matrix({{1, 1}, {0, 2}})), InvalidArgument);
}

TEST(Lab, BorelRoundTripExhaustive) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{2, 5}, {2, 7}, {3, 3}, {4, 2}}) {
    const auto& g = group(n, p);
    for (auto b : g.borel().members()) {
      const Matrix m = g.element(b);
      const auto bc = g.sl().borel_factorize(m);
      ASSERT_EQ(g.sl().reassemble(bc), m) << m.str();
      for (int i = 0; i + 1 < n; ++i) {
        ASSERT_EQ(bc.simple_coords[static_cast<std::size_t>(i)], fp::mul(m(i, i + 1), fp::inv(m(i, i), p), p));
      }
    }
  }
}

TEST(Lab, DiagramOf) {
  const SLContext sl5(5, 2);
  const auto u = sl5.matrix({{1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}});
  EXPECT_EQ(sl5.diagram_of(u).coeffs(), (std::vector<Coeff>{1, 1, 0, 1}));
  EXPECT_EQ(sl5.diagram_of(sl5.identity()), MarkedDiagram::zero(sl5.system(), DiagramMode::binary));
  const SLContext sl2(2, 5);
  EXPECT_EQ(sl2.diagram_of(sl2.matrix({{2, 1}, {0, 3}})).coeffs(), (std::vector<Coeff>{1}));
  EXPECT_THROW(sl2.diagram_of(sl2.matrix({{0, 4}, {1, 0}})), InvalidArgument);
}

TEST(Lab, DiagramOfTorusTimesUTimesCommutator) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{2, 3}, {2, 5}, {3, 2}, {3, 3}}) {
    const auto& g = group(n, p);
    const auto& sl = g.sl();
    std::vector<Matrix> tails;
    for (auto c : g.unipotent().members()) {
      if (sl.diagram_mask(g.element(c)) == 0) tails.push_back(g.element(c));
    }
    for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
      const auto d = sl.diagram_from_mask(mask);
      const Matrix ud = sl.u_of(d);
      for (auto t : g.torus().members()) {
        for (const auto& c : tails) ASSERT_EQ(sl.diagram_of(g.element(t) * ud * c), d);
      }
    }
  }
}

TEST(Lab, DerivedSubgroupOfUHasZeroSimpleCoordinates) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{3, 2}, {3, 3}, {4, 2}}) {
    const auto& g = group(n, p);
    const auto u = g.unipotent().members();
    ElementSet comm(g.order());
    for (auto a : u) {
      for (auto b : u) comm.insert(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
    }
    ElementSet closure = comm;
    for (;;) {
      const auto next = set_product(g, closure, comm);
      if (next == closure) break;
      closure = next;
    }
    ElementSet zero(g.order());
    for (auto x : u) {
      if (g.sl().diagram_mask(g.element(x)) == 0) zero.insert(x);
    }
    EXPECT_EQ(closure, zero) << key(n, p);
  }
}

TEST(Lab, ClassDiagramSets) {
  const auto& g = group(2, 5);
  const auto id_class = g.class_of(g.identity());
  EXPECT_EQ(class_diagram_set(g, id_class),
            std::vector<MarkedDiagram>{MarkedDiagram::zero(g.sl().system(), DiagramMode::binary)});
  EXPECT_TRUE(g.classes()[id_class].is_central);
  const auto uc = g.class_of(g.id_of(g.sl().matrix({{1, 1}, {0, 1}})));
  EXPECT_TRUE(g.classes()[uc].diagram_set.count(1));
  const auto& g3 = group(3, 3);
  const auto rc = g3.class_of(g3.id_of(g3.sl().matrix({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}})));
  EXPECT_TRUE(g3.classes()[rc].diagram_set.count(3));
  EXPECT_TRUE(g3.classes()[rc].is_U_regular);
}

TEST(Lab, URegularMeansTorusTimesRegularUnipotent) {
  for (auto [n, p] : kSmall) {
    const auto& g = group(n, p);
    const std::uint32_t full = (1U << (n - 1)) - 1;
    for (const auto& c : g.classes()) {
      bool has_tu = false;
      for (auto x : c.members) {
        if (!g.in_borel(x)) continue;
        const Matrix m = g.element(x);
        Matrix t_inv(n, p);
        for (int i = 0; i < n; ++i) t_inv.set(i, i, fp::inv(m(i, i), p));
        if (g.sl().is_regular_unipotent(t_inv * m)) has_tu = true;
      }
      EXPECT_EQ(c.is_U_regular, c.diagram_set.count(full) > 0);
      EXPECT_EQ(c.is_U_regular, has_tu) << key(n, p);
    }
  }
}

TEST(Lab, SetProduct) {
  const auto& g = group(2, 5);
  ElementSet one(g.order());
  one.insert(g.identity());
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto cs = g.class_set(c);
    EXPECT_EQ(set_product(g, one, cs), cs);
    ElementSet inv(g.order());
    for (auto x : cs.members()) inv.insert(g.inverse(x));
    EXPECT_TRUE(set_product(g, cs, inv).contains(g.identity()));
  }
}

TEST(Lab, RegularSemisimple) {
  const SLContext sl(2, 5);
  const auto& o = oracle().at("SL2_5").at("is_rss");
  EXPECT_EQ(sl.is_regular_semisimple(sl.matrix({{2, 0}, {0, 3}})), o.at("diag23").get<bool>());
  EXPECT_EQ(sl.is_regular_semisimple(sl.matrix({{1, 1}, {0, 1}})), o.at("unipotent").get<bool>());
  EXPECT_EQ(sl.is_regular_semisimple(sl.matrix({{0, -1}, {1, 0}})), o.at("rot").get<bool>());
  EXPECT_TRUE(o.at("diag23").get<bool>());
  EXPECT_FALSE(o.at("unipotent").get<bool>());
  EXPECT_TRUE(o.at("rot").get<bool>());
  // Characteristic polynomial of a companion matrix is its defining polynomial.
  const SLContext sl4(4, 7);
  const auto comp = sl4.matrix({{0, 0, 0, -1}, {1, 0, 0, -2}, {0, 1, 0, -3}, {0, 0, 1, -4}});
  EXPECT_EQ(comp.charpoly(), (fp::Poly{1, 2, 3, 4, 1}));
}

TEST(Lab, UUUUMatchesOracle) {
  for (auto [n, p] : kSmall) {
    const auto r = verify_uuuu(group(n, p));
    const auto& o = oracle().at(key(n, p));
    EXPECT_EQ(r.metrics.at("missing"), o.at("uuuu_missing").get<std::int64_t>()) << key(n, p);
    EXPECT_EQ(r.metrics.at("u_uw_size"), o.at("u_uw_size").get<std::int64_t>()) << key(n, p);
    EXPECT_EQ(r.holds, r.violations == 0);
  }
}

TEST(Lab, BoxplusMatchesOracle) {
  for (auto [n, p] : kSmall) {
    const auto r = verify_boxplus(group(n, p));
    EXPECT_EQ(static_cast<std::int64_t>(r.violations), oracle().at(key(n, p)).at("boxplus_violations").get<std::int64_t>())
        << key(n, p);
  }
  // Trivial pair: identity class with itself.
  const auto& g = group(2, 5);
  const auto id = g.class_of(g.identity());
  EXPECT_EQ(g.class_product(id, id), std::vector<std::size_t>{id});
}

TEST(Lab, RegularSupportMatchesOracle) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{3, 3}, {4, 2}, {3, 2}, {2, 5}}) {
    const auto r = verify_regular_support(group(n, p));
    EXPECT_EQ(static_cast<std::int64_t>(r.violations),
              oracle().at(key(n, p)).at("regular_support_violations").get<std::int64_t>());
    EXPECT_EQ(r.checked, group(n, p).unipotent().size());
  }
  const SLContext sl(3, 3);
  EXPECT_TRUE(sl.is_regular_unipotent(sl.matrix({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}})));
  EXPECT_FALSE(sl.is_regular_unipotent(sl.matrix({{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})));
}

TEST(Lab, TorusOrbitMatchesOracle) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{2, 3}, {2, 5}, {3, 3}, {3, 2}}) {
    const auto r = verify_torus_orbit(group(n, p));
    const auto& o = oracle().at(key(n, p));
    EXPECT_EQ(r.metrics.at("a_violations"), o.at("torus_orbit_a_violations").get<std::int64_t>()) << key(n, p);
    EXPECT_EQ(r.metrics.at("b_violations"), o.at("torus_orbit_b_violations").get<std::int64_t>()) << key(n, p);
    EXPECT_EQ(r.metrics.at("b_checked"), o.at("torus_orbit_b_checked").get<std::int64_t>()) << key(n, p);
  }
  const SLContext sl(2, 5);
  const auto t = sl.matrix({{3, 0}, {0, 2}});
  EXPECT_EQ((t * sl.matrix({{1, 2}, {0, 1}}) * t.inverse())(0, 1), 3u);
}

TEST(Lab, SuRegMatchesOracle) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{2, 5}, {3, 3}}) {
    const auto r = verify_su_reg(group(n, p));
    const auto& o = oracle().at(key(n, p));
    EXPECT_EQ(r.metrics.at("targets"), o.at("su_reg_total").get<std::int64_t>());
    EXPECT_EQ(r.metrics.at("covered"), o.at("su_reg_covered").get<std::int64_t>());
  }
  const auto sampled = verify_su_reg(group(3, 3), 99, 10);
  EXPECT_EQ(sampled.metrics.at("elements") <= 10, true);
}

TEST(Lab, SixURegularMatchesOracle) {
  for (auto [n, p] : std::vector<std::pair<int, fp::Elem>>{{2, 3}, {2, 5}, {2, 7}, {3, 2}}) {
    const auto r = verify_six_uregular(group(n, p));
    const auto& o = oracle().at(key(n, p));
    EXPECT_EQ(r.metrics.at("uregular_classes"), o.at("uregular_classes").get<std::int64_t>());
    EXPECT_EQ(r.metrics.at("regular_semisimple_classes"), o.at("regular_semisimple_classes").get<std::int64_t>());
    EXPECT_EQ(static_cast<std::int64_t>(r.checked), o.at("six_tuples").get<std::int64_t>());
    EXPECT_EQ(static_cast<std::int64_t>(r.violations), o.at("six_tuples_failing").get<std::int64_t>());
  }
}

TEST(Lab, ThmCShadowMatchesOracle) {
  const auto& g5 = group(2, 5);
  const auto& sl = g5.sl();
  const auto d1 = full_diagram(sl.system());
  std::vector<std::size_t> classes;
  for (int i = 0; i < 8; ++i) classes.push_back(g5.class_of(g5.id_of(sl.matrix({{1, 1}, {0, 1}}))));
  for (int i = 0; i < 4; ++i) classes.push_back(g5.class_of(g5.id_of(sl.matrix({{1, 2}, {0, 1}}))));
  for (int i = 0; i < 4; ++i) classes.push_back(g5.class_of(g5.id_of(sl.matrix({{4, 1}, {0, 4}}))));
  auto r = verify_thm_C_shadow(g5, classes, std::vector<MarkedDiagram>(16, d1));
  EXPECT_EQ(r.holds, oracle().at("SL2_5").at("thmC_mixed").get<bool>());
  EXPECT_TRUE(r.witness);
  EXPECT_EQ(verify_thm_C_regular_unipotent(g5, 16).holds, oracle().at("SL2_5").at("thmC_16_unipotent").get<bool>());
  EXPECT_EQ(verify_thm_C_regular_unipotent(group(2, 3), 16).holds,
            oracle().at("SL2_3").at("thmC_16_unipotent").get<bool>());
  EXPECT_THROW(verify_thm_C_regular_unipotent(g5, 15), PreconditionFailed);
  const auto id = g5.class_of(g5.identity());
  EXPECT_THROW(verify_thm_C_shadow(g5, std::vector<std::size_t>(16, id), std::vector<MarkedDiagram>(16, d1)),
               PreconditionFailed);
}

TEST(Lab, ReportsAreDeterministic) {
  const auto& g = group(2, 7);
  const auto a = verify_six_uregular(g, 42, 50);
  const auto b = verify_six_uregular(g, 42, 50);
  EXPECT_EQ(a.checked, 50u);
  EXPECT_EQ(a.metrics, b.metrics);
  EXPECT_EQ(a.counterexamples, b.counterexamples);
  const auto s1 = verify_su_reg(group(3, 3), 7, 20);
  const auto s2 = verify_su_reg(group(3, 3), 7, 20);
  EXPECT_EQ(s1.metrics, s2.metrics);
}
