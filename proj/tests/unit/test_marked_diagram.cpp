#include <gtest/gtest.h>

#include <random>

#include "mdiag/marked_diagram.hpp"

using namespace mdiag;

namespace {

const auto kA4 = build_root_system("A4");

MarkedDiagram C(const RootSystemPtr& rs, std::vector<Coeff> c) { return MarkedDiagram(rs, std::move(c)); }
MarkedDiagram B(const RootSystemPtr& rs, std::vector<Coeff> c) {
  return MarkedDiagram(rs, std::move(c), DiagramMode::binary);
}

MarkedDiagram random_diagram(std::mt19937_64& rng, const RootSystemPtr& rs, DiagramMode mode) {
  std::vector<Coeff> c(static_cast<std::size_t>(rs->rank()));
  for (auto& x : c) x = mode == DiagramMode::binary ? rng() % 2 : rng() % 4;
  return MarkedDiagram(rs, c, mode);
}

}  // namespace

TEST(MarkedDiagram, FullDiagram) {
  EXPECT_EQ(full_diagram(kA4).coeffs(), (std::vector<Coeff>{1, 1, 1, 1}));
  EXPECT_EQ(full_diagram(build_root_system("A1")).coeffs(), (std::vector<Coeff>{1}));
  EXPECT_EQ(full_diagram(build_root_system("G2")).coeffs(), (std::vector<Coeff>{1, 1}));
}

TEST(MarkedDiagram, Boxplus) {
  EXPECT_EQ(boxplus(B(kA4, {0, 1, 0, 1}), B(kA4, {1, 1, 0, 0})), B(kA4, {1, 1, 0, 1}));
  const auto d = B(kA4, {0, 1, 1, 0});
  EXPECT_EQ(boxplus(d, d), d);
  EXPECT_EQ(boxplus(d, MarkedDiagram::zero(kA4, DiagramMode::binary)), d);
}

TEST(MarkedDiagram, Add) {
  EXPECT_EQ(add(C(kA4, {0, 3, 0, 1}), C(kA4, {1, 1, 0, 0})), C(kA4, {1, 4, 0, 1}));
  const auto d = C(kA4, {2, 0, 5, 1});
  EXPECT_EQ(add(d, MarkedDiagram::zero(kA4)), d);
  const auto a1 = build_root_system("A1");
  EXPECT_EQ(add(add(C(a1, {1}), C(a1, {1})), C(a1, {1})), C(a1, {3}));
}

TEST(MarkedDiagram, Geq) {
  EXPECT_TRUE(geq(C(kA4, {1, 4, 0, 1}), C(kA4, {1, 1, 0, 0})));
  const auto a2 = build_root_system("A2");
  EXPECT_FALSE(geq(C(a2, {1, 0}), C(a2, {0, 1})));
  EXPECT_FALSE(geq(C(a2, {0, 1}), C(a2, {1, 0})));
  EXPECT_TRUE(geq(C(a2, {3, 2}), C(a2, {3, 2})));
}

TEST(MarkedDiagram, Psi) {
  EXPECT_EQ(psi(C(kA4, {0, 3, 0, 1})), B(kA4, {0, 1, 0, 1}));
  const auto a2 = build_root_system("A2");
  EXPECT_EQ(psi(C(a2, {0, 0})), B(a2, {0, 0}));
  EXPECT_EQ(psi(C(a2, {2, 1})), B(a2, {1, 1}));
  EXPECT_TRUE(is_regular(psi(C(a2, {2, 1}))));
}

TEST(MarkedDiagram, SupportRegularScale) {
  EXPECT_EQ(support(B(kA4, {1, 1, 0, 1})), (std::vector<int>{0, 1, 3}));
  EXPECT_TRUE(support(MarkedDiagram::zero(kA4)).empty());
  EXPECT_EQ(support(full_diagram(kA4)), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_FALSE(is_regular(C(kA4, {1, 4, 0, 1})));
  EXPECT_TRUE(is_regular(full_diagram(kA4)));
  const auto a2 = build_root_system("A2");
  EXPECT_TRUE(is_regular(C(a2, {2, 1})));
  const auto a1 = build_root_system("A1");
  EXPECT_EQ(scale(16, full_diagram(a1, DiagramMode::counting)), C(a1, {16}));
  EXPECT_EQ(scale(0, C(a2, {4, 1})), MarkedDiagram::zero(a2));
  EXPECT_EQ(scale(2, C(a2, {0, 3})), C(a2, {0, 6}));
}

TEST(MarkedDiagram, ModeAndSystemErrors) {
  const auto a2 = build_root_system("A2");
  const auto g2 = build_root_system("G2");
  EXPECT_THROW(add(B(a2, {1, 0}), B(a2, {0, 1})), ModeMismatch);
  EXPECT_THROW(boxplus(C(a2, {1, 0}), C(a2, {0, 1})), ModeMismatch);
  EXPECT_THROW(add(C(a2, {1, 0}), C(g2, {0, 1})), ModeMismatch);
  EXPECT_THROW(geq(C(a2, {1, 0}), C(g2, {0, 1})), ModeMismatch);
  EXPECT_THROW(psi(B(a2, {1, 0})), ModeMismatch);
  EXPECT_THROW(B(a2, {2, 0}), InvalidArgument);
  EXPECT_THROW(C(a2, {1, 0, 0}), InvalidArgument);
  EXPECT_THROW(C(nullptr, {}), InvalidArgument);
  EXPECT_THROW(sum(std::vector<MarkedDiagram>{}), InvalidArgument);
  // Separately built systems of the same type are interchangeable.
  EXPECT_EQ(add(C(a2, {1, 0}), C(build_root_system("A2"), {0, 1})), C(a2, {1, 1}));
}

TEST(MarkedDiagram, RandomizedMonoidLaws) {
  std::mt19937_64 rng(7);
  const std::vector<RootSystemPtr> systems{build_root_system("A1"), build_root_system("A4"), build_root_system("G2"),
                                           build_root_system("E8"), build_root_system("B5")};
  for (int t = 0; t < 10000; ++t) {
    const auto& rs = systems[static_cast<std::size_t>(t) % systems.size()];
    const auto a = random_diagram(rng, rs, DiagramMode::counting);
    const auto b = random_diagram(rng, rs, DiagramMode::counting);
    const auto c = random_diagram(rng, rs, DiagramMode::counting);
    ASSERT_EQ(add(a, b), add(b, a));
    ASSERT_EQ(add(add(a, b), c), add(a, add(b, c)));
    ASSERT_EQ(add(a, MarkedDiagram::zero(rs)), a);
    ASSERT_EQ(psi(add(a, b)), boxplus(psi(a), psi(b)));
    ASSERT_EQ(is_regular(a), is_regular(psi(a)));
    ASSERT_TRUE(geq(a, a));
    if (geq(a, b) && geq(b, a)) { ASSERT_EQ(a, b); }
    if (geq(a, b) && geq(b, c)) { ASSERT_TRUE(geq(a, c)); }
    ASSERT_TRUE(geq(add(a, b), a));

    const auto x = random_diagram(rng, rs, DiagramMode::binary);
    const auto y = random_diagram(rng, rs, DiagramMode::binary);
    const auto z = random_diagram(rng, rs, DiagramMode::binary);
    ASSERT_EQ(boxplus(x, y), boxplus(y, x));
    ASSERT_EQ(boxplus(boxplus(x, y), z), boxplus(x, boxplus(y, z)));
    ASSERT_EQ(boxplus(x, x), x);
    ASSERT_EQ(boxplus(x, MarkedDiagram::zero(rs, DiagramMode::binary)), x);

    auto su = support(x);
    for (int i : support(y)) su.push_back(i);
    std::sort(su.begin(), su.end());
    su.erase(std::unique(su.begin(), su.end()), su.end());
    ASSERT_EQ(support(boxplus(x, y)), su);
    auto sa = support(a);
    for (int i : support(b)) sa.push_back(i);
    std::sort(sa.begin(), sa.end());
    sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
    ASSERT_EQ(support(add(a, b)), sa);
  }
}
