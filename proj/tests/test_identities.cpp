#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <set>

#include "hyperlab/errors.hpp"
#include "hyperlab/identities.hpp"
#include "hyperlab/report.hpp"

using namespace hyperlab;

namespace {
constexpr double kG = 0.915965594177219015054603514932;
constexpr double kPi = std::numbers::pi;

bool all_pass(const std::vector<VerificationResult>& v) {
  for (const auto& r : v)
    if (!r.pass) return false;
  return !v.empty();
}
}  // namespace

TEST_CASE("registry contract") {
  const auto& reg = registry();
  CHECK(reg.size() >= 24);
  std::set<std::string> ids;
  const auto routes = route_names();
  const std::set<std::string> known(routes.begin(), routes.end());
  for (const Identity& idn : reg) {
    CAPTURE(idn.id);
    CHECK(ids.insert(idn.id).second);
    CHECK_FALSE(idn.citation.empty());
    CHECK_FALSE(idn.description.empty());
    CHECK_FALSE(idn.points.empty());
    CHECK(idn.tol > 0.0);
    CHECK(known.count(idn.lhs.route) == 1);
    CHECK(known.count(idn.rhs.route) == 1);
    CHECK(find_identity(idn.id) == &idn);
  }
  for (const char* must : {"ramanujan_3f2", "e1_parametric", "eics_parametric", "e2_parametric",
                           "adamchik_4f3", "campbell_4f3", "pow1", "pow2", "pow3",
                           "berndt_transform", "whipple_quadratic", "a_derivative",
                           "eids1_derivative", "ls23_inner", "ls23b_inner"}) {
    CHECK(find_identity(must) != nullptr);
  }
  CHECK(find_identity("nope") == nullptr);
}

TEST_CASE("constants") {
  CHECK(basis_value(Basis::catalan) == kG);
  CHECK(constant_value({{4, Basis::catalan_over_pi}}) == doctest::Approx(4 * kG / kPi));
  CHECK(constant_value({}) == 0.0);
  CHECK_FALSE(to_string(Constant{{2, Basis::catalan}, {-0.5, Basis::pi_log2}}).empty());
}

TEST_CASE("ramanujan_3f2 verifies with a single record") {
  const auto v = verify("ramanujan_3f2");
  REQUIRE(v.size() == 1);
  CHECK(v[0].pass);
  CHECK(v[0].abs_residual <= 1e-10);
  CHECK_FALSE(v[0].param.has_value());
  CHECK(v[0].lhs_method == Method::closed_form);
  CHECK(v[0].rhs_method == Method::accelerated);
  CHECK(v[0].effort > 0);
}

TEST_CASE("every identity passes at its own tolerance") {
  for (const Identity& idn : registry()) {
    CAPTURE(idn.id);
    const auto v = verify(idn.id);
    CHECK(v.size() == idn.points.size());
    for (const auto& r : v) {
      CAPTURE(r.diagnostic);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("sides are computed by independent methods") {
  for (const Identity& idn : registry()) {
    for (const auto& r : verify(idn.id)) {
      CAPTURE(idn.id);
      REQUIRE(r.lhs_method.has_value());
      REQUIRE(r.rhs_method.has_value());
      CHECK(*r.lhs_method != *r.rhs_method);
    }
  }
}

TEST_CASE("equal method tags force a failure") {
  // Both sides by quadrature of the same integral: numerically equal, but
  // not evidence of anything.
  Identity same = *find_identity("a1_value");
  same.rhs = same.lhs;
  const auto v = verify(same);
  REQUIRE(v.size() == 1);
  CHECK(v[0].abs_residual == 0.0);
  CHECK_FALSE(v[0].pass);
  CHECK(v[0].diagnostic.find("quadrature") != std::string::npos);
}

TEST_CASE("parametric sweeps use the s-grid") {
  const auto grid = default_s_grid();
  REQUIRE(grid.size() == 9);
  CHECK(grid.front() == 0.1);
  CHECK(grid.back() == 0.9);
  for (const char* id : {"e1_parametric", "eics_parametric", "e2_parametric"}) {
    const auto v = verify(id);
    REQUIRE(v.size() == 9);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(*v[i].param == grid[i]);
      CHECK(v[i].abs_residual <= 1e-10);
    }
  }
}

TEST_CASE("make_grid") {
  const auto g = make_grid(0.1, 0.9, 0.1);
  REQUIRE(g.size() == 9);
  CHECK(g[2] == 0.3);
  CHECK(make_grid(0.5, 0.5, 0.1).size() == 1);
  CHECK_THROWS_AS(make_grid(0.5, 0.1, 0.1), DomainError);
  CHECK_THROWS_AS(make_grid(0.1, 0.5, 0.0), DomainError);
}

TEST_CASE("grid override") {
  VerifyOptions o;
  o.grid_override = std::vector<double>{0.25, 0.75};
  const auto v = verify("e1_parametric", o);
  REQUIRE(v.size() == 2);
  CHECK(*v[1].param == 0.75);
  CHECK(all_pass(v));
}

TEST_CASE("out-of-domain points fail with a diagnostic") {
  VerifyOptions o;
  o.grid_override = std::vector<double>{1.5};
  const auto v = verify("k_hypergeometric", o);
  REQUIRE(v.size() == 1);
  CHECK_FALSE(v[0].pass);
  CHECK(std::isnan(v[0].abs_residual));
  CHECK(v[0].diagnostic.rfind("lhs: ", 0) == 0);
}

TEST_CASE("tolerance override and scaling") {
  CHECK(all_pass(verify("a_derivative", std::optional<double>{1e-6})));
  CHECK_FALSE(all_pass(verify("a_derivative", std::optional<double>{1e-14})));
  // Scaling every tolerance by 1e-6 puts the derivative checks at 1e-12.
  // A', C' and D' carry stencil errors above that and fail; B' happens to
  // stay below it at every grid point.
  const Report rep = verify_all(1e-6);
  for (const auto& is : rep.summary.identities) {
    CAPTURE(is.id);
    if (is.id == "a_derivative" || is.id == "c_derivative" || is.id == "eids1_derivative") {
      CHECK_FALSE(is.pass);
    }
    if (is.id == "b_derivative") CHECK(is.worst_residual < 1e-12);
  }
  CHECK(rep.summary.failed >= 3);
}

TEST_CASE("unknown identity") {
  CHECK_THROWS_AS(verify("bogus_id"), UnknownIdentityError);
  CHECK_THROWS_AS(verify_ids({"ramanujan_3f2", "bogus_id"}), UnknownIdentityError);
}

TEST_CASE("verify_all is deterministic, serial or parallel") {
  const Report a = verify_all(1.0, {}, true);
  const Report b = verify_all(1.0, {}, false);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].id == b.records[i].id);
    CHECK(std::memcmp(&a.records[i].lhs, &b.records[i].lhs, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.records[i].rhs, &b.records[i].rhs, sizeof(double)) == 0);
    CHECK(a.records[i].effort == b.records[i].effort);
  }
  CHECK(a.summary.failed == 0);
  CHECK(a.summary.total == static_cast<int>(registry().size()));
  // registry order is preserved
  CHECK(a.records.front().id == registry().front().id);
  CHECK(a.records.back().id == registry().back().id);
}

TEST_CASE("Berndt transform at n = -1/2 is the 2G identity") {
  VerifyOptions o;
  o.grid_override = std::vector<double>{-0.5};
  const auto v = verify("berndt_transform", o);
  REQUIRE(v.size() == 1);
  CHECK(v[0].pass);
  CHECK(std::abs(v[0].lhs - 2 * kG) <= 1e-10);
  CHECK(std::abs(v[0].rhs - 2 * kG) <= 1e-10);
  const auto e = verify("entry_prodigiii");
  CHECK(std::abs(e[0].lhs - v[0].lhs) <= 1e-10);
}

TEST_CASE("Whipple identity beyond its grid") {
  VerifyOptions o;
  o.grid_override = std::vector<double>{-0.95, 0.0, 0.9, 1.0};
  const auto v = verify("whipple_quadratic", o);
  CHECK(all_pass(v));
  // at x = 1 both sides are 2G
  CHECK(std::abs(v.back().lhs - 2 * kG) <= 1e-10);
}
