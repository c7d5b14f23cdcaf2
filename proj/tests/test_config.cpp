#include <doctest.h>

#include "hermvp/config.hpp"
#include "hermvp/error.hpp"
#include "hermvp/trapezoidal.hpp"

using namespace hermvp;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Validation;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("parse values, comments and whitespace") {
    const auto c = Config::parse("# header\n  N = 12  # trailing\nnu=0.25\n\nflag = yes\nname = two words\n");
    CHECK(c.get_int("N") == 12);
    CHECK(c.get_double("nu") == 0.25);
    CHECK(c.get_bool("flag", false));
    CHECK(c.get_string("name") == "two words");
    CHECK(c.get_int("missing", 7) == 7);
    CHECK_FALSE(c.has("missing"));
  }

  TEST_CASE("parse errors") {
    CHECK(kind_of([] { Config::parse("no equals sign"); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([] { Config::parse("bad key! = 1"); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([] { Config::parse("N ="); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([] { Config::parse("N = 1\nN = 2"); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([] { Config::load("/nonexistent/path.cfg"); }) == ErrorKind::ConfigParse);
    const auto c = Config::parse("N = 1.5\nnu = abc\nb = maybe");
    CHECK(kind_of([&] { c.get_int("N"); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([&] { c.get_double("nu"); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([&] { c.get_bool("b", true); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([&] { c.get_string("absent"); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([&] { c.require_known({"N"}); }) == ErrorKind::ConfigParse);
  }

  TEST_CASE("overrides win") {
    auto c = Config::parse("N = 4\nnu = 1");
    c.apply_override("N=8");
    c.apply_override(" k = 2 ");
    CHECK(c.get_int("N") == 8);
    CHECK(c.get_int("k") == 2);
    CHECK(kind_of([&] { c.apply_override("junk"); }) == ErrorKind::ConfigParse);
    CHECK(c.to_text() == "N = 8\nk = 2\nnu = 1\n");
  }

  TEST_CASE("enumerations") {
    CHECK(dealias_from_string("none") == Dealias::None);
    CHECK(dealias_from_string("two_thirds") == Dealias::TwoThirds);
    CHECK(field_mode_from_string("explicit") == FieldMode::Explicit);
    CHECK(kind_of([] { dealias_from_string("half"); }) == ErrorKind::ConfigParse);
    CHECK(kind_of([] { field_mode_from_string("maybe"); }) == ErrorKind::ConfigParse);
  }

  TEST_CASE("solver configuration") {
    const auto vp = vp_config_from(Config::parse("N = 32\nnu = 0.1\ndt = auto\nk = 3\nfield_mode = explicit"));
    CHECK(vp.dt == doctest::Approx(time_step_heuristic(0.1, 32)));
    CHECK(vp.field_mode == FieldMode::Explicit);
    CHECK(vp.dealias == Dealias::TwoThirds);
    CHECK(kind_of([] { vp_config_from(Config::parse("N = 2\nk = 3")); }) == ErrorKind::Validation);
    CHECK(kind_of([] { vp_config_from(Config::parse("nu = -1")); }) == ErrorKind::Validation);
    CHECK(kind_of([] { vp_config_from(Config::parse("Mx = -1")); }) == ErrorKind::Validation);
    CHECK(kind_of([] { vp_config_from(Config::parse("picard_tol = 0")); }) == ErrorKind::Validation);
  }
}
