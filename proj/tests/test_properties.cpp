#include <doctest.h>

#include "properties.hpp"

namespace {

void require_clean(const props::Outcome& o) {
  INFO(o.name << ": " << o.failures << "/" << o.cases << " failed; " << o.first_failure);
  CHECK(o.cases > 0);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("ring and derivation laws") { require_clean(props::ring_laws(250, 1)); }
TEST_CASE("precision soundness") { require_clean(props::precision_soundness(200, 2)); }
TEST_CASE("json round trip") { require_clean(props::json_round_trip(200, 3)); }
TEST_CASE("kronecker multiplicativity") { require_clean(props::kronecker_multiplicativity(500, 4)); }
TEST_CASE("hecke linearity and commutation") { require_clean(props::hecke_linearity_commutation(40, 5)); }
TEST_CASE("closed form against build_F_m") { require_clean(props::closed_form_equivalence(54, 6)); }
TEST_CASE("config round trip") { require_clean(props::config_round_trip(200, 7)); }
