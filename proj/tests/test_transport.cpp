#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mw/transportlib.hpp"

using namespace mw;

namespace {

RatMat mat(std::initializer_list<std::initializer_list<int>> rows) {
  RatMat m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (int v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

ActionSpec spec6() { return ActionSpec(6, 2, mat({{1, -1, 0, 0, 1, -1}, {0, 0, 1, -1, 1, -1}})); }
ActionSpec spec2() { return ActionSpec(2, 1, mat({{1, -1}})); }

std::vector<RatVec> path1(std::initializer_list<Rat> xs) {
  std::vector<RatVec> out;
  for (const Rat& x : xs) out.push_back(make_vec({x}));
  return out;
}

}  // namespace

TEST_CASE("monotone path validation") {
  WindowContext ctx(spec2(), make_vec({Rat(1, 2)}));
  SUBCASE("crossing the lower wall from the left is monotone") {
    TransportLog log = validate_monotone_path(ctx, path1({Rat(-1), Rat(1, 2)}));
    CHECK(log.valid);
    REQUIRE(log.crossings.size() == 1);
    CHECK(log.crossings[0].point(0) == Rat(0));
    CHECK(log.crossings[0].positive);
  }
  SUBCASE("running through both walls fails at the upper one") {
    TransportLog log = validate_monotone_path(ctx, path1({Rat(-1), Rat(2)}));
    CHECK(!log.valid);
    CHECK(log.error == "crossing pairs negatively with the covector");
  }
  SUBCASE("no crossings, empty log") {
    TransportLog log = validate_monotone_path(ctx, path1({Rat(1, 4), Rat(3, 4)}));
    CHECK(log.valid);
    CHECK(log.crossings.empty());
  }
  SUBCASE("endpoints must be regular") {
    TransportLog log = validate_monotone_path(ctx, path1({Rat(0), Rat(1, 2)}));
    CHECK(!log.valid);
    CHECK(log.error == "endpoint on jumping locus");
  }
  SUBCASE("segments inside a component are rejected") {
    WindowContext c6(spec6(), make_vec({Rat(1, 2), Rat(0)}));
    std::vector<RatVec> path{make_vec({Rat(0), Rat(1)}), make_vec({Rat(2), Rat(1)})};
    TransportLog log = validate_monotone_path(c6, path);
    CHECK(!log.valid);
  }
}

TEST_CASE("transport decomposition") {
  WindowContext ctx(spec2(), make_vec({Rat(1, 2)}));
  SUBCASE("moving left across the upper wall picks the positive face") {
    TransportLog log = transport_decomposition(ctx, path1({Rat(2), Rat(1, 2)}));
    REQUIRE(log.valid);
    REQUIRE(log.sod.size() == 1);
    CHECK(log.sod[0].i_sigma == 1);
    REQUIRE(log.sod[0].generators.size() == 1);
    CHECK(log.sod[0].generators[0] == IVec{1});
    REQUIRE(log.sod[0].lifts.size() == 1);
    CHECK(ctx.spec().mu(log.sod[0].lifts[0]) == IVec{1});
  }
  SUBCASE("moving right across the lower wall picks the negative face") {
    TransportLog log = transport_decomposition(ctx, path1({Rat(-1), Rat(1, 2)}));
    REQUIRE(log.valid);
    REQUIRE(log.sod.size() == 1);
    CHECK(log.sod[0].i_sigma == 2);
  }
  SUBCASE("vertical crossing for the hexagon spec") {
    WindowContext c6(spec6(), make_vec({Rat(1, 2), Rat(0)}));
    std::vector<RatVec> path{make_vec({Rat(0), Rat(-2)}), make_vec({Rat(0), Rat(0)})};
    TransportLog log = transport_decomposition(c6, path);
    REQUIRE(log.valid);
    REQUIRE(log.crossings.size() == 1);
    CHECK(log.crossings[0].point == make_vec({Rat(0), Rat(-1)}));
    REQUIRE(log.sod.size() == 1);
    CHECK(log.sod[0].i_sigma != 0);
  }
  SUBCASE("concatenation adds crossings, reversal flips the sign") {
    TransportLog two = transport_decomposition(ctx, path1({Rat(-1), Rat(1, 4), Rat(1, 2)}));
    REQUIRE(two.valid);
    CHECK(two.crossings.size() == 1);
    CHECK(two.sod.size() == two.crossings.size());
    TransportLog rev = validate_monotone_path(ctx, path1({Rat(1, 2), Rat(-1)}));
    CHECK(!rev.valid);
  }
}

TEST_CASE("universal transport") {
  ActionSpec s = spec2();
  SUBCASE("diagonal integer translation away from the slabs") {
    std::vector<RatVec> path{make_vec({Rat(1, 5), Rat(6, 5)}), make_vec({Rat(6, 5), Rat(11, 5)})};
    UniversalCertificate cert = universal_transport(s, path);
    CHECK(cert.ok);
    CHECK(cert.moves.size() >= 2);
  }
  SUBCASE("path through a slit is rejected with a hit point") {
    std::vector<RatVec> path{make_vec({Rat(1, 5), Rat(1, 5)}), make_vec({Rat(6, 5), Rat(6, 5)})};
    UniversalCertificate cert = universal_transport(s, path);
    CHECK(!cert.ok);
    CHECK(cert.first_hit);
  }
  SUBCASE("constant-l move in a generic region is certified") {
    std::vector<RatVec> path{make_vec({Rat(1, 10), Rat(5)}), make_vec({Rat(3, 10), Rat(5)})};
    UniversalCertificate cert = universal_transport(s, path);
    CHECK(cert.ok);
  }
}

TEST_CASE("monodromy") {
  ActionSpec s = spec2();
  SUBCASE("contractible loop") {
    std::vector<RatVec> loop{make_vec({Rat(1, 5), Rat(6, 5)}), make_vec({Rat(1, 5), Rat(12, 5)}),
                             make_vec({Rat(1, 5), Rat(6, 5)})};
    CHECK(monodromy_loop(s, loop) == IVec{0});
  }
  SUBCASE("slit-encircling loop has monodromy one") {
    std::vector<RatVec> loop{make_vec({Rat(1, 5), Rat(6, 5)}), make_vec({Rat(6, 5), Rat(6, 5)}),
                             make_vec({Rat(6, 5), Rat(11, 5)})};
    CHECK(monodromy_loop(s, loop) == IVec{1});
    std::vector<RatVec> rev{make_vec({Rat(6, 5), Rat(11, 5)}), make_vec({Rat(6, 5), Rat(6, 5)}),
                            make_vec({Rat(1, 5), Rat(6, 5)})};
    CHECK(monodromy_loop(s, rev) == IVec{-1});
  }
  SUBCASE("loops compose additively") {
    std::vector<RatVec> there_and_back{
        make_vec({Rat(1, 5), Rat(6, 5)}), make_vec({Rat(6, 5), Rat(6, 5)}),
        make_vec({Rat(6, 5), Rat(11, 5)}), make_vec({Rat(6, 5), Rat(6, 5)}),
        make_vec({Rat(1, 5), Rat(6, 5)})};
    CHECK(monodromy_loop(s, there_and_back) == IVec{0});
  }
  SUBCASE("open paths are rejected") {
    std::vector<RatVec> open_path{make_vec({Rat(1, 5), Rat(6, 5)}),
                                  make_vec({Rat(6, 5), Rat(12, 5)})};
    CHECK_THROWS(monodromy_loop(s, open_path));
  }
}
