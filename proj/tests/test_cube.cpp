#include <doctest.h>

#include "vdm/cube.hpp"
#include "vdm/rng.hpp"

using namespace vdm;

TEST_CASE("subset serialization") {
  CHECK(Subset(0, 3).to_string() == "");
  CHECK(Subset(0b101, 3).to_string() == "13");
  CHECK(Subset::from_string("13", 3) == Subset(0b101, 3));
  CHECK(Subset::from_string("", 3) == Subset(0, 3));
  CHECK(Subset(0b101, 12).to_string() == "1,3");
  CHECK(Subset::from_string("1,3", 12) == Subset(0b101, 12));
  CHECK(Subset::from_string("1,12", 12).bits == (1u | (1u << 11)));
  CHECK_THROWS(Subset::from_string("14", 3));
  CHECK_THROWS(Subset::from_string("11", 3));
  CHECK_THROWS(Subset(8, 3));
}

TEST_CASE("subset complement and symmetric difference") {
  Subset s(0b011, 3);
  CHECK(s.complement() == Subset(0b100, 3));
  CHECK(s.complement().bits == (~s.bits & Subset::mask_all(3)));
  CHECK(s.sym_diff(Subset(0b110, 3)) == Subset(0b101, 3));
  CHECK(s.size() == 2);
  CHECK(s.contains(1));
  CHECK(!s.contains(3));
}

TEST_CASE("face enumeration counts") {
  CHECK(enumerate_faces(4, 4).size() == 1);
  CHECK(enumerate_faces(4, 3).size() == 8);
  CHECK(enumerate_faces(5, 4).size() == 10);
  CHECK(enumerate_faces(3, 1).size() == 12);  // edges of the 3-cube
  CHECK_THROWS(enumerate_faces(0, 0));
  CHECK_THROWS(enumerate_faces(4, 5));

  // Each face exactly once, and embed/project are inverse on face vertices.
  auto faces = enumerate_faces(4, 2);
  CHECK(faces.size() == 6 * 4);
  for (size_t i = 0; i < faces.size(); ++i)
    for (size_t j = i + 1; j < faces.size(); ++j) CHECK(!(faces[i] == faces[j]));
  for (const CubeFace& f : faces)
    for (std::uint32_t v = 0; v < 4; ++v) {
      CHECK(f.contains_vertex(f.embed(v)));
      CHECK(f.project(f.embed(v)) == v);
    }
}

TEST_CASE("signed symmetry group laws") {
  Rng rng(42);
  auto group = signed_symmetries(3);
  CHECK(group.size() == 48);
  for (int trial = 0; trial < 200; ++trial) {
    const SignedSymmetry& g = group[rng.below(group.size())];
    const SignedSymmetry& h = group[rng.below(group.size())];
    const std::uint32_t s = static_cast<std::uint32_t>(rng.below(8));
    CHECK(g.compose(h).apply_bits(s) == g.apply_bits(h.apply_bits(s)));
    CHECK(g.apply_bits(g.inverse().apply_bits(s)) == s);
    CHECK(g.inverse().apply_bits(g.apply_bits(s)) == s);
    // Point action matches the subset action on 0-1 points.
    RatVec x = indicator_vector(s, 3);
    CHECK(g.apply_point(x) == indicator_vector(g.apply_bits(s), 3));
  }
}

TEST_CASE("center circuits for small n") {
  auto c1 = center_circuits(1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].support == std::vector<std::uint32_t>{0, 1});

  auto c2 = center_circuits(2);
  REQUIRE(c2.size() == 2);
  CHECK(c2[0].support == std::vector<std::uint32_t>{0b00, 0b11});
  CHECK(c2[1].support == std::vector<std::uint32_t>{0b01, 0b10});
  for (const auto& c : c2) {
    CHECK(c.weights == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    CHECK_NOTHROW(c.validate());
  }

  CHECK(center_circuits(3).size() == 6);
}

TEST_CASE("n=4 circuits decompose into the three B_4 orbits") {
  auto circuits = center_circuits(4);
  CHECK(circuits.size() == 48);
  for (const auto& c : circuits) CHECK_NOTHROW(c.validate());

  auto make = [](std::vector<std::uint32_t> sup, std::vector<Rat> w) {
    ConvexCircuit c;
    c.n = 4;
    c.support = std::move(sup);
    c.weights = std::move(w);
    c.barycenter = RatVec(4, Rat(1, 2));
    c.canonicalize();
    return c;
  };
  ConvexCircuit antipodal = make({0b0000, 0b1111}, {Rat(1, 2), Rat(1, 2)});
  ConvexCircuit quad =
      make({0b0000, 0b1001, 0b0111, 0b1110}, {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)});
  ConvexCircuit pointed = make({0b0000, 0b0111, 0b1011, 0b1101, 0b1110},
                               {Rat(1, 3), Rat(1, 6), Rat(1, 6), Rat(1, 6), Rat(1, 6)});

  auto o1 = orbit(4, antipodal), o2 = orbit(4, quad), o3 = orbit(4, pointed);
  CHECK(o1.size() == 8);
  CHECK(o2.size() == 24);
  CHECK(o3.size() == 16);

  std::set<ConvexCircuit> uni;
  uni.insert(o1.begin(), o1.end());
  uni.insert(o2.begin(), o2.end());
  uni.insert(o3.begin(), o3.end());
  CHECK(uni.size() == 48);  // the orbits are disjoint
  CHECK(uni == std::set<ConvexCircuit>(circuits.begin(), circuits.end()));
}

TEST_CASE("orbit of a fully symmetric segment is a single circuit") {
  ConvexCircuit c;
  c.n = 1;
  c.support = {0, 1};
  c.weights = {Rat(1, 2), Rat(1, 2)};
  c.barycenter = {Rat(1, 2)};
  CHECK(orbit(1, c).size() == 1);
}

TEST_CASE("circuit validation rejects bad data") {
  ConvexCircuit c;
  c.n = 2;
  c.support = {0b00, 0b11};
  c.weights = {Rat(1, 2), Rat(1, 2)};
  c.barycenter = {Rat(1, 2), Rat(1, 2)};
  CHECK_NOTHROW(c.validate());
  c.weights = {Rat(1, 3), Rat(2, 3)};
  CHECK_THROWS(c.validate());  // barycenter mismatch
  c.weights = {Rat(1, 2), Rat(1, 2)};
  c.support = {0b00, 0b00};
  CHECK_THROWS(c.validate());  // not affinely independent
}

TEST_CASE("center_circuits preconditions") { CHECK_THROWS(center_circuits(6)); }
