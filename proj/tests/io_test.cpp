#include <doctest.h>

#include <cmath>

#include "qfex/io.hpp"

using namespace qfex;

TEST_CASE("channel json round trip") {
  const auto ch = QuantumChannel::amplitude_damping(0.35);
  const auto back = channel_from_json(channel_to_json(ch));
  CHECK(back.d == 2);
  CHECK(back.m == 1);
  REQUIRE(back.kraus.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK((back.kraus[i] - ch.kraus[i]).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("channel json accepts the documented shape") {
  const std::string text = R"({
    "d": 2, "m": 1,
    "kraus": [
      [[[1, 0], [0, 0]], [[0, 0], [0.8, 0]]],
      [[[0, 0], [0.6, 0]], [[0, 0], [0, 0]]]
    ]
  })";
  const auto ch = channel_from_json(text);
  CHECK(ch.kraus.size() == 2);
  CHECK(std::abs(ch.kraus[0](1, 1).real() - 0.8) < 1e-15);
}

TEST_CASE("channel json diagnostics") {
  CHECK_THROWS_AS(channel_from_json("{not json"), argument_error);
  CHECK_THROWS_AS(channel_from_json(R"({"d": 2, "kraus": []})"),
                  argument_error);
  // Non trace preserving input carries the max-norm deviation diagnostic.
  const std::string bad = R"({
    "d": 2, "m": 1,
    "kraus": [[[[1, 0], [0, 0]], [[0, 0], [0.5, 0]]]]
  })";
  try {
    channel_from_json(bad);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("trace preserving") != std::string::npos);
  }
  CHECK_THROWS_AS(channel_from_json_file("/nonexistent/channel.json"),
                  argument_error);
}

TEST_CASE("stabilizer text format") {
  const std::string text =
      "# two-qubit phase stabilizer\n"
      "0101\n"
      "\n"
      "leaders:\n"
      "0000\n"
      "1000  # preferred choice\n";
  const auto spec = stabilizer_from_text(text);
  REQUIRE(spec.generators.size() == 1);
  CHECK(spec.generators[0] == "0101");
  REQUIRE(spec.leaders.size() == 2);
  CHECK(spec.leaders[1] == "1000");

  const auto L = resolve_stabilizer(spec, 2);
  CHECK(L.dim() == 1);
  CHECK(L.ambient_n() == 2);
  const auto options = resolve_leaders(spec, 2);
  CHECK(options.preferred.size() == 2);

  CHECK_THROWS_AS(stabilizer_from_text(""), argument_error);
  CHECK_THROWS_AS(stabilizer_from_text("010"), argument_error);
  CHECK_THROWS_AS(stabilizer_from_text("0101\n01"), argument_error);
}

TEST_CASE("channel spec grammar") {
  const auto ident = parse_channel_spec("identity");
  CHECK(ident.kind == ChannelSpec::Kind::kIdentity);
  CHECK(ident.build().kraus.size() == 1);

  const auto dep = parse_channel_spec("depolarizing:0.1");
  CHECK(dep.kind == ChannelSpec::Kind::kDepolarizing);
  CHECK(dep.parametric_in("p"));
  CHECK_FALSE(dep.parametric_in("gamma"));
  CHECK(std::abs(error_distribution(dep.build_with(0.3))[0] - 0.7) < 1e-12);

  for (const char* alias : {"amplitude-damping:0.2", "amplitude_damping:0.2"}) {
    const auto ad = parse_channel_spec(alias);
    CHECK(ad.kind == ChannelSpec::Kind::kAmplitudeDamping);
    CHECK(ad.parametric_in("gamma"));
  }

  const auto deph = parse_channel_spec("dephasing:0.25");
  const auto p = error_distribution(deph.build());
  CHECK(std::abs(p(0, 1) - 0.25) < 1e-12);

  const auto pl = parse_channel_spec("pauli:0.7,0.1,0.1,0.1");
  CHECK(pl.kind == ChannelSpec::Kind::kPauli);
  CHECK(pl.build().d == 2);
  CHECK_THROWS_AS(parse_channel_spec("pauli:0.5,0.5,0.0"), argument_error);
  CHECK_THROWS_AS(parse_channel_spec("depolarizing"), argument_error);
  CHECK_THROWS_AS(parse_channel_spec("depolarizing:abc"), argument_error);

  const auto file = parse_channel_spec("some/path.json");
  CHECK(file.kind == ChannelSpec::Kind::kFile);
  CHECK_THROWS_AS(file.build(), argument_error);
}
