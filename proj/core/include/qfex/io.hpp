#pragma once

// File-format surfaces: the JSON channel description, the plain-text
// stabilizer description, and the --channel argument grammar used by the
// command-line tool (path or parametric builtin).

#include <cstdint>
#include <string>
#include <vector>

#include "qfex/channel.hpp"
#include "qfex/gfsym.hpp"

namespace qfex {

/// Parse {"d": int, "m": int, "kraus": [matrix, ...]} where each matrix is a
/// row-major list of rows of [re, im] pairs. Non-trace-preserving sets are
/// rejected with a diagnostic carrying max|sum A^dag A - I|.
QuantumChannel channel_from_json(const std::string& text);
QuantumChannel channel_from_json_file(const std::string& path);
std::string channel_to_json(const QuantumChannel& ch);

/// Plain-text stabilizer description: one generator per line as a length-2n
/// digit string over {0..d-1}, interleaved (u1, v1, ..., un, vn); an optional
/// line "leaders:" introduces preferred coset leaders, one per line. Blank
/// lines and '#' comments are ignored.
struct StabilizerSpec {
  std::vector<std::string> generators;
  std::vector<std::string> leaders;
};

StabilizerSpec stabilizer_from_text(const std::string& text);
StabilizerSpec stabilizer_from_file(const std::string& path);

SymplecticSubspace resolve_stabilizer(const StabilizerSpec& spec,
                                      std::uint32_t d);
LeaderOptions resolve_leaders(const StabilizerSpec& spec, std::uint32_t d);

/// A --channel argument: either a JSON file path or a builtin
///   identity[:d]
///   depolarizing:p[:d]
///   amplitude-damping:gamma   (underscore alias accepted)
///   dephasing:q
///   pauli:p0,p1,...             (d^2 probabilities in symbol order i*d+j)
struct ChannelSpec {
  enum class Kind {
    kFile,
    kIdentity,
    kDepolarizing,
    kAmplitudeDamping,
    kDephasing,
    kPauli,
  };
  Kind kind = Kind::kFile;
  std::string path;
  double param = 0.0;
  std::uint32_t d = 2;
  std::vector<double> probs;

  /// Whether the spec can be re-instantiated along a sweep variable
  /// ("p" for depolarizing, "gamma" for amplitude damping).
  bool parametric_in(const std::string& var) const;
  QuantumChannel build() const;
  QuantumChannel build_with(double value) const;
};

ChannelSpec parse_channel_spec(const std::string& spec);

}  // namespace qfex
