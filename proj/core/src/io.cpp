#include "qfex/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qfex {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw argument_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

QuantumChannel channel_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw argument_error(std::string("channel JSON parse error: ") + e.what());
  }
  try {
    const auto d = j.at("d").get<std::uint32_t>();
    const auto m = j.value("m", 1u);
    std::vector<DenseOperator> kraus;
    for (const auto& mat : j.at("kraus")) {
      const std::size_t rows = mat.size();
      DenseOperator A(rows, rows);
      for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = mat.at(r);
        if (row.size() != rows)
          throw argument_error("Kraus matrix is not square");
        for (std::size_t c = 0; c < rows; ++c) {
          const auto& entry = row.at(c);
          if (!entry.is_array() || entry.size() != 2)
            throw argument_error("matrix entries must be [re, im] pairs");
          A(r, c) = Complex(entry.at(0).get<double>(),
                            entry.at(1).get<double>());
        }
      }
      kraus.push_back(std::move(A));
    }
    return QuantumChannel(d, m, std::move(kraus));
  } catch (const nlohmann::json::exception& e) {
    throw argument_error(std::string("channel JSON structure error: ") +
                         e.what());
  }
}

QuantumChannel channel_from_json_file(const std::string& path) {
  return channel_from_json(read_file(path));
}

std::string channel_to_json(const QuantumChannel& ch) {
  nlohmann::json j;
  j["d"] = ch.d;
  j["m"] = ch.m;
  auto& list = j["kraus"];
  list = nlohmann::json::array();
  for (const auto& A : ch.kraus) {
    nlohmann::json mat = nlohmann::json::array();
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < A.cols(); ++c)
        row.push_back({A(r, c).real(), A(r, c).imag()});
      mat.push_back(std::move(row));
    }
    list.push_back(std::move(mat));
  }
  return j.dump(2);
}

StabilizerSpec stabilizer_from_text(const std::string& text) {
  StabilizerSpec spec;
  std::istringstream in(text);
  std::string line;
  bool in_leaders = false;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    // Trim whitespace.
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    if (line == "leaders:") {
      in_leaders = true;
      continue;
    }
    (in_leaders ? spec.leaders : spec.generators).push_back(line);
  }
  if (spec.generators.empty())
    throw argument_error("stabilizer description has no generators");
  const std::size_t len = spec.generators.front().size();
  if (len == 0 || len % 2 != 0)
    throw argument_error("generator length must be even and positive");
  for (const auto& g : spec.generators)
    if (g.size() != len)
      throw argument_error("generators must share one length");
  for (const auto& l : spec.leaders)
    if (l.size() != len)
      throw argument_error("leaders must match the generator length");
  return spec;
}

StabilizerSpec stabilizer_from_file(const std::string& path) {
  return stabilizer_from_text(read_file(path));
}

SymplecticSubspace resolve_stabilizer(const StabilizerSpec& spec,
                                      std::uint32_t d) {
  std::vector<SymplecticVector> gens;
  gens.reserve(spec.generators.size());
  for (const auto& g : spec.generators)
    gens.push_back(SymplecticVector::from_string(g, d));
  const std::uint32_t n = gens.front().n();
  return SymplecticSubspace::span(gens, n, d);
}

LeaderOptions resolve_leaders(const StabilizerSpec& spec, std::uint32_t d) {
  LeaderOptions options;
  for (const auto& l : spec.leaders)
    options.preferred.push_back(SymplecticVector::from_string(l, d));
  return options;
}

bool ChannelSpec::parametric_in(const std::string& var) const {
  if (var == "p") return kind == Kind::kDepolarizing;
  if (var == "gamma") return kind == Kind::kAmplitudeDamping;
  return false;
}

QuantumChannel ChannelSpec::build() const {
  switch (kind) {
    case Kind::kFile:
      return channel_from_json_file(path);
    case Kind::kIdentity:
      return QuantumChannel::identity(d);
    case Kind::kDepolarizing:
      return QuantumChannel::depolarizing(param, d);
    case Kind::kAmplitudeDamping:
      return QuantumChannel::amplitude_damping(param);
    case Kind::kDephasing:
      return QuantumChannel::dephasing(param);
    case Kind::kPauli: {
      const auto dd = static_cast<std::uint32_t>(std::lround(
          std::sqrt(static_cast<double>(probs.size()))));
      return QuantumChannel::pauli(ErrorDistribution(dd, probs));
    }
  }
  throw argument_error("unreachable channel kind");
}

QuantumChannel ChannelSpec::build_with(double value) const {
  ChannelSpec copy = *this;
  copy.param = value;
  return copy.build();
}

ChannelSpec parse_channel_spec(const std::string& spec) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const auto pos = s.find(sep, start);
      parts.push_back(s.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return parts;
  };
  auto to_double = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw argument_error("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw argument_error("invalid number in channel spec: " + s);
    }
  };

  const auto parts = split(spec, ':');
  std::string name = parts[0];
  for (auto& c : name)
    if (c == '_') c = '-';

  ChannelSpec out;
  if (name == "identity") {
    out.kind = ChannelSpec::Kind::kIdentity;
    out.d = parts.size() > 1 ? static_cast<std::uint32_t>(to_double(parts[1]))
                             : 2;
    return out;
  }
  if (name == "depolarizing") {
    if (parts.size() < 2)
      throw argument_error("depolarizing spec needs a probability");
    out.kind = ChannelSpec::Kind::kDepolarizing;
    out.param = to_double(parts[1]);
    out.d = parts.size() > 2 ? static_cast<std::uint32_t>(to_double(parts[2]))
                             : 2;
    return out;
  }
  if (name == "amplitude-damping") {
    if (parts.size() < 2)
      throw argument_error("amplitude-damping spec needs gamma");
    out.kind = ChannelSpec::Kind::kAmplitudeDamping;
    out.param = to_double(parts[1]);
    return out;
  }
  if (name == "dephasing") {
    if (parts.size() < 2) throw argument_error("dephasing spec needs q");
    out.kind = ChannelSpec::Kind::kDephasing;
    out.param = to_double(parts[1]);
    return out;
  }
  if (name == "pauli") {
    if (parts.size() < 2)
      throw argument_error("pauli spec needs a probability list");
    out.kind = ChannelSpec::Kind::kPauli;
    for (const auto& tok : split(parts[1], ',')) out.probs.push_back(to_double(tok));
    const auto dd = static_cast<std::uint32_t>(
        std::lround(std::sqrt(static_cast<double>(out.probs.size()))));
    if (static_cast<std::size_t>(dd) * dd != out.probs.size())
      throw argument_error("pauli spec needs d^2 probabilities");
    return out;
  }
  out.kind = ChannelSpec::Kind::kFile;
  out.path = spec;
  return out;
}

}  // namespace qfex
