#include "mechlab/instance_forge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace mechlab {
namespace {

using nlohmann::ordered_json;

double parse_field(std::string_view text, std::string_view what) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(std::string(text), &consumed);
    if (consumed != text.size()) throw std::invalid_argument("trailing");
    return value;
  } catch (const std::exception&) {
    fail(ErrorCode::kUsageError,
         "cannot parse " + std::string(what) + " from '" + std::string(text) +
             "'");
  }
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Uniform double in [0, 1) from the top 53 bits of a raw draw.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int range_draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

FamilySpec FamilySpec::sum_k2(int x, int y, int s) {
  FamilySpec spec;
  spec.kind = FamilyKind::kSumK2Family;
  spec.x = x;
  spec.y = y;
  spec.s = s;
  return spec;
}

FamilySpec FamilySpec::nine_halves(double eps) {
  FamilySpec spec;
  spec.kind = FamilyKind::kMaxK2NineHalves;
  spec.eps = eps;
  return spec;
}

FamilySpec FamilySpec::sum_lower_k(int k) {
  FamilySpec spec;
  spec.kind = FamilyKind::kSumLowerK;
  spec.k = k;
  return spec;
}

FamilySpec FamilySpec::max_lower_k(int k) {
  FamilySpec spec;
  spec.kind = FamilyKind::kMaxLowerK;
  spec.k = k;
  return spec;
}

FamilySpec FamilySpec::g_alpha(double alpha, int s) {
  FamilySpec spec;
  spec.kind = FamilyKind::kGAlpha;
  spec.alpha = alpha;
  spec.s = s;
  return spec;
}

FamilySpec parse_family_spec(std::string_view text) {
  std::string_view name = text;
  std::string_view params;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    name = text.substr(0, colon);
    params = text.substr(colon + 1);
  }

  FamilySpec spec;
  if (name == "sum-k2") {
    spec.kind = FamilyKind::kSumK2Family;
  } else if (name == "nine-halves") {
    spec.kind = FamilyKind::kMaxK2NineHalves;
  } else if (name == "sum-lower-k") {
    spec.kind = FamilyKind::kSumLowerK;
  } else if (name == "max-lower-k") {
    spec.kind = FamilyKind::kMaxLowerK;
  } else if (name == "g-alpha") {
    spec.kind = FamilyKind::kGAlpha;
  } else {
    fail(ErrorCode::kUsageError, "unknown family '" + std::string(name) + "'");
  }

  while (!params.empty()) {
    const auto comma = params.find(',');
    const auto item = params.substr(0, comma);
    params = comma == std::string_view::npos ? std::string_view{}
                                             : params.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kUsageError,
           "expected key=value in family parameters, got '" +
               std::string(item) + "'");
    }
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "x") {
      spec.x = static_cast<int>(parse_field(value, "x"));
    } else if (key == "y") {
      spec.y = static_cast<int>(parse_field(value, "y"));
    } else if (key == "s") {
      spec.s = static_cast<int>(parse_field(value, "s"));
    } else if (key == "eps") {
      spec.eps = parse_field(value, "eps");
    } else if (key == "k") {
      spec.k = static_cast<int>(parse_field(value, "k"));
    } else if (key == "alpha") {
      spec.alpha = parse_field(value, "alpha");
    } else {
      fail(ErrorCode::kUsageError,
           "unknown family parameter '" + std::string(key) + "'");
    }
  }
  return spec;
}

std::string to_string(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kSumK2Family:
      return "sum-k2:x=" + std::to_string(spec.x) +
             ",y=" + std::to_string(spec.y) + ",s=" + std::to_string(spec.s);
    case FamilyKind::kMaxK2NineHalves: {
      std::ostringstream out;
      out << "nine-halves:eps=" << spec.eps;
      return out.str();
    }
    case FamilyKind::kSumLowerK:
      return "sum-lower-k:k=" + std::to_string(spec.k);
    case FamilyKind::kMaxLowerK:
      return "max-lower-k:k=" + std::to_string(spec.k);
    case FamilyKind::kGAlpha: {
      std::ostringstream out;
      out << "g-alpha:alpha=" << spec.alpha << ",s=" << spec.s;
      return out.str();
    }
  }
  fail(ErrorCode::kInternal, "unhandled family kind");
}

Instance gen_family(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kSumK2Family: {
      if (spec.x < 1 || spec.y < 1 || spec.s < 2 || spec.s % 2 != 0) {
        fail(ErrorCode::kInvalidFamilyParams,
             "sum-k2 family needs x, y >= 1 and an even group size s >= 2");
      }
      std::vector<std::vector<double>> groups;
      groups.reserve(static_cast<std::size_t>(spec.x + spec.y));
      for (int i = 0; i < spec.x; ++i) {
        groups.emplace_back(static_cast<std::size_t>(spec.s), 0.0);
      }
      for (int i = 0; i < spec.y; ++i) {
        std::vector<double> half(static_cast<std::size_t>(spec.s), 1.0);
        std::fill_n(half.begin(), spec.s / 2, 0.0);
        groups.push_back(std::move(half));
      }
      return validate_instance(std::move(groups), 2);
    }
    case FamilyKind::kMaxK2NineHalves: {
      if (!(spec.eps > 0.0 && spec.eps < 0.5)) {
        fail(ErrorCode::kInvalidFamilyParams,
             "nine-halves needs eps in (0, 1/2)");
      }
      const double split = 0.5 + spec.eps;
      return validate_instance(
          {{split, 1.0, 1.0}, {split, 1.0, 1.0}, {1.0, 1.0, 1.0}}, 2);
    }
    case FamilyKind::kSumLowerK:
    case FamilyKind::kMaxLowerK: {
      if (spec.k < 2) {
        fail(ErrorCode::kInvalidFamilyParams,
             "lower-bound families need k >= 2");
      }
      std::vector<std::vector<double>> groups;
      groups.reserve(static_cast<std::size_t>(spec.k));
      groups.push_back({0.0, 1.0});
      for (int i = 1; i < spec.k; ++i) groups.push_back({1.0, 1.0});
      return validate_instance(std::move(groups), spec.k);
    }
    case FamilyKind::kGAlpha: {
      if (spec.s < 1 || spec.alpha < 0.0 || spec.alpha > 1.0) {
        fail(ErrorCode::kInvalidFamilyParams,
             "g-alpha needs s >= 1 and alpha in [0, 1]");
      }
      const double product = spec.alpha * spec.s;
      const double rounded = std::round(product);
      if (std::abs(product - rounded) > 1e-9) {
        fail(ErrorCode::kInvalidFamilyParams,
             "alpha * s must be an integer; refusing to round");
      }
      const int at_zero = static_cast<int>(rounded);
      std::vector<double> group(static_cast<std::size_t>(spec.s), 1.0);
      std::fill_n(group.begin(), at_zero, 0.0);
      return validate_instance({group, group}, 2);
    }
  }
  fail(ErrorCode::kInternal, "unhandled family kind");
}

FamilyTargets family_targets(const FamilySpec& spec) {
  FamilyTargets targets;
  switch (spec.kind) {
    case FamilyKind::kSumK2Family: {
      const double m = spec.x + spec.y;
      targets.has_values = true;
      targets.adversarial_cost = (2.0 * spec.x + spec.y) / m;
      targets.optimal_cost = spec.y / m;
      targets.target_ratio = 1.0 + 2.0 * spec.x / spec.y;
      break;
    }
    case FamilyKind::kMaxK2NineHalves:
      targets.has_values = true;
      targets.adversarial_cost = 0.5 - spec.eps;
      targets.optimal_cost = 2.0 * (0.5 - spec.eps) / 9.0;
      targets.target_ratio = 4.5;
      break;
    case FamilyKind::kSumLowerK:
      targets.has_values = true;
      targets.adversarial_cost = (3.0 * spec.k - 2.0) / (2.0 * spec.k);
      targets.optimal_cost = 0.5;
      targets.target_ratio = (3.0 * spec.k - 2.0) / spec.k;
      break;
    case FamilyKind::kMaxLowerK:
      targets.has_values = true;
      targets.adversarial_cost = 1.0;
      targets.optimal_cost = 1.0 / (2.0 * spec.k);
      targets.target_ratio = 2.0 * spec.k;
      break;
    case FamilyKind::kGAlpha:
      break;  // building block; no single trap ratio
  }
  return targets;
}

PositionDistribution parse_distribution(std::string_view text) {
  if (text == "uniform") return PositionDistribution::kUniform;
  if (text == "two-cluster") return PositionDistribution::kTwoCluster;
  fail(ErrorCode::kUsageError,
       "unknown distribution '" + std::string(text) +
           "' (expected uniform|two-cluster)");
}

Instance gen_random(const RandomConfig& config) {
  std::mt19937_64 rng(config.seed);
  const int k = std::max(config.k, 2);
  const int group_lo = std::max(config.min_groups, k);
  const int group_hi = std::max(config.max_groups, group_lo);
  const int size_lo = std::max(config.min_group_size, 1);
  const int size_hi = std::max(config.max_group_size, size_lo);

  const int m = range_draw(rng, group_lo, group_hi);
  std::vector<std::vector<double>> groups;
  groups.reserve(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) {
    const int size = range_draw(rng, size_lo, size_hi);
    std::vector<double> group;
    group.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
      if (config.distribution == PositionDistribution::kUniform) {
        group.push_back(unit_draw(rng));
      } else {
        const bool high = (rng() & 1u) != 0;
        const double offset = unit_draw(rng) * 0.1;
        group.push_back(high ? 0.9 + offset : offset);
      }
    }
    groups.push_back(std::move(group));
  }
  return validate_instance(std::move(groups), k);
}

std::string instance_to_json(const Instance& instance) {
  ordered_json json;
  json["k"] = instance.k();
  json["groups"] = instance.groups();
  return json.dump();
}

Instance instance_from_json(std::string_view text) {
  ordered_json parsed;
  try {
    parsed = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    const auto [line, column] = line_column(text, error.byte);
    fail(ErrorCode::kParseError,
         "invalid JSON at line " + std::to_string(line) + ", column " +
             std::to_string(column));
  }
  if (!parsed.is_object() || !parsed.contains("k") ||
      !parsed.contains("groups")) {
    fail(ErrorCode::kParseError,
         "expected an object with \"k\" and \"groups\"");
  }
  if (!parsed["k"].is_number_integer()) {
    fail(ErrorCode::kParseError, "\"k\" must be an integer");
  }
  if (!parsed["groups"].is_array()) {
    fail(ErrorCode::kParseError, "\"groups\" must be an array of arrays");
  }
  std::vector<std::vector<double>> groups;
  groups.reserve(parsed["groups"].size());
  for (const auto& group : parsed["groups"]) {
    if (!group.is_array()) {
      fail(ErrorCode::kParseError, "\"groups\" must be an array of arrays");
    }
    std::vector<double> positions;
    positions.reserve(group.size());
    for (const auto& position : group) {
      if (!position.is_number()) {
        fail(ErrorCode::kParseError, "positions must be finite JSON numbers");
      }
      positions.push_back(position.get<double>());
    }
    groups.push_back(std::move(positions));
  }
  return validate_instance(std::move(groups), parsed["k"].get<int>());
}

void save_instance(const Instance& instance, std::ostream& sink) {
  sink << instance_to_json(instance) << '\n';
}

Instance load_instance(std::istream& source) {
  std::ostringstream buffer;
  buffer << source.rdbuf();
  return instance_from_json(buffer.str());
}

void save_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kParseError, "cannot open '" + path + "' to write");
  save_instance(instance, out);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kParseError, "cannot open '" + path + "' to read");
  return load_instance(in);
}

std::string instance_digest(const Instance& instance) {
  const std::string text = instance_to_json(instance);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char byte : text) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string digest(16, '0');
  for (int i = 15; i >= 0; --i) {
    digest[static_cast<std::size_t>(i)] = hex[hash & 0xF];
    hash >>= 4;
  }
  return digest;
}

}  // namespace mechlab
