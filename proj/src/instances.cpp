#include "rsum/instances.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rsum/rng.hpp"

namespace rsum {

namespace {

void check_gen_args(std::size_t n, Value bound) {
  if (n < 1) throw std::domain_error("instance generator: n must be >= 1");
  if (bound < 1) throw std::domain_error("instance generator: bound must be >= 1");
}

// First `count` entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
std::vector<Ordinal> sample_positions(std::size_t n, std::size_t count, SplitMix64& rng) {
  std::vector<Ordinal> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Ordinal>(i);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t pick = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(all[i], all[pick]);
  }
  all.resize(count);
  return all;
}

}  // namespace

Instance gen_uniform(std::size_t n, Value bound, std::uint64_t seed) {
  check_gen_args(n, bound);
  SplitMix64 rng(seed);
  Instance instance;
  instance.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) instance.values.push_back(rng.range(-bound, bound));
  instance.bound = bound;
  instance.seed = seed;
  instance.family = "uniform";
  return instance;
}

std::pair<Instance, std::vector<Ordinal>> gen_planted(std::size_t n, Value bound, int arity,
                                                      std::uint64_t seed) {
  check_gen_args(n, bound);
  if (arity < 2 || n < static_cast<std::size_t>(arity)) {
    throw std::domain_error("gen_planted: need n >= arity >= 2");
  }
  SplitMix64 rng(seed);

  std::vector<Value> tuple(static_cast<std::size_t>(arity));
  constexpr int kMaxRetries = 10000;
  bool planted_ok = false;
  for (int attempt = 0; attempt < kMaxRetries && !planted_ok; ++attempt) {
    Value partial = 0;
    for (int i = 0; i + 1 < arity; ++i) {
      tuple[static_cast<std::size_t>(i)] = rng.range(-bound, bound);
      partial += tuple[static_cast<std::size_t>(i)];
    }
    if (std::abs(partial) <= bound) {
      tuple[static_cast<std::size_t>(arity - 1)] = -partial;
      planted_ok = true;
    }
  }
  if (!planted_ok) {
    throw std::runtime_error("gen_planted: bound too small to complete a zero-sum tuple");
  }

  Instance instance;
  instance.values.resize(n);
  std::vector<Ordinal> positions = sample_positions(n, static_cast<std::size_t>(arity), rng);
  std::vector<bool> taken(n, false);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    instance.values[positions[i]] = tuple[i];
    taken[positions[i]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i]) instance.values[i] = rng.range(-bound, bound);
  }
  std::sort(positions.begin(), positions.end());
  instance.bound = bound;
  instance.seed = seed;
  instance.family = "planted";
  instance.planted = positions;
  return {std::move(instance), std::move(positions)};
}

Instance gen_no_solution(std::size_t n, Value bound, std::uint64_t seed) {
  check_gen_args(n, bound);
  SplitMix64 rng(seed);
  Instance instance;
  instance.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) instance.values.push_back(rng.range(1, bound));
  instance.bound = bound;
  instance.seed = seed;
  instance.family = "no_solution";
  return instance;
}

Instance gen_adversarial(std::size_t n, Value bound, int arity, std::uint64_t seed) {
  check_gen_args(n, bound);
  if (arity < 2) throw std::domain_error("gen_adversarial: arity must be >= 2");
  SplitMix64 rng(seed);
  const int digit_bits = 3 * ceil_log2(static_cast<std::uint64_t>(arity));
  const Value high_cap = bound >> digit_bits;

  Instance instance;
  instance.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Value sign = rng.below(2) == 0 ? 1 : -1;
    if (high_cap >= 1) {
      // Multiples of 2^k: every value projects to digit 0 at position 0,
      // so the first digit position accepts everything.
      const Value high = 1 + static_cast<Value>(rng.below(static_cast<std::uint64_t>(high_cap)));
      instance.values.push_back(sign * (high << digit_bits));
    } else {
      // Bound smaller than one digit: fall back to a single shared magnitude.
      instance.values.push_back(sign * bound);
    }
  }
  instance.bound = bound;
  instance.seed = seed;
  instance.family = "adversarial";
  return instance;
}

void write_instance(const Instance& instance, std::ostream& out) {
  out << "#rsum v1 n=" << instance.values.size() << " bound=" << instance.bound
      << " family=" << (instance.family.empty() ? "unknown" : instance.family)
      << " seed=" << instance.seed << " rng=splitmix64";
  if (instance.poly_degree) out << " m=" << *instance.poly_degree;
  out << "\n";
  if (instance.planted) {
    out << "# planted";
    for (Ordinal o : *instance.planted) out << ' ' << o;
    out << "\n";
  }
  for (Value v : instance.values) out << v << "\n";
}

void write_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_instance(instance, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::int64_t parse_int(std::string_view text, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error(std::string("instance parse error: bad ") + what + " '" +
                             std::string(text) + "'");
  }
  return value;
}

}  // namespace

Instance read_instance(std::istream& in) {
  Instance instance;
  bool header_seen = false;
  std::size_t declared_n = 0;
  std::string line;
  while (std::getline(in, line)) {
    // Trim trailing CR and surrounding spaces.
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    std::string_view text = std::string_view(line).substr(start);

    if (text.starts_with("#rsum")) {
      std::istringstream fields{std::string(text.substr(5))};
      std::string field;
      fields >> field;  // version token
      if (field != "v1") throw std::runtime_error("instance parse error: unsupported version");
      while (fields >> field) {
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "n") {
          declared_n = static_cast<std::size_t>(parse_int(value, "n"));
        } else if (key == "bound") {
          instance.bound = parse_int(value, "bound");
        } else if (key == "seed") {
          instance.seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
        } else if (key == "family") {
          instance.family = value;
        } else if (key == "m") {
          instance.poly_degree = static_cast<int>(parse_int(value, "m"));
        }
        // Unknown keys (including rng=...) are tolerated.
      }
      header_seen = true;
      continue;
    }
    if (text.starts_with("# planted")) {
      std::istringstream fields{std::string(text.substr(9))};
      std::vector<Ordinal> ordinals;
      std::int64_t o;
      while (fields >> o) ordinals.push_back(static_cast<Ordinal>(o));
      instance.planted = std::move(ordinals);
      continue;
    }
    if (text.front() == '#') continue;
    instance.values.push_back(parse_int(text, "value"));
  }
  if (!header_seen) throw std::runtime_error("instance parse error: missing #rsum header");
  if (declared_n != instance.values.size()) {
    throw std::runtime_error("instance parse error: header n does not match value count");
  }
  if (instance.bound >= 1) {
    for (Value v : instance.values) {
      if (std::abs(v) > instance.bound) {
        throw std::runtime_error("instance parse error: value exceeds declared bound");
      }
    }
  }
  return instance;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_instance(in);
}

}  // namespace rsum
