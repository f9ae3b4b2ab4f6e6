#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsum/digit_core.hpp"

namespace rsum {

// A persisted problem instance. The text format is line oriented:
//
//   #rsum v1 n=<n> bound=<b> family=<f> seed=<s> rng=splitmix64 [m=<m>]
//   # planted <o1> <o2> ... <or>        (optional)
//   <one signed decimal integer per line>
//
// Readers tolerate blank lines and additional '#' comments.
struct Instance {
  std::vector<Value> values;
  Value bound = 0;
  std::uint64_t seed = 0;
  std::string family;
  std::optional<int> poly_degree;              // m, when known
  std::optional<std::vector<Ordinal>> planted;  // recorded by gen_planted

  friend bool operator==(const Instance&, const Instance&) = default;
};

Instance gen_uniform(std::size_t n, Value bound, std::uint64_t seed);

// Plants a zero-sum r-tuple at random distinct positions; returns the
// instance and the planted ordinals (ascending).
std::pair<Instance, std::vector<Ordinal>> gen_planted(std::size_t n, Value bound, int arity,
                                                      std::uint64_t seed);

// Strictly positive values, so no r-subset sums to zero for any r.
Instance gen_no_solution(std::size_t n, Value bound, std::uint64_t seed);

// Values whose low-order digits coincide, so the early digit positions
// prune nothing and surviving candidate counts are maximized.
Instance gen_adversarial(std::size_t n, Value bound, int arity, std::uint64_t seed);

void write_instance(const Instance& instance, std::ostream& out);
void write_instance_file(const Instance& instance, const std::string& path);
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);

}  // namespace rsum
