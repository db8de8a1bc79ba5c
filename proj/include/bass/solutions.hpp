/// @file  solutions.hpp
/// @brief Counting, enumeration and uniform sampling of solution sets

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bass/semantics.hpp"

namespace bass {

/// Seed of the deterministic generator used by sample_uniform.
struct SampleSeed {
  std::uint64_t value = 0;
};

class EmptySetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Variables a set of the given kind ranges over.
std::vector<BddVar> kind_vars(const VarLayout& layout, EncodingKind kind);

/// Exact number of interpretations in the set.
BigInt count(const SolutionSet& set);

/// Visits members in lexicographic order of the variable order, 0 before 1.
/// Stops after `limit` members or when `visit` returns false.
void for_each_solution(const SolutionSet& set, std::optional<std::size_t> limit,
                       const std::function<bool(const Interpretation&)>& visit);

std::vector<Interpretation> enumerate(const SolutionSet& set,
                                      std::optional<std::size_t> limit = std::nullopt);

/// `n` independent draws, each exactly uniform over the set. Throws
/// EmptySetError when the set is empty.
std::vector<Interpretation> sample_uniform(const SolutionSet& set, std::size_t n, SampleSeed seed);

}  // namespace bass
