#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gpim {

class PatternError : public std::runtime_error {
 public:
  explicit PatternError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kMaxPatternSize = 6;

/// Connected unlabeled pattern, 3..6 vertices. Present edges are the "black"
/// edges of the matching plan; absent pairs act as "red" edges under induced
/// semantics.
struct Pattern {
  int k = 0;
  std::string name;
  std::array<std::array<bool, kMaxPatternSize>, kMaxPatternSize> adj{};

  bool edge(int i, int j) const { return adj[i][j]; }
  int degree(int i) const {
    int d = 0;
    for (int j = 0; j < k; ++j) d += adj[i][j];
    return d;
  }
  bool connected() const;
};

/// name in {3cc, wedge, 4cc, 4di, 4cl, 5cc}; 3-MC is the pair {3cc, wedge}
/// handled at the CLI layer.
Pattern builtin_pattern(std::string_view name);

std::vector<std::string> builtin_pattern_names();

/// All vertex permutations preserving adjacency, brute force over k!.
std::vector<std::array<int, kMaxPatternSize>> automorphisms(const Pattern& p);

}  // namespace gpim
