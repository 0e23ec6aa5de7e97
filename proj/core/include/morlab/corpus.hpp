#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "morlab/grid.hpp"

namespace morlab {

inline constexpr int kCorpusVersion = 1;

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusSpec {
  int dim = 2;
  int points_per_axis = 64;
  double half_width = 1.0;
};

struct CorpusEntry {
  std::string name;
  std::string family;  // indicator, gaussian, power-tail, band-limited, cantor, bump
  std::string params;  // human-readable parameters
  SampledFunction f;
  std::uint64_t hash = 0;
};

// FNV-1a over the values printed with "%.12e", one per line.
std::uint64_t hash_values(const std::vector<double>& values);
std::string hash_hex(std::uint64_t h);

// Deterministic corpus on a non-periodic grid. Listing order is fixed.
// Cantor entries exist for dim 1 and 2 only.
std::vector<CorpusEntry> build_corpus(const CorpusSpec& spec = {},
                                      int version = kCorpusVersion);

CorpusEntry load_corpus_entry(const std::string& name, const CorpusSpec& spec = {},
                              int version = kCorpusVersion);

struct ManifestRow {
  std::string name;
  std::uint64_t hash;
};

// Frozen hashes of the default spec for a version.
const std::vector<ManifestRow>& frozen_manifest(int version);

// Throws CorpusError when the entries differ from the frozen manifest of
// `version` (a content change without a version bump).
void verify_manifest(const std::vector<CorpusEntry>& entries, int version);

}  // namespace morlab
